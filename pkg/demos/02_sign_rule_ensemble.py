# %% [markdown]
# # Sign rule over a random ensemble
#
# Draw random open chains with couplings of one sign, diagonalize every
# magnetization sector and check three things on each ground state: the
# Marshall sign rule, C >= MC for every pair, and equality on bonds.

# %%
from collections import Counter

from jwent import measure_pair
from jwent.measures import all_pairs
from jwent.signrule import SublatticePartition, check_marshall
from jwent.verify import draw_ensemble

members = draw_ensemble(30, seed=7, n_range=(4, 9))
print(len(members), "chains,", sum(len(m.spin_states) for m in members), "ground states")

# %%
tally = Counter()
worst_bond, worst_gap = 0.0, 0.0
for mem in members:
    part = SublatticePartition.odd(mem.n)
    for n_up, psi in mem.spin_states.items():
        rep = check_marshall(psi, part, mem.couplings)
        tally[rep.convention.name, rep.holds] += 1
        for i, j in all_pairs(mem.n):
            m = measure_pair(psi, i, j, fermion_psi=mem.fermion_states[n_up])
            d = m.concurrence - m.mode_concurrence
            if j == i + 1:
                worst_bond = max(worst_bond, abs(d))
            else:
                worst_gap = min(worst_gap, d)
print(dict(tally))
print("largest |C - MC| on a bond:", worst_bond)
print("most negative C - MC elsewhere:", worst_gap)
