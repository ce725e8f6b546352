# %% [markdown]
# # A five-site XY chain
#
# Couplings 1, 2, 2, 1 with three up spins. The sector ground state has
# simple rational amplitudes, so we can look at it directly and then compare
# spin concurrence with fermionic mode concurrence for every pair of sites.

# %%
import numpy as np

from jwent import CouplingSet, build_tb_fermion, build_xxz_spin, ground_state, measure_pair
from jwent.basis import config_to_string
from jwent.measures import all_pairs

couplings = CouplingSet.xy([1, 2, 2, 1])
spin = ground_state(build_xxz_spin, couplings, 3)
fermion = ground_state(build_tb_fermion, couplings, 3)
print("energy", spin.energy, "gap", spin.gap_to_next)

# %% [markdown]
# Amplitudes in units of 1/6. Leftmost character is site 1.

# %%
psi = spin.state
psi = psi.amps * np.sign(psi.amps[np.abs(psi.amps).argmax()])
for state, a in zip(spin.state.basis.states, psi):
    print(config_to_string(int(state), 5), f"{6 * a:+.3f}")

# %% [markdown]
# Nearest neighbours agree exactly. Further apart, the string of fermion
# signs between the two modes cancels part of the hopping correlation and the
# mode concurrence drops below the spin concurrence.

# %%
print(" i  j      C         MC")
for i, j in all_pairs(5):
    m = measure_pair(spin.state, i, j, fermion_psi=fermion.state)
    print(f"{i:2d} {j:2d}  {m.concurrence:.6f}  {m.mode_concurrence:.6f}")
