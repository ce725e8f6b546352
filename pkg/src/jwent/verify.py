"""Invariant battery over seeded random chains.

Every suite returns a :class:`SuiteResult`; a run passes only if every suite
passes. Ensemble ground states are taken per sector (1 <= n_up <= N-1) for
both the spin matrix and the fermion matrix, so C is read off the spin
ground state and MC off the fermion ground state.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .analytic import TwoParticleState, middle_sum, two_particle_Z, two_particle_z
from .basis import enumerate_sector
from .diag import DEGENERACY_TOL, StateVector, eigensystem, ground_state
from .fullspace import embed, string_correlator
from .measures import all_pairs, fermion_correlations, measure_pair, spin_correlations
from .model import CouplingSet, build_tb_fermion, build_xxz_spin
from .signrule import (Convention, SublatticePartition, check_marshall, check_xy_identity,
                       convention_of, pair_decompose, sign_pattern)

DEFAULT_SEED = 42
RNG_NAME = "numpy.random.default_rng (PCG64)"

J_RANGE = (0.1, 2.0)
JZ_RANGE = (-2.0, 2.0)

TOLERANCES = {
    "spectrum": 1e-10,
    "string_identity": 1e-12,
    "sign_rule": 1e-9,
    "xy_identity": 1e-10,
    "nn_equality": 1e-10,
    "non_nn_inequality": 1e-10,
    "analytic": 1e-12,
}


@dataclass
class SuiteResult:
    suite: str
    cases: int = 0
    passed: int = 0
    worst_deviation: float = 0.0

    @property
    def ok(self) -> bool:
        return self.cases > 0 and self.passed == self.cases

    def record(self, deviation: float, good: bool):
        self.cases += 1
        self.passed += bool(good)
        self.worst_deviation = max(self.worst_deviation, float(deviation))

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Member:
    couplings: CouplingSet
    spin_states: dict = field(repr=False)
    fermion_states: dict = field(repr=False)

    @property
    def n(self) -> int:
        return self.couplings.n


def random_couplings(rng: np.random.Generator, n: int, sign: int | None = None) -> CouplingSet:
    """|J| ~ U[0.1, 2] with one sign for the whole chain, Jz ~ U[-2, 2]."""
    if sign is None:
        sign = 1 if rng.random() < 0.5 else -1
    j = sign * rng.uniform(*J_RANGE, size=n - 1)
    jz = rng.uniform(*JZ_RANGE, size=n - 1)
    return CouplingSet(tuple(j), tuple(jz))


def draw_ensemble(size: int = 100, seed: int = DEFAULT_SEED, n_range=(4, 10),
                  spin_builder=build_xxz_spin, fermion_builder=build_tb_fermion):
    """Seeded chains whose sector ground states are all non-degenerate.

    A draw with any degenerate sector ground state is discarded and redrawn.
    """
    rng = np.random.default_rng(seed)
    members = []
    while len(members) < size:
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        c = random_couplings(rng, n)
        spin, ferm = {}, {}
        for n_up in range(1, n):
            gs = ground_state(spin_builder, c, n_up)
            gf = ground_state(fermion_builder, c, n_up)
            if gs.degenerate or gf.degenerate:
                break
            spin[n_up], ferm[n_up] = gs.state, gf.state
        else:
            members.append(Member(c, spin, ferm))
    return members


def suite_spectrum(seed=DEFAULT_SEED, draws=50, n_max=8, tol=TOLERANCES["spectrum"],
                   spin_builder=build_xxz_spin, fermion_builder=build_tb_fermion) -> SuiteResult:
    rng = np.random.default_rng([seed, 1])
    res = SuiteResult("spectrum")
    for _ in range(draws):
        n = int(rng.integers(2, n_max + 1))
        c = random_couplings(rng, n)
        for n_up in range(n + 1):
            basis = enumerate_sector(n, n_up)
            hs = spin_builder(c, basis).entries
            hf = fermion_builder(c, basis).entries
            entry = float(np.abs(hs - hf).max())
            spec = float(np.abs(eigensystem(hs)[0] - eigensystem(hf)[0]).max())
            res.record(max(entry, spec), entry == 0.0 and spec <= tol)
    return res


def suite_string_identity(seed=DEFAULT_SEED, vectors=100, n_max=8,
                          tol=TOLERANCES["string_identity"]) -> SuiteResult:
    """Z from the bit code against the spin-picture string operator; u = X exactly."""
    rng = np.random.default_rng([seed, 2])
    res = SuiteResult("string_identity")
    for n in range(2, n_max + 1):
        for n_up in range(n + 1):
            basis = enumerate_sector(n, n_up)
            states = []
            for _ in range(vectors):
                v = rng.standard_normal(basis.dim)
                states.append(StateVector.from_amplitudes(basis, v))
            full = np.stack([embed(s) for s in states], axis=1)
            for i, j in all_pairs(n):
                ref = np.sum(full * (string_correlator(n, i, j) @ full), axis=0).real
                for psi, r in zip(states, ref):
                    s, f = spin_correlations(psi, i, j), fermion_correlations(psi, i, j)
                    dev = abs(f.z_f - r)
                    same = s.u_plus == f.x_plus and s.u_minus == f.x_minus
                    res.record(dev, dev <= tol and same)
    return res


def _ensemble_suites(members, tols=TOLERANCES):
    sign = SuiteResult("sign_rule")
    ident = SuiteResult("xy_identity")
    nn = SuiteResult("nn_equality")
    far = SuiteResult("non_nn_inequality")
    for mem in members:
        part = SublatticePartition.odd(mem.n)
        conv = convention_of(mem.couplings)
        for n_up, psi in mem.spin_states.items():
            rep = check_marshall(psi, part, mem.couplings, tols["sign_rule"])
            sign.record(rep.max_violation, rep.holds)
            phi = mem.fermion_states[n_up]
            for i, j in all_pairs(mem.n):
                d = pair_decompose(psi, i, j)
                chk = check_xy_identity(d, tols["xy_identity"])
                pat = sign_pattern(d, part, conv)
                ident.record(abs(chk.lhs - chk.rhs), chk.holds and pat.holds)
                m = measure_pair(psi, i, j, fermion_psi=phi)
                gap = m.concurrence - m.mode_concurrence
                if j == i + 1:
                    nn.record(abs(gap), abs(gap) <= tols["nn_equality"])
                else:
                    excess = abs(m.fermion.z_f) - abs(m.spin.z)
                    dev = max(0.0, -gap, excess)
                    far.record(dev, dev <= tols["non_nn_inequality"])
    return [sign, ident, nn, far]


def suite_analytic(n_max=12, tol=TOLERANCES["analytic"]) -> SuiteResult:
    """Closed-form z, Z against the measured values on the Slater vector.

    The vector itself must be an eigenvector of the uniform hopping chain;
    where its energy is non-degenerate the diagonalizer's own eigenvector is
    measured too.
    """
    res = SuiteResult("analytic")
    for N in range(2, n_max + 1):
        basis = enumerate_sector(N, 2)
        h = build_tb_fermion(CouplingSet.uniform(N), basis).entries
        w, v = eigensystem(h)
        for n1 in range(1, N + 1):
            for n2 in range(n1 + 1, N + 1):
                tp = TwoParticleState(N, n1, n2)
                psi = tp.to_state()
                resid = float(np.linalg.norm(h @ psi.amps - tp.energy * psi.amps))
                candidates = [psi]
                near = np.flatnonzero(np.abs(w - tp.energy) <= 1e-6)
                if near.size == 1:
                    ed = v[:, near[0]] * np.sign(v[:, near[0]] @ psi.amps)
                    candidates.append(StateVector.from_amplitudes(basis, ed))
                for i, j in all_pairs(N):
                    Z, z = two_particle_Z(N, n1, n2, i, j), two_particle_z(N, n1, n2, i, j)
                    dev = abs(Z - z - 2 * middle_sum(N, n1, n2, i, j))
                    for state in candidates:
                        m = measure_pair(state, i, j)
                        dev = max(dev, abs(m.fermion.z_f - Z), abs(m.spin.z - z))
                    res.record(dev, dev <= tol and resid <= 1e-10)
    return res


def run_battery(ensemble: int = 100, seed: int = DEFAULT_SEED, n_range=(4, 10),
                spectrum_draws: int = 50, string_vectors: int = 100, n_max_small: int = 8,
                analytic_n_max: int = 12, tolerances: dict | None = None,
                spin_builder=build_xxz_spin, fermion_builder=build_tb_fermion):
    tols = {**TOLERANCES, **(tolerances or {})}
    members = draw_ensemble(ensemble, seed, n_range, spin_builder, fermion_builder)
    suites = [suite_spectrum(seed, spectrum_draws, n_max_small, tols["spectrum"],
                             spin_builder, fermion_builder),
              suite_string_identity(seed, string_vectors, n_max_small, tols["string_identity"])]
    suites += _ensemble_suites(members, tols)
    suites.append(suite_analytic(analytic_n_max, tols["analytic"]))
    return suites
