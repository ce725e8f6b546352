"""Closed-form two-fermion states of the uniform open tight-binding chain.

Single-particle modes are sqrt(2/(N+1)) sin(k l) with k = n pi/(N+1) and
energy 2 cos k. A two-particle state |k, k'> has amplitude D(k, k', l, l')
on a+_l a+_l' |0> (l < l'), D being the 2x2 Slater determinant of modes.
Momenta are carried as the integer n so that k' = pi - k is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .basis import enumerate_sector
from .diag import StateVector
from .errors import DomainError
from .measures import measure_pair

ZERO_TOL = 1e-12


@dataclass(frozen=True)
class Momentum:
    n: int
    n_sites: int

    def __post_init__(self):
        if not 1 <= self.n <= self.n_sites:
            raise DomainError(f"momentum index {self.n} outside 1..{self.n_sites}")

    @property
    def k(self) -> float:
        return self.n * np.pi / (self.n_sites + 1)

    @property
    def energy(self) -> float:
        return 2 * np.cos(self.k)


def _mom(N, k) -> Momentum:
    if isinstance(k, Momentum):
        if k.n_sites != N:
            raise DomainError(f"momentum defined for {k.n_sites} sites, not {N}")
        return k
    return Momentum(int(k), N)


def _check_site(N, l):
    if not 1 <= l <= N:
        raise DomainError(f"site {l} outside 1..{N}")


def single_particle_amplitude(N: int, k, l: int) -> float:
    _check_site(N, l)
    return float(np.sqrt(2 / (N + 1)) * np.sin(_mom(N, k).k * l))


def single_particle_vector(N: int, k) -> np.ndarray:
    return np.sqrt(2 / (N + 1)) * np.sin(_mom(N, k).k * np.arange(1, N + 1))


def slater_d(N: int, k, kp, l: int, lp: int) -> float:
    _check_site(N, l)
    _check_site(N, lp)
    q, qp = _mom(N, k).k, _mom(N, kp).k
    return float(2 / (N + 1) * (np.sin(q * l) * np.sin(qp * lp) - np.sin(q * lp) * np.sin(qp * l)))


def slater_matrix(N: int, k, kp) -> np.ndarray:
    """D[l-1, l'-1] for all site pairs."""
    u, v = single_particle_vector(N, k), single_particle_vector(N, kp)
    return np.outer(u, v) - np.outer(v, u)


@dataclass(frozen=True)
class TwoParticleState:
    n_sites: int
    k1: Momentum
    k2: Momentum

    def __post_init__(self):
        object.__setattr__(self, "k1", _mom(self.n_sites, self.k1))
        object.__setattr__(self, "k2", _mom(self.n_sites, self.k2))
        if self.k1.n == self.k2.n:
            raise DomainError("two fermions cannot share a momentum")

    @property
    def energy(self) -> float:
        return self.k1.energy + self.k2.energy

    def to_state(self) -> StateVector:
        """Amplitudes on the ascending-ordered (N, 2) basis; also its spin image."""
        basis = enumerate_sector(self.n_sites, 2)
        d = slater_matrix(self.n_sites, self.k1, self.k2)
        s = basis.states
        low = np.zeros(len(s), dtype=np.int64)
        high = np.zeros(len(s), dtype=np.int64)
        for idx, state in enumerate(s.tolist()):
            low[idx] = (state & -state).bit_length() - 1
            high[idx] = state.bit_length() - 1
        return StateVector.from_amplitudes(basis, d[low, high], normalize=False)


def _pair_terms(N, k, kp, i, j):
    if not (1 <= i < j <= N):
        raise DomainError(f"need 1 <= i < j <= {N}, got ({i}, {j})")
    d = slater_matrix(N, k, kp)
    prod = d[j - 1] * d[i - 1]
    prod[[i - 1, j - 1]] = 0.0
    return prod


def two_particle_Z(N: int, k, kp, i: int, j: int) -> float:
    """<a+_i a_j> = sum over l != i, j of D(j, l) D(i, l)."""
    return float(_pair_terms(N, k, kp, i, j).sum())


def _z_signs(N, i, j):
    sign = np.ones(N)
    sign[i:j - 1] = -1.0  # sites strictly between i and j
    return sign


def two_particle_z(N: int, k, kp, i: int, j: int) -> float:
    """(1/4)<sigma+_i sigma-_j>: the middle spectators enter with a minus sign."""
    return float((_z_signs(N, i, j) * _pair_terms(N, k, kp, i, j)).sum())


def middle_sum(N: int, k, kp, i: int, j: int) -> float:
    return float(_pair_terms(N, k, kp, i, j)[i:j - 1].sum())


class Family(Enum):
    LOW_PAIR = "low_pair"  # n = 1, n' = 2
    EDGE_PAIR = "edge_pair"  # n = 1, n' = N, i.e. k' = pi - k

    def momenta(self, N: int):
        return (1, 2) if self is Family.LOW_PAIR else (1, N)


@dataclass(frozen=True)
class CaseStudy:
    family: Family
    n_sites: int
    i: int
    j: int
    z: float
    z_f: float
    concurrence: float
    mode_concurrence: float
    products: np.ndarray = field(repr=False)
    z_terms: np.ndarray = field(repr=False)

    @property
    def z_terms_positive(self) -> bool:
        """Every spectator term of z (middle ones sign-flipped) is > 0."""
        mask = np.ones(self.n_sites, dtype=bool)
        mask[[self.i - 1, self.j - 1]] = False
        return bool(np.all(self.z_terms[mask] > 0))

    @property
    def products_positive(self) -> bool:
        """Every raw D(j, l) D(i, l), l != i, j, is > 0."""
        mask = np.ones(self.n_sites, dtype=bool)
        mask[[self.i - 1, self.j - 1]] = False
        return bool(np.all(self.products[mask] > 0))

    @property
    def correlations_vanish(self) -> bool:
        return abs(self.z) <= ZERO_TOL and abs(self.z_f) <= ZERO_TOL

    @property
    def inequality_holds(self) -> bool:
        return self.concurrence >= self.mode_concurrence - 1e-10


def case_study(N: int, family: Family, i: int, j: int) -> CaseStudy:
    family = Family(family)
    if N < 4:
        raise DomainError(f"case studies need N >= 4, got {N}")
    n1, n2 = family.momenta(N)
    prod = _pair_terms(N, n1, n2, i, j)
    terms = _z_signs(N, i, j) * prod
    m = measure_pair(TwoParticleState(N, n1, n2).to_state(), i, j)
    return CaseStudy(family, N, i, j, float(terms.sum()), float(prod.sum()),
                     m.concurrence, m.mode_concurrence, prod, terms)
