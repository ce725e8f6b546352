"""Two-site reduced density matrices, concurrence and mode concurrence.

Both pictures read the same amplitude vector: with creation operators taken
in ascending site order the Jordan-Wigner map is coefficient preserving, so
the fermion quantities differ from the spin ones only through the string
parity that enters Z.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import sqrt

import numpy as np

from .basis import string_parity
from .diag import StateVector
from .errors import DomainError


class Picture(Enum):
    SPIN = "spin"
    FERMION = "fermion"


@dataclass(frozen=True)
class SpinPairCorrelations:
    u_plus: float
    u_minus: float
    omega1: float
    omega2: float
    z: float


@dataclass(frozen=True)
class FermionPairCorrelations:
    x_plus: float
    x_minus: float
    y_plus: float
    y_minus: float
    z_f: float


@dataclass(frozen=True)
class PairMeasure:
    i: int
    j: int
    spin: SpinPairCorrelations
    fermion: FermionPairCorrelations
    concurrence: float
    mode_concurrence: float

    @property
    def nn(self) -> bool:
        return self.j == self.i + 1


def _check_pair(psi: StateVector, i: int, j: int):
    if not (1 <= i < j <= psi.n):
        raise DomainError(f"need 1 <= i < j <= {psi.n}, got ({i}, {j})")


def _pair_stats(psi: StateVector, i: int, j: int, with_string: bool):
    _check_pair(psi, i, j)
    s, a = psi.basis.states, psi.amps
    bi, bj = np.uint64(1 << (i - 1)), np.uint64(1 << (j - 1))
    ni = (s & bi) != 0
    nj = (s & bj) != 0
    p = a * a
    both = float(p[ni & nj].sum())
    none = float(p[~ni & ~nj].sum())
    up_down = float(p[ni & ~nj].sum())
    down_up = float(p[~ni & nj].sum())
    src = ni & ~nj
    partner = psi.basis.index_of(s[src] ^ (bi | bj))
    prod = a[src] * a[partner]
    if with_string:
        prod = prod * string_parity(s[src], i, j)
    return both, none, up_down, down_up, float(prod.sum())


def spin_correlations(psi: StateVector, i: int, j: int) -> SpinPairCorrelations:
    """u+/u- = P(up,up)/P(down,down); z = <S+_i S-_j> = <sigma+_i sigma-_j>/4."""
    both, none, ud, du, z = _pair_stats(psi, i, j, with_string=False)
    return SpinPairCorrelations(both, none, ud, du, z)


def fermion_correlations(psi: StateVector, i: int, j: int) -> FermionPairCorrelations:
    """X+ = <n_i n_j>, X- = 1 - <n_i> - <n_j> + X+, Z = <a+_i a_j>."""
    both, none, ud, du, zf = _pair_stats(psi, i, j, with_string=True)
    return FermionPairCorrelations(both, none, ud, du, zf)


def concurrence(c: SpinPairCorrelations) -> float:
    return 2.0 * max(0.0, abs(c.z) - sqrt(max(c.u_plus * c.u_minus, 0.0)))


def mode_concurrence(c: FermionPairCorrelations) -> float:
    return 2.0 * max(0.0, abs(c.z_f) - sqrt(max(c.x_plus * c.x_minus, 0.0)))


def two_site_rdm(psi: StateVector, i: int, j: int, picture: Picture = Picture.SPIN) -> np.ndarray:
    """X-shaped 4x4 matrix on the ordered basis {11, 10, 01, 00} of sites (i, j)."""
    picture = Picture(picture)
    if picture is Picture.SPIN:
        c = spin_correlations(psi, i, j)
        d, off = (c.u_plus, c.omega1, c.omega2, c.u_minus), c.z
    else:
        f = fermion_correlations(psi, i, j)
        d, off = (f.x_plus, f.y_plus, f.y_minus, f.x_minus), f.z_f
    rho = np.diag(d)
    rho[1, 2] = rho[2, 1] = off
    return rho


def measure_pair(psi: StateVector, i: int, j: int, fermion_psi: StateVector | None = None) -> PairMeasure:
    """C and MC for sites (i, j).

    ``fermion_psi`` is the counterpart fermion state when it was obtained
    separately (e.g. diagonalizing the tight-binding matrix); by default the
    amplitudes of ``psi`` are reused.
    """
    spin = spin_correlations(psi, i, j)
    ferm = fermion_correlations(psi if fermion_psi is None else fermion_psi, i, j)
    return PairMeasure(i, j, spin, ferm, concurrence(spin), mode_concurrence(ferm))


def all_pairs(n: int):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
