"""Marshall sign rule checks and the pair decomposition behind |z| >= |Z|."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np

from .basis import popcount
from .diag import StateVector
from .errors import ConventionError, DomainError
from .model import CouplingSet

SIGN_TOL = 1e-9
ZERO_AMP = 1e-12
IDENTITY_TOL = 1e-10


class Convention(Enum):
    FERRO = "ferro"  # all J <= 0: every amplitude shares one sign
    ANTIFERRO = "antiferro"  # all J > 0: sign alternates with phi(m)


@dataclass(frozen=True)
class SublatticePartition:
    n: int
    a_sites: frozenset

    def __post_init__(self):
        object.__setattr__(self, "a_sites", frozenset(int(s) for s in self.a_sites))
        if not self.a_sites <= set(range(1, self.n + 1)):
            raise DomainError(f"sublattice sites {sorted(self.a_sites)} outside 1..{self.n}")
        for l in range(1, self.n):
            if (l in self.a_sites) == (l + 1 in self.a_sites):
                raise DomainError(f"bond ({l}, {l + 1}) does not join the two sublattices")

    @classmethod
    def odd(cls, n: int) -> "SublatticePartition":
        return cls(n, frozenset(range(1, n + 1, 2)))

    @property
    def b_sites(self) -> frozenset:
        return frozenset(range(1, self.n + 1)) - self.a_sites

    @property
    def a_mask(self) -> int:
        return sum(1 << (l - 1) for l in self.a_sites)

    def same_sublattice(self, i: int, j: int) -> bool:
        return (i in self.a_sites) == (j in self.a_sites)


@dataclass(frozen=True)
class SignRuleReport:
    holds: bool
    max_violation: float
    convention: Convention


@dataclass(frozen=True)
class PairDecomposition:
    """psi = |uu> psi1 + |dd> psi2 + sum_k (x_k |ud> + y_k |du>) phi_k for sites (i, j).

    Rest configurations keep their full-chain bit positions with bits i and
    j cleared.
    """

    i: int
    j: int
    rest: np.ndarray = field(repr=False)
    x: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)
    rest_uu: np.ndarray = field(repr=False)
    psi1: np.ndarray = field(repr=False)
    rest_dd: np.ndarray = field(repr=False)
    psi2: np.ndarray = field(repr=False)

    @property
    def products(self) -> np.ndarray:
        return self.x * self.y


class IdentityCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def phase_fix(psi: StateVector) -> StateVector:
    """Flip the global sign so the largest amplitude is positive (ties: lowest index)."""
    a = psi.amps
    mag = np.abs(a)
    top = mag.max()
    if top == 0:
        raise DomainError("cannot phase-fix the zero vector")
    k = int(np.flatnonzero(mag >= top - ZERO_AMP)[0])
    return psi if a[k] > 0 else StateVector(psi.basis, -a)


def marshall_phi(state, part: SublatticePartition):
    """Number of up spins on sublattice A."""
    if isinstance(state, (int, np.integer)):
        return (int(state) & part.a_mask).bit_count()
    return popcount(np.asarray(state, dtype=np.uint64) & np.uint64(part.a_mask))


def convention_of(couplings: CouplingSet) -> Convention:
    j = np.asarray(couplings.j_xy)
    if np.all(j > 0):
        return Convention.ANTIFERRO
    if np.all(j <= 0):
        return Convention.FERRO
    raise ConventionError("sign rule needs uniformly signed J (all > 0 or all <= 0)")


def marshall_signs(psi: StateVector, part: SublatticePartition, convention: Convention) -> np.ndarray:
    if convention is Convention.FERRO:
        return np.ones(psi.basis.dim)
    return 1.0 - 2.0 * (marshall_phi(psi.basis.states, part) % 2)


def check_marshall(psi: StateVector, part: SublatticePartition, couplings: CouplingSet,
                   tol: float = SIGN_TOL) -> SignRuleReport:
    """Check g_m = (-1)^phi(m) b_m with b_m >= 0 (ANTIFERRO) or g_m >= 0 (FERRO).

    The global phase is fixed on the sign-rotated amplitudes, since the rule
    only holds up to an overall sign.
    """
    conv = convention_of(couplings)
    if part.n != psi.n:
        raise DomainError(f"partition is for {part.n} sites, state has {psi.n}")
    b = marshall_signs(psi, part, conv) * psi.amps
    b = phase_fix(StateVector(psi.basis, b)).amps
    b = np.where(np.abs(b) < ZERO_AMP, 0.0, b)
    worst = float(max(0.0, -b.min()))
    return SignRuleReport(worst <= tol, worst, conv)


def pair_decompose(psi: StateVector, i: int, j: int) -> PairDecomposition:
    if not (1 <= i < j <= psi.n):
        raise DomainError(f"need 1 <= i < j <= {psi.n}, got ({i}, {j})")
    s, a = psi.basis.states, psi.amps
    bi, bj = np.uint64(1 << (i - 1)), np.uint64(1 << (j - 1))
    ni, nj = (s & bi) != 0, (s & bj) != 0
    clear = ~(bi | bj)

    ud = ni & ~nj
    rest = s[ud] & clear
    x = a[ud]
    y = a[psi.basis.index_of(rest | bj)] if rest.size else np.zeros(0)
    uu, dd = ni & nj, ~ni & ~nj
    return PairDecomposition(i, j, rest, x, y, s[uu] & clear, a[uu], s[dd] & clear, a[dd])


def check_xy_identity(d: PairDecomposition, tol: float = IDENTITY_TOL) -> IdentityCheck:
    """|sum_k x_k y_k| against sum_k |x_k y_k|."""
    p = d.products
    lhs, rhs = abs(float(p.sum())), float(np.abs(p).sum())
    return IdentityCheck(lhs, rhs, abs(lhs - rhs) <= tol)


class SignPattern(NamedTuple):
    constant: bool
    observed: int  # +1, -1, or 0 when every product is below threshold
    expected: int
    holds: bool


def sign_pattern(d: PairDecomposition, part: SublatticePartition, convention: Convention) -> SignPattern:
    """All x_k y_k share a sign fixed by where i and j sit.

    For ANTIFERRO it is + on the same sublattice and - across; for FERRO
    it is always +.
    """
    big = (np.abs(d.x) >= ZERO_AMP) & (np.abs(d.y) >= ZERO_AMP)
    signs = np.sign(d.products[big])
    constant = bool(signs.size == 0 or np.all(signs == signs[0]))
    observed = int(signs[0]) if signs.size else 0
    if convention is Convention.ANTIFERRO and not part.same_sublattice(d.i, d.j):
        expected = -1
    else:
        expected = 1
    return SignPattern(constant, observed, expected, constant and observed in (0, expected))
