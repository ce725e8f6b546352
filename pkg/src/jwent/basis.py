"""Bit-encoded occupation basis of a fixed (n, n_up) sector.

Site ``l`` (1-based) lives in bit ``l - 1``. A set bit is a spin up in the
spin picture and an occupied mode in the fermion picture, so one encoding
serves both sides of the Jordan-Wigner map.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import CapacityError, DomainError

MAX_SITES = 20

_ARROWS = {"u": 1, "d": 0, "↑": 1, "↓": 0, "1": 1, "0": 0}


def popcount(x):
    """Number of set bits, elementwise for arrays."""
    if isinstance(x, (int, np.integer)):
        return int(x).bit_count()
    return np.bitwise_count(np.asarray(x, dtype=np.uint64)).astype(np.int64)


@dataclass(frozen=True)
class Sector:
    n: int
    n_up: int

    def __post_init__(self):
        if not 2 <= self.n <= MAX_SITES:
            raise CapacityError(f"chain length {self.n} outside supported range 2..{MAX_SITES}")
        if not 0 <= self.n_up <= self.n:
            raise DomainError(f"n_up={self.n_up} outside 0..{self.n}")

    @property
    def dim(self) -> int:
        return comb(self.n, self.n_up)

    @property
    def sz(self) -> float:
        return self.n_up - self.n / 2

    @property
    def particle_number(self) -> int:
        return self.n_up


@dataclass(frozen=True)
class SectorBasis:
    """Configurations of one sector, in ascending order of their bit value."""

    sector: Sector
    states: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.sector.n

    @property
    def n_up(self) -> int:
        return self.sector.n_up

    @property
    def dim(self) -> int:
        return len(self.states)

    def __len__(self):
        return len(self.states)

    def index_of(self, state):
        """Ordinal(s) of configuration(s); raises if any is not in the sector."""
        scalar = np.ndim(state) == 0
        q = np.atleast_1d(np.asarray(state, dtype=np.uint64))
        pos = np.searchsorted(self.states, q)
        ok = pos < len(self.states)
        ok[ok] = self.states[pos[ok]] == q[ok]
        if not ok.all():
            raise DomainError(f"configuration(s) {q[~ok].tolist()} not in sector {self.sector}")
        return int(pos[0]) if scalar else pos

    def __contains__(self, state) -> bool:
        pos = np.searchsorted(self.states, np.uint64(state))
        return bool(pos < len(self.states) and self.states[pos] == state)


def enumerate_sector(n: int, n_up: int) -> SectorBasis:
    sector = Sector(n, n_up)
    every = np.arange(1 << n, dtype=np.uint64)
    states = every[popcount(every) == n_up]
    states.setflags(write=False)
    return SectorBasis(sector, states)


def _check_site(l, n):
    if not 1 <= l <= n:
        raise DomainError(f"site {l} outside 1..{n}")


def site_occupation(state, l: int, n: int = MAX_SITES):
    """Occupation (0/1) of site ``l``; works on ints and integer arrays."""
    _check_site(l, n)
    if isinstance(state, (int, np.integer)):
        return (int(state) >> (l - 1)) & 1
    return ((np.asarray(state, dtype=np.uint64) >> np.uint64(l - 1)) & np.uint64(1)).astype(np.int64)


def between_mask(i: int, j: int) -> int:
    """Bitmask of the sites strictly between ``i`` and ``j`` (i < j)."""
    return ((1 << (j - 1)) - 1) & ~((1 << i) - 1)


def string_parity(state, i: int, j: int):
    """(-1) to the number of occupied sites strictly between i and j."""
    if i >= j:
        raise DomainError(f"string parity needs i < j, got i={i}, j={j}")
    if i < 1:
        raise DomainError(f"site {i} must be >= 1")
    mask = between_mask(i, j)
    if isinstance(state, (int, np.integer)):
        return -1 if (int(state) & mask).bit_count() % 2 else 1
    odd = popcount(np.asarray(state, dtype=np.uint64) & np.uint64(mask)) % 2
    return 1 - 2 * odd


def config_from_string(s: str) -> int:
    """Parse e.g. ``"↓↑↓↑↑"`` or ``"dudu u"``; the leftmost symbol is site 1."""
    bits = [_ARROWS[c] for c in s if not c.isspace()]
    return sum(b << l for l, b in enumerate(bits))


def config_to_string(state: int, n: int) -> str:
    return "".join("↑" if (int(state) >> l) & 1 else "↓" for l in range(n))
