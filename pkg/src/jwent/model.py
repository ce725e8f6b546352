"""Sector-restricted Hamiltonians for open XXZ/XY chains and their
Jordan-Wigner tight-binding counterparts."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .basis import SectorBasis, string_parity
from .errors import CapacityError, DomainError

# largest sector dimension of a 16-site chain
MAX_DENSE_DIM = 12870


@dataclass(frozen=True)
class CouplingSet:
    """Per-bond couplings; bond ``j`` joins sites ``j`` and ``j + 1``."""

    j_xy: tuple
    j_z: tuple

    def __post_init__(self):
        object.__setattr__(self, "j_xy", tuple(float(x) for x in self.j_xy))
        object.__setattr__(self, "j_z", tuple(float(x) for x in self.j_z))
        if len(self.j_xy) != len(self.j_z):
            raise DomainError(f"j_xy has {len(self.j_xy)} bonds but j_z has {len(self.j_z)}")
        if len(self.j_xy) < 1:
            raise DomainError("a chain needs at least one bond")
        if not np.all(np.isfinite(self.j_xy + self.j_z)):
            raise DomainError("couplings must be finite")

    @property
    def n(self) -> int:
        return len(self.j_xy) + 1

    @classmethod
    def xy(cls, j_xy: Sequence[float]) -> "CouplingSet":
        return cls(tuple(j_xy), (0.0,) * len(j_xy))

    @classmethod
    def uniform(cls, n: int, j: float = 1.0, jz: float = 0.0) -> "CouplingSet":
        return cls((j,) * (n - 1), (jz,) * (n - 1))


@dataclass(frozen=True)
class SectorMatrix:
    basis: SectorBasis
    entries: np.ndarray = field(repr=False)

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)


def _check(couplings: CouplingSet, basis: SectorBasis):
    if couplings.n != basis.n:
        raise DomainError(f"{len(couplings.j_xy)} bonds given for a {basis.n}-site chain")
    if basis.dim > MAX_DENSE_DIM:
        raise CapacityError(f"sector dimension {basis.dim} exceeds dense limit {MAX_DENSE_DIM}")


def _nn_chain(couplings, basis, hop_sign):
    states = basis.states
    h = np.zeros((basis.dim, basis.dim))
    diag = np.zeros(basis.dim)
    rows = np.arange(basis.dim)
    for b, (j, jz) in enumerate(zip(couplings.j_xy, couplings.j_z)):
        pair = (states >> np.uint64(b)) & np.uint64(3)
        aligned = (pair == 0) | (pair == 3)
        diag += np.where(aligned, jz / 4, -jz / 4)
        if j == 0.0:
            continue
        flip = ~aligned
        src = states[flip]
        dst = basis.index_of(src ^ np.uint64(3 << b))
        h[dst, rows[flip]] = j * hop_sign(src, b + 1, b + 2)
    h[rows, rows] = diag
    return h


def build_xxz_spin(couplings: CouplingSet, basis: SectorBasis) -> SectorMatrix:
    """H = sum_j J_j (S+_j S-_{j+1} + h.c.) + Jz_j Sz_j Sz_{j+1} on one sector."""
    _check(couplings, basis)
    return SectorMatrix(basis, _nn_chain(couplings, basis, lambda s, i, j: 1.0))


def build_tb_fermion(couplings: CouplingSet, basis: SectorBasis) -> SectorMatrix:
    """H = sum_j Jz_j (n_j - 1/2)(n_{j+1} - 1/2) + J_j (a+_j a_{j+1} + h.c.).

    Kets are products of creation operators in ascending site order, so a
    hop between i < j picks up the parity of the occupied sites between them.
    """
    _check(couplings, basis)
    return SectorMatrix(basis, _nn_chain(couplings, basis, string_parity))


def build_xy_spin(j_xy: Sequence[float], basis: SectorBasis) -> SectorMatrix:
    return build_xxz_spin(CouplingSet.xy(j_xy), basis)
