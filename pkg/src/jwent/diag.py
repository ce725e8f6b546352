"""Dense eigensolution of sector matrices and ground-state selection."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .basis import Sector, SectorBasis, enumerate_sector
from .errors import DegeneracyError, DomainError, NumericError
from .model import CouplingSet, SectorMatrix

AUTO = "auto"
DEGENERACY_TOL = 1e-9
NORM_TOL = 1e-12
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class StateVector:
    basis: SectorBasis
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=float)
        if amps.shape != (self.basis.dim,):
            raise DomainError(f"expected {self.basis.dim} amplitudes, got shape {amps.shape}")
        norm = float(amps @ amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"state not normalized: |psi|^2 = {norm!r}")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def n(self) -> int:
        return self.basis.n

    @classmethod
    def from_amplitudes(cls, basis: SectorBasis, amps, normalize: bool = True) -> "StateVector":
        amps = np.asarray(amps, dtype=float)
        if normalize:
            norm = np.linalg.norm(amps)
            if norm == 0:
                raise DomainError("cannot normalize the zero vector")
            amps = amps / norm
        return cls(basis, amps)

    @classmethod
    def from_configs(cls, n: int, weights: dict, normalize: bool = True) -> "StateVector":
        """Build from ``{configuration: amplitude}``; all keys must share a sector."""
        counts = {int(s).bit_count() for s in weights}
        if len(counts) != 1:
            raise DomainError("configurations span several sectors")
        basis = enumerate_sector(n, counts.pop())
        amps = np.zeros(basis.dim)
        for s, a in weights.items():
            amps[basis.index_of(s)] = a
        return cls.from_amplitudes(basis, amps, normalize)

    def amplitude(self, state: int) -> float:
        return float(self.amps[self.basis.index_of(state)]) if state in self.basis else 0.0


def swap_sites(psi: StateVector, i: int, j: int) -> StateVector:
    """Relabel sites i <-> j, carrying each amplitude to the swapped configuration."""
    bi, bj = np.uint64(1 << (i - 1)), np.uint64(1 << (j - 1))
    s = psi.basis.states
    differ = ((s & bi) != 0) != ((s & bj) != 0)
    swapped = np.where(differ, s ^ (bi | bj), s)
    amps = np.empty_like(psi.amps)
    amps[psi.basis.index_of(swapped)] = psi.amps
    return StateVector(psi.basis, amps)


@dataclass(frozen=True)
class GroundStateReport:
    energy: float
    state: StateVector
    sector: Sector
    gap_to_next: float
    degenerate: bool
    tied_sectors: tuple = ()


def eigensystem(m: Union[SectorMatrix, np.ndarray]):
    """Ascending eigenvalues and orthonormal eigenvectors (columns)."""
    a = np.asarray(m, dtype=float)
    if not np.all(np.isfinite(a)):
        raise NumericError("matrix has non-finite entries")
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    w, v = np.linalg.eigh(a)
    resid = np.linalg.norm(a @ v - v * w, axis=0)
    if resid.size and resid.max() > RESIDUAL_TOL:
        raise NumericError(f"eigen-residual {resid.max():.3g} above {RESIDUAL_TOL}")
    return w, v


Builder = Callable[[CouplingSet, SectorBasis], SectorMatrix]


def ground_state(builder: Builder, couplings: CouplingSet, sector=AUTO,
                 strict: bool = False, tol: float = DEGENERACY_TOL) -> GroundStateReport:
    """Lowest eigenpair of ``builder`` in one sector, or over all sectors for AUTO.

    Ties (within or across sectors) set ``degenerate``; with ``strict`` they
    raise :class:`DegeneracyError` instead.
    """
    n = couplings.n
    if isinstance(sector, Sector):
        sector = sector.n_up
    if sector == AUTO or sector is None:
        scan = range(n + 1)
    else:
        scan = [int(sector)]

    solved = []
    for n_up in scan:
        basis = enumerate_sector(n, n_up)
        w, v = eigensystem(builder(couplings, basis))
        solved.append((basis, w, v))

    lows = np.array([w[0] for _, w, _ in solved])
    best = int(np.argmin(lows))
    e0 = float(lows[best])
    tied = tuple(basis.n_up for (basis, _, _), e in zip(solved, lows) if e - e0 <= tol)
    levels = np.sort(np.concatenate([w for _, w, _ in solved]))
    gap = float(levels[1] - levels[0]) if levels.size > 1 else float("inf")
    degenerate = gap <= tol
    if degenerate and strict:
        raise DegeneracyError(
            f"ground state degenerate within {tol:g} (tied sectors n_up={list(tied)})", tied)

    basis, _, v = solved[best]
    return GroundStateReport(
        energy=e0,
        state=StateVector.from_amplitudes(basis, v[:, 0]),
        sector=basis.sector,
        gap_to_next=max(gap, 0.0),
        degenerate=degenerate,
        tied_sectors=tied,
    )
