"""Concurrence of spin-1/2 XXZ chains versus mode concurrence of their
Jordan-Wigner fermion counterparts, by exact diagonalization."""

from .analytic import (Family, Momentum, TwoParticleState, case_study, single_particle_amplitude,
                       slater_d, two_particle_Z, two_particle_z)
from .basis import Sector, SectorBasis, enumerate_sector, site_occupation, string_parity
from .diag import AUTO, GroundStateReport, StateVector, eigensystem, ground_state
from .errors import CapacityError, ConventionError, DegeneracyError, DomainError, NumericError
from .measures import (PairMeasure, Picture, concurrence, fermion_correlations, measure_pair,
                       mode_concurrence, spin_correlations, two_site_rdm)
from .model import CouplingSet, SectorMatrix, build_tb_fermion, build_xxz_spin, build_xy_spin
from .signrule import (Convention, SublatticePartition, check_marshall, check_xy_identity,
                       marshall_phi, pair_decompose, phase_fix)

__version__ = "0.1.0"
