"""Full 2^N operator algebra, kept separate from the bit-twiddling code paths.

Operators are built from Kronecker products of single-site matrices and
Jordan-Wigner strings, then evaluated on sector states embedded in the full
space. Used as an independent check of ``model`` and ``measures``.
"""
from __future__ import annotations

from functools import lru_cache, reduce

import numpy as np
from scipy.linalg import expm

from .diag import StateVector

# single-site basis (|down>, |up>) so that the full-space index equals the bit configuration
SIGMA_Z = np.diag([-1.0, 1.0])
SIGMA_PLUS = np.array([[0.0, 0.0], [2.0, 0.0]])  # sigma_x + i sigma_y
SIGMA_MINUS = SIGMA_PLUS.T
IDENTITY = np.eye(2)
NUMBER = (IDENTITY + SIGMA_Z) / 2


def site_operator(op: np.ndarray, l: int, n: int) -> np.ndarray:
    """``op`` acting on site l (1-based) of an n-site chain."""
    factors = [op if site == l else IDENTITY for site in range(n, 0, -1)]
    return reduce(np.kron, factors)


@lru_cache(maxsize=None)
def annihilator(l: int, n: int) -> np.ndarray:
    """a_l = exp(i pi sum_{p<l} n_p) S-_l."""
    string = np.eye(1 << n)
    for p in range(1, l):
        string = string @ site_operator(SIGMA_Z, p, n) * -1.0
    return string @ site_operator(SIGMA_MINUS / 2, l, n)


def embed(psi: StateVector) -> np.ndarray:
    full = np.zeros(1 << psi.n)
    full[psi.basis.states.astype(np.int64)] = psi.amps
    return full


def restrict(op: np.ndarray, basis) -> np.ndarray:
    idx = basis.states.astype(np.int64)
    return op[np.ix_(idx, idx)]


def xxz_hamiltonian(couplings) -> np.ndarray:
    n = couplings.n
    sp = [site_operator(SIGMA_PLUS / 2, l, n) for l in range(1, n + 1)]
    sz = [site_operator(SIGMA_Z / 2, l, n) for l in range(1, n + 1)]
    h = np.zeros((1 << n, 1 << n))
    for b, (j, jz) in enumerate(zip(couplings.j_xy, couplings.j_z)):
        h += j * (sp[b] @ sp[b + 1].T + sp[b].T @ sp[b + 1]) + jz * sz[b] @ sz[b + 1]
    return h


def tb_hamiltonian(couplings) -> np.ndarray:
    n = couplings.n
    a = [annihilator(l, n) for l in range(1, n + 1)]
    half = np.eye(1 << n) / 2
    h = np.zeros((1 << n, 1 << n))
    for b, (j, jz) in enumerate(zip(couplings.j_xy, couplings.j_z)):
        hop = a[b].T @ a[b + 1]
        h += jz * (a[b].T @ a[b] - half) @ (a[b + 1].T @ a[b + 1] - half) + j * (hop + hop.T)
    return h


@lru_cache(maxsize=None)
def string_correlator(n: int, i: int, j: int) -> np.ndarray:
    """(1/4) sigma+_i sigma-_j exp(i pi sum_{p=i}^{j-1} (1 + sigma^z_p)/2)."""
    gen = sum(site_operator((IDENTITY + SIGMA_Z) / 2, p, n) for p in range(i, j))
    phase = expm(1j * np.pi * gen)
    op = site_operator(SIGMA_PLUS, i, n) @ site_operator(SIGMA_MINUS, j, n) @ phase / 4
    return op


def spin_string_expectation(psi: StateVector, i: int, j: int) -> float:
    v = embed(psi)
    val = v @ string_correlator(psi.n, i, j) @ v
    return float(val.real)


def fermion_hopping_expectation(psi: StateVector, i: int, j: int) -> float:
    """<a+_i a_j> with explicit Jordan-Wigner matrices."""
    v = embed(psi)
    return float(v @ annihilator(i, psi.n).T @ annihilator(j, psi.n) @ v)


def pauli_pair_expectations(psi: StateVector, i: int, j: int) -> dict:
    n, v = psi.n, embed(psi)
    zi, zj = site_operator(SIGMA_Z, i, n), site_operator(SIGMA_Z, j, n)
    pm = site_operator(SIGMA_PLUS, i, n) @ site_operator(SIGMA_MINUS, j, n)
    return {
        "sz_i": v @ zi @ v,
        "sz_j": v @ zj @ v,
        "sz_sz": v @ zi @ zj @ v,
        "sp_sm": v @ pm @ v,
    }


def partial_trace_rdm(psi: StateVector, i: int, j: int) -> np.ndarray:
    """General two-site RDM, reordered to the basis {11, 10, 01, 00}."""
    n = psi.n
    t = embed(psi).reshape([2] * n)  # axis k <-> site n - k
    ai, aj = n - i, n - j
    t = np.moveaxis(t, (ai, aj), (0, 1)).reshape(4, -1)
    rho = t @ t.T  # index 2*n_i + n_j
    order = [3, 2, 1, 0]
    return rho[np.ix_(order, order)]
