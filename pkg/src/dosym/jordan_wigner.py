"""Fermion pair operators as pseudospins on the full Fock space.

Each momentum mode ``k`` carries two fermions, ``a_k`` (spin up, ``k``) and
``b_k`` (spin down, ``-k``), ordered ``a_0, b_0, a_1, b_1, ...`` along the
Jordan-Wigner string. Occupation basis per fermion: ``|0>`` empty, ``|1>``
filled.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .operators import DimensionError, Operator

MAX_JW_MODES = 3

_LOWER = np.array([[0.0, 1.0], [0.0, 0.0]])  # |0><1|
_PARITY = np.diag([1.0, -1.0])
_EYE = np.eye(2)


def annihilators(n_fermions: int) -> list[np.ndarray]:
    ops = []
    for j in range(n_fermions):
        factors = [_PARITY] * j + [_LOWER] + [_EYE] * (n_fermions - j - 1)
        ops.append(reduce(np.kron, factors))
    return ops


@dataclass
class PairOperators:
    a: list[np.ndarray]
    b: list[np.ndarray]
    sigma_plus: list[np.ndarray]
    sigma_minus: list[np.ndarray]
    sigma_z: list[np.ndarray]

    @property
    def dim(self) -> int:
        return self.a[0].shape[0]

    @property
    def m_modes(self) -> int:
        return len(self.a)

    def number(self, k: int) -> np.ndarray:
        return self.a[k].T @ self.a[k] + self.b[k].T @ self.b[k]


def pair_operators(m_modes: int) -> PairOperators:
    """``s+ = b a``, ``s- = a^dag b^dag``, ``sz = 1 - n_a - n_b`` for each mode."""
    if not 1 <= m_modes <= MAX_JW_MODES:
        raise DimensionError(f"Fock space limited to {MAX_JW_MODES} modes (dimension 64)")
    c = annihilators(2 * m_modes)
    a, b = c[0::2], c[1::2]
    eye = np.eye(4**m_modes)
    sp = [bk @ ak for ak, bk in zip(a, b)]
    sm = [ak.T @ bk.T for ak, bk in zip(a, b)]
    sz = [eye - ak.T @ ak - bk.T @ bk for ak, bk in zip(a, b)]
    return PairOperators(a, b, sp, sm, sz)


def fermionic_bcs_hamiltonian(ops: PairOperators, eps, v: float) -> np.ndarray:
    """``sum_k e_k (n_ak + n_bk) - V sum_kk' a_k^dag b_k^dag b_k' a_k'``."""
    h = sum(e * ops.number(k) for k, e in enumerate(eps))
    pair_create = sum(ak.T @ bk.T for ak, bk in zip(ops.a, ops.b))
    pair_annihilate = sum(bk @ ak for ak, bk in zip(ops.a, ops.b))
    return h - v * pair_create @ pair_annihilate


def pseudospin_bcs_hamiltonian(ops: PairOperators, eps, v: float) -> np.ndarray:
    """``-(sum_k e_k sz_k + V sum_kk' s-_k s+_k') + sum_k e_k``."""
    eye = np.eye(ops.dim)
    h = -sum(e * sz for e, sz in zip(eps, ops.sigma_z))
    h = h - v * sum(sm for sm in ops.sigma_minus) @ sum(sp for sp in ops.sigma_plus)
    return h + float(np.sum(eps)) * eye


def mean_field_fock_hamiltonian(ops: PairOperators, eps, delta: complex) -> Operator:
    """``-sum_k (e_k sz_k + Re D sx_k + Im D sy_k)`` with ``sx = s+ + s-``, ``sy = -i(s+ - s-)``."""
    h = np.zeros((ops.dim, ops.dim), dtype=complex)
    for e, sp, sm, sz in zip(eps, ops.sigma_plus, ops.sigma_minus, ops.sigma_z):
        sx = sp + sm
        sy = -1j * (sp - sm)
        h -= e * sz + delta.real * sx + delta.imag * sy
    return Operator(h, hermitian=True)


def fock_charges(ops: PairOperators) -> np.ndarray:
    """Generator diagonals ``sz_k / 2`` used for the pair-phase group."""
    return np.array([0.5 * np.diagonal(sz) for sz in ops.sigma_z])


@dataclass
class JwReport:
    m_modes: int
    commutator_deviation: float
    hamiltonian_deviation: float
    tol: float = 1e-12

    @property
    def passed(self) -> bool:
        return max(self.commutator_deviation, self.hamiltonian_deviation) <= self.tol


def _comm(x, y):
    return x @ y - y @ x


def jw_verify(m_modes: int, eps=None, v: float | None = None, seed: int = 0) -> JwReport:
    """Check the pseudospin algebra and the fermion-to-pseudospin Hamiltonian identity.

    Random ``eps`` and ``v`` are drawn from ``seed`` when not given.
    """
    ops = pair_operators(m_modes)
    rng = np.random.default_rng(seed)
    eps = rng.uniform(-1, 1, m_modes) if eps is None else np.asarray(eps, dtype=float)
    v = float(rng.uniform(0.1, 1.0)) if v is None else v
    dev = 0.0
    zero = np.zeros((ops.dim, ops.dim))
    for k in range(m_modes):
        for q in range(m_modes):
            same = k == q
            checks = [
                (_comm(ops.sigma_plus[k], ops.sigma_minus[q]), ops.sigma_z[k] if same else zero),
                (_comm(ops.sigma_z[k], ops.sigma_plus[q]), 2 * ops.sigma_plus[k] if same else zero),
                (_comm(ops.sigma_z[k], ops.sigma_minus[q]), -2 * ops.sigma_minus[k] if same else zero),
            ]
            for lhs, rhs in checks:
                dev = max(dev, float(np.max(np.abs(lhs - rhs))))
    h_f = fermionic_bcs_hamiltonian(ops, eps, v)
    h_s = pseudospin_bcs_hamiltonian(ops, eps, v)
    return JwReport(m_modes, dev, float(np.max(np.abs(h_f - h_s))))
