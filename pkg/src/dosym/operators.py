"""Dense complex operators, Pauli strings and thermal states.

Everything here works on plain ``numpy`` arrays wrapped in a thin
:class:`Operator` so that Hermiticity is checked once, at construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MAX_DIM = 4096
MAX_SITES = 12
HERMITIAN_TOL = 1e-12

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class DimensionError(ValueError):
    """Requested operator exceeds the dense dimension cap."""


class NotHermitianError(ValueError):
    pass


class InvalidStateError(ValueError):
    pass


def _check_dim(dim: int) -> None:
    if dim > MAX_DIM:
        raise DimensionError(f"dimension {dim} exceeds cap {MAX_DIM}")


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


@dataclass(frozen=True, eq=False)
class Operator:
    """Square complex matrix.

    ``hermitian=None`` detects the flag; ``True`` asserts it and raises if
    the matrix is more than ``1e-12`` away from its adjoint.
    """

    matrix: np.ndarray
    hermitian: bool | None = None

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValueError(f"operator must be a non-empty square matrix, got shape {m.shape}")
        _check_dim(m.shape[0])
        if not np.all(np.isfinite(m)):
            raise ValueError("operator entries must be finite")
        m.setflags(write=False)
        defect = hermiticity_defect(m)
        if self.hermitian is None:
            flag = defect <= HERMITIAN_TOL
        elif self.hermitian and defect > HERMITIAN_TOL:
            raise NotHermitianError(f"max |A - A^dagger| = {defect:.3e}")
        else:
            flag = bool(self.hermitian)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "hermitian", flag)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def check_hermitian(self) -> bool:
        return hermiticity_defect(self.matrix) <= HERMITIAN_TOL

    def dag(self) -> "Operator":
        return Operator(self.matrix.conj().T, hermitian=self.hermitian)

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def diagonal(self) -> np.ndarray:
        return np.diagonal(self.matrix).copy()

    def __matmul__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix @ as_matrix(other))

    def __add__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix + as_matrix(other))

    def __sub__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix - as_matrix(other))

    def __mul__(self, c: complex) -> "Operator":
        return Operator(c * self.matrix)

    __rmul__ = __mul__

    def __neg__(self) -> "Operator":
        return Operator(-self.matrix, hermitian=self.hermitian)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def allclose(self, other, atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.matrix, as_matrix(other), rtol=0.0, atol=atol))


def as_matrix(a) -> np.ndarray:
    return a.matrix if isinstance(a, Operator) else np.asarray(a, dtype=complex)


def as_operator(a, hermitian: bool | None = None) -> Operator:
    if isinstance(a, Operator):
        if hermitian and not a.hermitian:
            raise NotHermitianError("operator is not Hermitian")
        return a
    return Operator(a, hermitian=hermitian)


def identity(dim: int) -> Operator:
    _check_dim(dim)
    return Operator(np.eye(dim, dtype=complex), hermitian=True)


def tensor(a, b) -> Operator:
    a, b = as_matrix(a), as_matrix(b)
    _check_dim(a.shape[0] * b.shape[0])
    return Operator(np.kron(a, b))


def embed(single: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """``I (x) ... (x) single (x) ... (x) I`` with ``single`` acting on ``site``."""
    if n_sites > MAX_SITES or 2**n_sites > MAX_DIM:
        raise DimensionError(f"{n_sites} sites exceed the cap of {MAX_SITES}")
    if not 0 <= site < n_sites:
        raise IndexError(f"site {site} outside [0, {n_sites})")
    d = single.shape[0]
    return np.kron(np.kron(np.eye(d**site), single), np.eye(d ** (n_sites - site - 1)))


def pauli(axis: str, site: int, n_sites: int) -> Operator:
    """Pauli matrix on one site of an ``n_sites`` qubit register (site 0 leftmost)."""
    if axis not in PAULI:
        raise ValueError(f"axis must be one of x, y, z, got {axis!r}")
    return Operator(embed(PAULI[axis], site, n_sites), hermitian=True)


def frobenius_norm(a) -> float:
    return float(np.linalg.norm(as_matrix(a)))


def rebias(h) -> Operator:
    """Remove the mean energy: ``H - Tr(H)/d * I``."""
    h = as_operator(h, hermitian=True)
    shift = np.trace(h.matrix).real / h.dim
    return Operator(h.matrix - shift * np.eye(h.dim), hermitian=True)


def _eigh(m: np.ndarray):
    try:
        return np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ArithmeticError(f"eigendecomposition failed: {exc}") from exc


def hermitian_exp(h, s: float) -> Operator:
    """``exp(s * h)`` for Hermitian ``h`` and real ``s``."""
    h = as_operator(h, hermitian=True)
    w, v = _eigh(h.matrix)
    return Operator((v * np.exp(s * w)) @ v.conj().T, hermitian=True)


@dataclass(frozen=True, eq=False)
class State:
    """Density matrix, optionally remembering the pure vector it came from."""

    rho: Operator
    vector: np.ndarray | None = field(default=None)

    def __post_init__(self):
        rho = as_operator(self.rho)
        if not rho.check_hermitian():
            raise InvalidStateError("density matrix is not Hermitian")
        tr = rho.trace()
        if abs(tr - 1.0) > 1e-12:
            raise InvalidStateError(f"trace {tr} differs from 1")
        if self.vector is None:
            w = np.linalg.eigvalsh(rho.matrix)
            if w[0] < -1e-10:
                raise InvalidStateError(f"negative eigenvalue {w[0]:.3e}")
        object.__setattr__(self, "rho", Operator(rho.matrix, hermitian=True))

    @classmethod
    def from_vector(cls, psi) -> "State":
        psi = np.asarray(psi, dtype=complex).ravel()
        norm = np.linalg.norm(psi)
        if abs(norm - 1.0) > 1e-12:
            raise InvalidStateError(f"state vector norm {norm} differs from 1")
        _check_dim(psi.size)
        return cls(Operator(np.outer(psi, psi.conj()), hermitian=True), vector=psi)

    @property
    def dim(self) -> int:
        return self.rho.dim

    def purity(self) -> float:
        m = self.rho.matrix
        return float(np.sum(np.abs(m) ** 2))

    def expect(self, a) -> complex:
        return complex(np.trace(self.rho.matrix @ as_matrix(a)))


def as_state(rho) -> State:
    if isinstance(rho, State):
        return rho
    arr = np.asarray(as_matrix(rho))
    if arr.ndim == 1:
        return State.from_vector(arr)
    return State(Operator(arr))


def thermal_state(h, beta: float) -> State:
    """Gibbs state ``exp(-beta H)/Z``; the spectrum is shifted to keep exponents <= 0."""
    if beta < 0:
        raise ValueError("beta must be non-negative")
    h = as_operator(h, hermitian=True)
    w, v = _eigh(h.matrix)
    if np.isinf(beta):
        p = (w <= w[0] + 1e-12).astype(float)
    else:
        p = np.exp(-beta * (w - w[0]))
    p /= p.sum()
    rho = (v * p) @ v.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    rho /= np.trace(rho).real
    return State(Operator(rho, hermitian=True))
