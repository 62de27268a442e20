"""Degree of symmetry of Hamiltonians and states under products of SO(2).

The group element ``R(w) = prod_i exp(-i w_i sigma_z^i / 2)`` is diagonal in
the computational basis, so it is represented by its vector of phases.
Three routes evaluate the group average of ``Re Tr(R^dag A R A)``:

* ``pinching``: exact, the average removes every coherence between basis
  states with different charges, leaving ``sum_z A_zz**2``;
* ``quadrature``: tensor-product Gauss-Legendre over ``[-pi, pi]^N``;
* ``monte_carlo``: i.i.d. uniform angles from a seeded generator.

The last two exist to check the first.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .operators import (
    MAX_DIM,
    MAX_SITES,
    DimensionError,
    Operator,
    as_matrix,
    as_operator,
    as_state,
    frobenius_norm,
    rebias,
)

METHODS = ("pinching", "quadrature", "monte_carlo")
DEFAULT_NODES = 32
GRID_BUDGET = 10**7
_CHUNK = 8192


class UndefinedDosError(ValueError):
    """The rebiased operator vanishes, so the normalisation is zero."""


@dataclass(frozen=True)
class SO2ProductElement:
    omegas: tuple[float, ...]

    def __post_init__(self):
        om = tuple(float(w) for w in np.atleast_1d(self.omegas))
        if not om:
            raise ValueError("need at least one angle")
        if any(not -np.pi <= w < np.pi for w in om):
            raise ValueError("angles must lie in [-pi, pi)")
        object.__setattr__(self, "omegas", om)


@dataclass(frozen=True)
class GroupSpec:
    """``SO(2)^N`` acting through ``sigma_z / 2`` on each of ``n_sites`` qubits.

    ``charges`` overrides the generator diagonals (shape ``(N, d)``); it is
    used for the fermionic Fock-space oracle where a mode carries four states.
    """

    n_sites: int
    charges: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValueError("n_sites must be >= 1")
        if self.charges is None:
            if self.n_sites > MAX_SITES:
                raise DimensionError(f"{self.n_sites} sites exceed the cap of {MAX_SITES}")
            q = sigma_z_charges(self.n_sites)
        else:
            q = np.atleast_2d(np.asarray(self.charges, dtype=float))
            if q.shape[0] != self.n_sites:
                raise ValueError("charges must have one row per angle")
            if q.shape[1] > MAX_DIM:
                raise DimensionError(f"dimension {q.shape[1]} exceeds cap {MAX_DIM}")
        q.setflags(write=False)
        object.__setattr__(self, "charges", q)

    @property
    def dim(self) -> int:
        return self.charges.shape[1]

    @classmethod
    def for_dim(cls, dim: int) -> "GroupSpec":
        n = int(round(np.log2(dim)))
        if 2**n != dim:
            raise ValueError(f"dimension {dim} is not a power of two")
        return cls(n)

    def phases(self, omegas: np.ndarray) -> np.ndarray:
        """Diagonal of ``R`` for a batch of angle vectors, shape ``(k, d)``."""
        om = np.atleast_2d(omegas)
        return np.exp(-1j * (om @ self.charges))


def sigma_z_charges(n_sites: int) -> np.ndarray:
    """Row ``i`` holds the diagonal of ``sigma_z^i / 2`` (bit 0 = spin up)."""
    idx = np.arange(2**n_sites)
    bits = (idx[None, :] >> (n_sites - 1 - np.arange(n_sites)[:, None])) & 1
    return 0.5 * (1 - 2 * bits).astype(float)


@dataclass(frozen=True)
class DosResult:
    value: float
    method: str
    error_estimate: float = 0.0
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if not -1e-10 <= self.value <= 1 + 1e-10:
            raise ValueError(f"degree of symmetry {self.value} outside [0, 1]")


def representation(g: SO2ProductElement, group: GroupSpec | None = None) -> Operator:
    group = group or GroupSpec(len(g.omegas))
    if len(g.omegas) != group.n_sites:
        raise ValueError("angle count does not match the group")
    return Operator(np.diag(group.phases(np.array(g.omegas))[0]))


def overlap_functional(a) -> Callable[[np.ndarray], np.ndarray]:
    """``r -> Re Tr(R^dag A R A)`` for a batch of diagonal phase vectors ``r``."""
    m = as_matrix(a)
    kernel = m * m.T  # Tr(R^dag A R A) = sum_zw conj(r_z) A_zw A_wz r_w

    def f(r: np.ndarray) -> np.ndarray:
        return np.einsum("kz,zw,kw->k", r.conj(), kernel, r).real

    return f


def _as_functional(f):
    if callable(f):
        return f
    return overlap_functional(f)


def group_average_quadrature(f, group: GroupSpec, nodes_per_angle: int = DEFAULT_NODES) -> float:
    """Tensor-product Gauss-Legendre average over ``[-pi, pi]^N``.

    ``f`` maps a ``(k, d)`` batch of phase vectors to ``k`` reals, or is an
    operator whose overlap functional is averaged. Points are visited in a
    fixed order, so repeated calls agree bit for bit.
    """
    f = _as_functional(f)
    n, N = nodes_per_angle, group.n_sites
    if float(n) ** N > GRID_BUDGET:
        raise ValueError(f"grid of {n}^{N} points exceeds budget {GRID_BUDGET}")
    x, w = np.polynomial.legendre.leggauss(n)
    x, w = np.pi * x, w / 2.0  # weights now sum to 1 per angle
    total = 0.0
    n_points = n**N
    for start in range(0, n_points, _CHUNK):
        flat = np.arange(start, min(start + _CHUNK, n_points))
        digits = np.stack([(flat // n ** (N - 1 - i)) % n for i in range(N)], axis=1)
        weights = np.prod(w[digits], axis=1)
        total += float(np.dot(weights, f(group.phases(x[digits]))))
    return total


def _rng(seed, stream: int = 0) -> np.random.Generator:
    """Counter-based stream ``stream`` derived from ``seed`` (Philox)."""
    if seed is None:
        raise ValueError("Monte Carlo averages need an explicit seed")
    ss = np.random.SeedSequence(int(seed), spawn_key=(stream,))
    return np.random.Generator(np.random.Philox(ss))


def group_average_monte_carlo(f, group: GroupSpec, samples: int, seed, stream: int = 0) -> tuple[float, float]:
    """Sample mean and standard error of ``f`` over uniform random angles."""
    if samples < 100:
        raise ValueError("need at least 100 samples")
    f = _as_functional(f)
    rng = _rng(seed, stream)
    vals = np.empty(samples)
    for start in range(0, samples, _CHUNK):
        k = min(_CHUNK, samples - start)
        om = rng.uniform(-np.pi, np.pi, size=(k, group.n_sites))
        vals[start : start + k] = f(group.phases(om))
    shifted = vals - vals[0]  # exact for constant integrands, better conditioned otherwise
    mean = float(vals[0] + np.mean(shifted))
    stderr = float(np.std(shifted, ddof=1) / np.sqrt(samples))
    return mean, stderr


def group_average_pinching(a, group: GroupSpec | None = None) -> float:
    """Exact average of ``Re Tr(R^dag A R A)`` by dephasing.

    Only coherences between basis states of equal charge survive the
    average; for the default group that means the diagonal alone.
    """
    m = as_matrix(a)
    group = group or GroupSpec.for_dim(m.shape[0])
    q = group.charges
    offsets = q - q[:, :1]
    if not np.allclose(offsets, np.round(offsets), atol=1e-12):
        raise ValueError("pinching is exact only when charge differences are integers")
    _, sector = np.unique(np.round(q.T, 9), axis=0, return_inverse=True)
    sector = sector.ravel()
    if sector.max() + 1 == m.shape[0]:
        d = np.diagonal(m).real
        return float(np.dot(d, d))
    total = 0.0
    for s in range(sector.max() + 1):
        idx = np.flatnonzero(sector == s)
        block = m[np.ix_(idx, idx)]
        total += float(np.sum(block * block.T).real)
    return total


def _average(a, group, method, nodes, samples, seed, stream):
    if method == "pinching":
        return group_average_pinching(a, group), 0.0, {}
    if method == "quadrature":
        val = group_average_quadrature(a, group, nodes)
        return val, 0.0, {"nodes_per_angle": nodes}
    if method == "monte_carlo":
        val, err = group_average_monte_carlo(a, group, samples, seed, stream)
        return val, err, {"samples": samples, "seed": int(seed), "stream": stream}
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


def _group_for(dim: int, group: GroupSpec | None) -> GroupSpec:
    group = group or GroupSpec.for_dim(dim)
    if group.dim != dim:
        raise ValueError(f"group acts on dimension {group.dim}, operator has {dim}")
    return group


def dos_hamiltonian(
    h,
    group: GroupSpec | None = None,
    method: str = "pinching",
    *,
    nodes: int = DEFAULT_NODES,
    samples: int = 100_000,
    seed=None,
    stream: int = 0,
) -> DosResult:
    """``S = 1/2 + avg Re Tr(R^dag H R H) / (2 |H|^2)`` with ``H`` rebiased."""
    ht = rebias(as_operator(h, hermitian=True))
    norm2 = frobenius_norm(ht) ** 2
    if norm2 <= 1e-24:
        raise UndefinedDosError("rebiased Hamiltonian is zero")
    group = _group_for(ht.dim, group)
    avg, err, detail = _average(ht, group, method, nodes, samples, seed, stream)
    return DosResult(0.5 + avg / (2 * norm2), method, err / (2 * norm2), detail)


def dos_state(
    rho,
    group: GroupSpec | None = None,
    method: str = "pinching",
    *,
    nodes: int = DEFAULT_NODES,
    samples: int = 100_000,
    seed=None,
    stream: int = 0,
) -> DosResult:
    """``S = 1/2 + avg Tr(R rho R^dag rho) / (2 Tr rho^2)``; pure vectors become projectors."""
    state = as_state(rho)
    purity = state.purity()
    group = _group_for(state.dim, group)
    avg, err, detail = _average(state.rho, group, method, nodes, samples, seed, stream)
    return DosResult(0.5 + avg / (2 * purity), method, err / (2 * purity), detail)
