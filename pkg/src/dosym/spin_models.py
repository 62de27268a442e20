"""Uniform non-interacting spin model ``sum_i eps sz_i + lam sx_i + mu sy_i``.

Closed forms for the degree of symmetry of the Hamiltonian, its ground
state and its Gibbs state, plus the limit tables that expose the
non-commuting ``N -> inf`` and ``lam -> 0`` limits.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .operators import MAX_SITES, DimensionError, Operator, State, embed, PAULI

LOW_T_BETA_XI = 25.0


@dataclass(frozen=True)
class ManySpinSpec:
    n: int
    epsilon: float
    lambda_: float
    mu: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.xi <= 0:
            raise ValueError("xi = sqrt(eps^2 + lam^2 + mu^2) must be positive")

    @property
    def xi(self) -> float:
        return float(np.sqrt(self.epsilon**2 + self.lambda_**2 + self.mu**2))

    @property
    def theta(self) -> float:
        return float(np.arccos(np.clip(self.epsilon / self.xi, -1.0, 1.0)))

    @property
    def phi(self) -> float:
        return float(np.arctan2(self.mu, self.lambda_))

    @property
    def transverse_fraction(self) -> float:
        """``(lam^2 + mu^2) / xi^2`` i.e. ``sin^2 theta``."""
        return (self.lambda_**2 + self.mu**2) / self.xi**2


def _check_matrix_size(n: int) -> None:
    if n > MAX_SITES:
        raise DimensionError(f"{n} spins exceed the dense cap of {MAX_SITES}")


def single_site_field(spec: ManySpinSpec) -> np.ndarray:
    return spec.epsilon * PAULI["z"] + spec.lambda_ * PAULI["x"] + spec.mu * PAULI["y"]


def build_hamiltonian(spec: ManySpinSpec) -> Operator:
    _check_matrix_size(spec.n)
    h1 = single_site_field(spec)
    h = sum(embed(h1, i, spec.n) for i in range(spec.n))
    return Operator(h, hermitian=True)


def site_rotation(theta: float, phi: float) -> np.ndarray:
    """``exp(-i phi sz/2) exp(-i theta sy/2)``."""
    rz = np.diag([np.exp(-0.5j * phi), np.exp(0.5j * phi)])
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    ry = np.array([[c, -s], [s, c]], dtype=complex)
    return rz @ ry


def rotated_hamiltonian(spec: ManySpinSpec) -> Operator:
    """``sum_i xi R_i sz_i R_i^dag``, the same operator written as tilted spins."""
    _check_matrix_size(spec.n)
    r = site_rotation(spec.theta, spec.phi)
    h1 = spec.xi * r @ PAULI["z"] @ r.conj().T
    return Operator(sum(embed(h1, i, spec.n) for i in range(spec.n)), hermitian=True)


def ground_vector(spec: ManySpinSpec) -> np.ndarray:
    _check_matrix_size(spec.n)
    site = site_rotation(spec.theta, spec.phi) @ np.array([0.0, 1.0])
    return reduce(np.kron, [site] * spec.n)


def ground_state(spec: ManySpinSpec) -> State:
    return State.from_vector(ground_vector(spec))


def _one_half_plus_half_power(base: float, n: int) -> float:
    return 0.5 + 0.5 * float(base) ** n


def dos_h_closed(spec: ManySpinSpec) -> float:
    return 0.5 + spec.epsilon**2 / (2 * spec.xi**2)


def dos_ground_closed(spec: ManySpinSpec) -> float:
    return _one_half_plus_half_power(1.0 - 0.5 * spec.transverse_fraction, spec.n)


def thermal_lambda(spec: ManySpinSpec, beta: float) -> float:
    """``(lam^2+mu^2) sinh^2(b xi) / (xi^2 cosh(2 b xi))``, overflow-free."""
    x = beta * spec.xi
    # sinh^2/cosh(2x) = tanh^2 / (1 + tanh^2)
    t2 = np.tanh(x) ** 2
    return spec.transverse_fraction * t2 / (1.0 + t2)


def dos_thermal_closed(spec: ManySpinSpec, beta: float) -> float:
    if beta < 0:
        raise ValueError("beta must be non-negative")
    return _one_half_plus_half_power(1.0 - thermal_lambda(spec, beta), spec.n)


def _ground_limit_form(epsilon: float, lam: float, n: float, mu: float = 0.0) -> float:
    xi2 = epsilon**2 + lam**2 + mu**2
    x = (lam**2 + mu**2) / (2 * xi2)
    return 0.5 + 0.5 * float(np.exp(n * np.log1p(-x)))


def limit_diagnostics(epsilon: float, perturbations, sizes, mu: float = 0.0) -> list[dict]:
    """Closed-form degree of symmetry over a ``(N, lam)`` grid.

    Rows carry the Hamiltonian value, the ground-state (``beta -> inf``)
    value and a low-temperature Gibbs value at ``beta xi = 25``. ``N`` is
    only used as an exponent, so it may be far above the matrix cap.
    """
    perturbations = list(perturbations)
    sizes = list(sizes)
    if not perturbations or not sizes:
        raise ValueError("grids must be non-empty")
    rows = []
    for n in sorted(sizes):
        for lam in sorted(perturbations):
            xi2 = epsilon**2 + lam**2 + mu**2
            tf = (lam**2 + mu**2) / xi2
            t2 = np.tanh(LOW_T_BETA_XI) ** 2
            thermal = 0.5 + 0.5 * float(np.exp(n * np.log1p(-tf * t2 / (1 + t2))))
            rows.append(
                {
                    "n": n,
                    "lambda": lam,
                    "dos_hamiltonian": 0.5 + epsilon**2 / (2 * xi2),
                    "dos_ground": _ground_limit_form(epsilon, lam, n, mu),
                    "dos_thermal_low_t": thermal,
                }
            )
    return rows

