"""BCS gap equation, critical temperature and the pseudospin degree of symmetry.

Units: ``k_B = 1`` so temperatures are energies; ``g0`` is the density of
states at the Fermi level, constant over the Debye shell
``[-hbar_omega_d, hbar_omega_d]``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import zeta

from .numerics import (
    ConvergenceError,
    find_root_bisect,
    geometric_breakpoints,
    integrate_panels,
    integrate_semi_infinite,
)
from .operators import MAX_SITES, DimensionError, Operator, PAULI, embed

KAPPA_COEFF = (2.0 - np.sqrt(2.0)) * np.pi
K_ZERO_T = -0.5 * KAPPA_COEFF
# K(x) ~ -(x/2) int_0^inf tanh(u)^2 / u^2 du = -7 zeta(3) x / pi^2 as x -> 0
K_SMALL_SLOPE = -7.0 * float(zeta(3)) / np.pi**2
K_SMALL_X = 1e-6
GAP_NODES = 32


@dataclass(frozen=True)
class BcsSpec:
    g0: float = 1.0
    hbar_omega_d: float = 1.0
    g0v: float = 0.2
    m_modes: int = 100_000

    def __post_init__(self):
        if self.g0 <= 0 or self.hbar_omega_d <= 0:
            raise ValueError("g0 and hbar_omega_d must be positive")
        if not 0 < self.g0v < 1:
            raise ValueError("g0v must lie in (0, 1)")
        if self.m_modes < 2:
            raise ValueError("need at least two modes")

    def energy_grid(self) -> np.ndarray:
        """Midpoints of ``m_modes`` equal cells covering the Debye shell."""
        w = self.hbar_omega_d
        h = 2 * w / self.m_modes
        return -w + h * (np.arange(self.m_modes) + 0.5)

    @property
    def mode_weight(self) -> float:
        """States per grid cell, ``g0 * 2 hbar_omega_d / m``."""
        return self.g0 * 2 * self.hbar_omega_d / self.m_modes


@dataclass(frozen=True)
class GapCurve:
    t_over_tc: np.ndarray
    delta: np.ndarray
    tc: float
    delta0: float


# --- gap equations ----------------------------------------------------------


def solve_gap_zero_t(spec: BcsSpec) -> float:
    """Continuum zero-temperature gap ``hbar_omega_d / sinh(1 / g0V)``."""
    return spec.hbar_omega_d / np.sinh(1.0 / spec.g0v)


def solve_gap_discrete(spec: BcsSpec) -> float:
    """Zero-temperature gap from the finite mode sum ``1 = (V/2) sum_k 1/xi_k``."""
    eps = spec.energy_grid()
    coupling = 0.5 * spec.g0v * 2 * spec.hbar_omega_d / spec.m_modes

    def f(log_delta):
        d = np.exp(log_delta)
        return coupling * np.sum(1.0 / np.sqrt(eps**2 + d**2)) - 1.0

    guess = solve_gap_zero_t(spec)
    res = find_root_bisect(f, np.log(guess) - 5, np.log(guess) + 5, tol=1e-14, xtol=1e-13)
    if not res.converged:
        raise ConvergenceError("discrete gap equation did not converge")
    return float(np.exp(res.root))


def gap_integral(spec: BcsSpec, delta: float, t: float) -> float:
    """``g0V int_0^{hbar w_D} tanh(E / 2T) / E de`` with ``E = sqrt(e^2 + delta^2)``."""
    scales = [s for s in (delta, t) if s > 0]
    if not scales:
        raise ValueError("integral diverges for delta = t = 0")
    bp = geometric_breakpoints(min(scales) / 4.0, spec.hbar_omega_d)

    def f(e):
        en = np.sqrt(e**2 + delta**2)
        if t == 0:
            return 1.0 / en
        with np.errstate(divide="ignore", invalid="ignore"):
            val = np.tanh(en / (2 * t)) / en
        return np.where(en > 0, val, 1.0 / (2 * t))

    return spec.g0v * integrate_panels(f, bp, GAP_NODES)


def critical_temperature(spec: BcsSpec) -> float:
    """Temperature at which the linearised gap condition ``g0V I(0, T) = 1`` holds."""
    w = spec.hbar_omega_d
    estimate = 1.134 * w * np.exp(-1.0 / spec.g0v)

    def f(log_t):
        return gap_integral(spec, 0.0, np.exp(log_t)) - 1.0

    res = find_root_bisect(f, np.log(estimate) - 4, np.log(w), tol=1e-15, xtol=1e-13)
    if not res.converged:
        raise ConvergenceError("critical temperature bisection did not converge")
    return float(np.exp(res.root))


def solve_gap_finite_t(spec: BcsSpec, t: float, tc: float | None = None) -> float:
    """Gap at temperature ``t`` from the finite-temperature BCS equation."""
    if t < 0:
        raise ValueError("temperature must be non-negative")
    delta0 = solve_gap_zero_t(spec)
    if t == 0:
        return delta0
    tc = critical_temperature(spec) if tc is None else tc
    if t >= tc:
        return 0.0

    def f(log_d):
        return gap_integral(spec, np.exp(log_d), t) - 1.0

    lo = np.log(delta0) - 40
    hi = np.log(delta0)
    if f(lo) <= 0:
        # linearised condition already fails: numerically at T_c
        return 0.0
    if f(hi) >= 0:
        # thermal correction below quadrature resolution; D(T) <= D(0)
        return delta0
    res = find_root_bisect(f, lo, hi, tol=1e-15, xtol=1e-13)
    if not res.converged:
        raise ConvergenceError(f"gap equation did not converge at T={t}")
    return float(np.exp(res.root))


def gap_curve(spec: BcsSpec, t_over_tc) -> GapCurve:
    tc = critical_temperature(spec)
    ratios = np.asarray(t_over_tc, dtype=float)
    delta = np.array([solve_gap_finite_t(spec, r * tc, tc) for r in ratios])
    return GapCurve(ratios, delta, tc, solve_gap_zero_t(spec))


# --- degree of symmetry -----------------------------------------------------


def bcs_spin_hamiltonian(eps_grid, delta: complex) -> Operator:
    """Mean-field pseudospin Hamiltonian ``-sum_k (e_k sz + Re D sx + Im D sy)``."""
    eps = np.asarray(eps_grid, dtype=float)
    m = eps.size
    if m > MAX_SITES:
        raise DimensionError(f"{m} modes exceed the dense cap of {MAX_SITES}")
    field_xy = delta.real * PAULI["x"] + delta.imag * PAULI["y"]
    h = sum(embed(-(e * PAULI["z"] + field_xy), k, m) for k, e in enumerate(eps))
    return Operator(h, hermitian=True)


def dos_h_bcs(eps_grid, delta: complex) -> float:
    """``1/2 + (1/2) sum e_k^2 / sum xi_k^2``."""
    eps = np.asarray(eps_grid, dtype=float)
    if eps.size == 0:
        raise ValueError("empty energy grid")
    num = float(np.sum(eps**2))
    den = num + eps.size * abs(delta) ** 2
    if den == 0:
        raise ValueError("degree of symmetry undefined for a zero Hamiltonian")
    return 0.5 + 0.5 * num / den


def dos_ground_modes(eps_grid, delta: complex) -> float:
    """Ground-state value as the literal product over the listed modes."""
    eps = np.asarray(eps_grid, dtype=float)
    d2 = abs(delta) ** 2
    return 0.5 + 0.5 * float(np.prod(1.0 - 0.5 * d2 / (eps**2 + d2)))


def dos_ground_product(spec: BcsSpec, delta0: float) -> float:
    """Ground-state value with the mode sum weighted by the density of states.

    ``ln(2S - 1) = g0 sum_cells h ln(1 - D^2 / (2 xi^2))`` over the Debye shell.
    """
    if delta0 <= 0:
        return 1.0
    eps = spec.energy_grid()
    logs = np.log1p(-0.5 * delta0**2 / (eps**2 + delta0**2))
    return 0.5 + 0.5 * float(np.exp(spec.mode_weight * np.sum(logs)))


def dos_ground_exponential(g0: float, delta0: float) -> float:
    """``1/2 + (1/2) exp(-(2 - sqrt 2) pi g0 |D(0)|)``."""
    if g0 < 0 or delta0 < 0:
        raise ValueError("g0 and delta0 must be non-negative")
    return 0.5 + 0.5 * float(np.exp(-KAPPA_COEFF * g0 * delta0))


def pair_log_integral(tol: float = 1e-9) -> float:
    """``int_{-inf}^{inf} ln(1 - 1/(2(t^2+1))) dt``, evaluated numerically."""
    half = integrate_semi_infinite(lambda t: np.log1p(-0.5 / (1 + t**2)), tail_coeff=-0.5, tol=tol / 2)
    return 2 * half


def k_integral(beta_delta: float, tol: float = 1e-9) -> float:
    """``K = int_0^inf ln[1 + (-1/2 + 1/(k+1)) / (1+t^2)] dt``, ``k = cosh(2 b|D| sqrt(1+t^2))``.

    ``-1/2 + 1/(cosh 2x + 1) = -tanh(x)^2 / 2``, which avoids overflow of ``k``.
    """
    if beta_delta < 0:
        raise ValueError("beta_delta must be non-negative")
    if beta_delta == 0:
        return 0.0
    if np.isinf(beta_delta):
        return pair_log_integral(2 * tol) / 2
    if beta_delta < K_SMALL_X:
        return K_SMALL_SLOPE * beta_delta  # relative error O(x^2), below 1e-10 here

    def f(t):
        s = 1 + t**2
        return np.log1p(-0.5 * np.tanh(beta_delta * np.sqrt(s)) ** 2 / s)

    scale = max(1.0, 1.0 / beta_delta)
    return integrate_semi_infinite(f, tail_coeff=-0.5, tol=tol, scale=scale)


def dos_thermal_modes(eps_grid, delta: complex, beta: float) -> float:
    """Finite-temperature product ``prod_k (1 - |D|^2 tanh^2(b xi_k) / (2 xi_k^2))``.

    This is the value for a Gibbs state over the full four-state Fock space
    of each mode (paired, empty and the two broken-pair states).
    """
    eps = np.asarray(eps_grid, dtype=float)
    d2 = abs(delta) ** 2
    xi = np.sqrt(eps**2 + d2)
    factor = 1.0 - 0.5 * d2 * np.tanh(beta * xi) ** 2 / xi**2
    return 0.5 + 0.5 * float(np.prod(factor))


def dos_thermal_from_gap(g0: float, delta: float, t: float) -> float:
    """``1/2 + (1/2) exp(2 g0 |D(T)| K(T))`` for given gap and temperature."""
    if delta == 0:
        return 1.0
    bd = np.inf if t == 0 else delta / t
    return 0.5 + 0.5 * float(np.exp(2 * g0 * delta * k_integral(bd)))


def dos_thermal_bcs(spec: BcsSpec, t: float, tc: float | None = None) -> float:
    return dos_thermal_from_gap(spec.g0, solve_gap_finite_t(spec, t, tc), t)


def figure1_data(g0ktc: float, points: int = 50, g0v: float = 0.2, t_max: float = 1.2) -> list[dict]:
    """Rows ``(T/T_c, D(T)/D(0), S)`` for a given ``g(0) k_B T_c``.

    The gap curve is universal in weak coupling, so ``g0v`` only sets the
    energy scale; ``g0`` is chosen so that ``g0 * T_c = g0ktc``.
    """
    if g0ktc <= 0:
        raise ValueError("g0ktc must be positive")
    if points < 1:
        raise ValueError("points must be >= 1")
    base = BcsSpec(g0v=g0v)
    tc = critical_temperature(base)
    g0 = g0ktc / tc
    delta0 = solve_gap_zero_t(base)
    rows = []
    for r in np.linspace(0.0, t_max, points):
        t = r * tc
        d = solve_gap_finite_t(base, t, tc)
        rows.append(
            {
                "t_over_tc": float(r),
                "delta_over_delta0": float(d / delta0),
                "dos": dos_thermal_from_gap(g0, d, t),
            }
        )
    return rows
