"""Collective-spin model of a condensate and its bosonic limit.

``H_B = sum_i eps sz_i + lam sx_i = 2 eps J_z + lam (J_+ + J_-)``; on the
maximal-spin (Dicke) subspace ``a = J_- / sqrt(N)`` behaves as a boson
annihilator at low excitation.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lgamma

import numpy as np
import scipy.sparse as sp

from .spin_models import ManySpinSpec

MAX_DICKE_N = 10_000


@dataclass(frozen=True)
class BecSpec:
    n: int
    epsilon: float
    lambda_: float
    fock_cutoff: int = 64

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.xi <= 0:
            raise ValueError("xi_B = sqrt(eps^2 + lam^2) must be positive")
        if self.fock_cutoff < 16:
            raise ValueError("fock_cutoff must be >= 16")

    @property
    def xi(self) -> float:
        return float(np.hypot(self.epsilon, self.lambda_))

    @property
    def sin_theta(self) -> float:
        return self.lambda_ / self.xi

    @property
    def theta(self) -> float:
        return float(np.arctan2(self.lambda_, self.epsilon))

    @property
    def eta(self) -> float:
        return 1.0 / self.n

    def spin_spec(self) -> ManySpinSpec:
        return ManySpinSpec(self.n, self.epsilon, self.lambda_, 0.0)


# --- Dicke ladder -----------------------------------------------------------


@dataclass(frozen=True)
class DickeLadder:
    """Collective operators on ``|j = N/2, m>``, basis index ``k = m + N/2``."""

    n: int
    jz: sp.csr_matrix
    jp: sp.csr_matrix
    jm: sp.csr_matrix

    @property
    def m_values(self) -> np.ndarray:
        return np.arange(self.n + 1) - self.n / 2

    @property
    def a(self) -> sp.csr_matrix:
        return self.jm / np.sqrt(self.n)

    @property
    def ad(self) -> sp.csr_matrix:
        return self.jp / np.sqrt(self.n)

    def j_squared(self) -> sp.csr_matrix:
        return self.jz @ self.jz + 0.5 * (self.jp @ self.jm + self.jm @ self.jp)


def collective_operators(n: int) -> DickeLadder:
    if not 1 <= n <= MAX_DICKE_N:
        raise ValueError(f"n must lie in [1, {MAX_DICKE_N}]")
    j = n / 2
    m = np.arange(n + 1) - j
    raise_elems = np.sqrt(j * (j + 1) - m[:-1] * (m[:-1] + 1))
    jp = sp.diags(raise_elems, -1, format="csr")  # <m+1|J+|m> sits below the diagonal
    return DickeLadder(n, sp.diags(m, 0, format="csr"), jp, jp.T.tocsr())


@dataclass
class HpReport:
    n: int
    identity_deviation: float
    low_states: int
    bound_violation: float
    tol: float = 1e-10

    @property
    def passed(self) -> bool:
        return self.identity_deviation <= self.tol and self.bound_violation <= 0.0


def hp_map_verify(n: int) -> HpReport:
    """Check ``[a, a^dag] = -eta (1 - sqrt((1+eta)^2 - 4 eta a^dag a) / eta)`` on ``J_z <= 1/2``.

    Both sides are diagonal in ``m``; the identity is compared entrywise
    together with the ``1 - 2 <a^dag a>/N`` behaviour of the commutator.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    lad = collective_operators(n)
    eta = 1.0 / n
    comm = (lad.a @ lad.ad - lad.ad @ lad.a).toarray()
    number = (lad.ad @ lad.a).diagonal()
    off = float(np.max(np.abs(comm - np.diag(np.diagonal(comm)))))
    radicand = np.maximum((1 + eta) ** 2 - 4 * eta * number, 0.0)
    rhs = -eta * (1 - np.sqrt(radicand) / eta)
    low = lad.m_values <= 0.5
    dev = max(off, float(np.max(np.abs(np.diagonal(comm)[low] - rhs[low]))))
    # |[a,a^dag] - 1| <= 2 <a^dag a>/N + 2/N for the first sqrt(N) excitations
    n_bound = int(np.sqrt(n)) + 1
    diag = np.diagonal(comm)[:n_bound]
    excess = np.abs(diag - 1) - (2 * number[:n_bound] / n + 2.0 / n)
    return HpReport(n, dev, int(low.sum()), float(max(0.0, np.max(excess))))


# --- bosonic comparison -----------------------------------------------------


def boson_operators(cutoff: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, cutoff)), 1)


class CutoffError(ValueError):
    pass


def coherent_vector(alpha: float, cutoff: int) -> np.ndarray:
    """Truncated ``e^{-a^2/2} sum a^n / sqrt(n!) |n>`` for real ``alpha``, renormalised."""
    v = np.zeros(cutoff)
    if alpha == 0:
        v[0] = 1.0
        return v
    k = np.arange(cutoff)
    log_mag = k * np.log(abs(alpha)) - 0.5 * np.array([lgamma(x + 1) for x in k]) - 0.5 * alpha**2
    v = np.sign(alpha) ** k * np.exp(log_mag)
    if _top_weight(v) > 1e-10:
        raise CutoffError(f"cutoff {cutoff} too small for coherent amplitude {alpha}")
    return v / np.linalg.norm(v)


def _ground(h: np.ndarray):
    w, v = np.linalg.eigh(h)
    return w, v[:, 0]


def _top_weight(vec: np.ndarray) -> float:
    cutoff = vec.size
    return float(np.sum(np.abs(vec[int(0.9 * cutoff) :]) ** 2))


@dataclass
class DisplacedOscillatorReport:
    alpha: float
    cutoff: int
    commutator_norm: float
    mean_a: float
    ground_energy: float
    coherent_overlap: float

    @property
    def passed(self) -> bool:
        comm_ok = self.commutator_norm <= 1e-12 if self.alpha == 0 else self.commutator_norm >= 1e-3 * abs(self.alpha)
        return (
            comm_ok
            and abs(self.mean_a + self.alpha) <= 1e-8
            and self.coherent_overlap >= 1 - 1e-8
        )


def displaced_oscillator_verify(alpha: float, cutoff: int | None = None, theta: float = np.pi / 2) -> DisplacedOscillatorReport:
    """``H = a^dag a + alpha (a + a^dag)`` on a truncated Fock space.

    Checks that ``R = exp(i theta a^dag a)`` commutes with ``H`` only for
    ``alpha = 0`` and that the ground state is the coherent state of
    amplitude ``-alpha``.
    """
    need = int(np.ceil(alpha**2 + 10 * abs(alpha) + 20))
    cutoff = need if cutoff is None else cutoff
    if cutoff < need:
        raise CutoffError(f"cutoff {cutoff} below alpha^2 + 10|alpha| + 20 = {need}")
    a = boson_operators(cutoff)
    h = a.T @ a + alpha * (a + a.T)
    r = np.diag(np.exp(1j * theta * np.arange(cutoff)))
    comm = float(np.linalg.norm(r @ h - h @ r))
    w, g = _ground(h)
    if _top_weight(g) > 1e-10:
        raise CutoffError(f"ground state leaks into the top of the {cutoff}-level space")
    coh = coherent_vector(-alpha, cutoff)
    return DisplacedOscillatorReport(
        alpha=alpha,
        cutoff=cutoff,
        commutator_norm=comm,
        mean_a=float(g @ a @ g),
        ground_energy=float(w[0]),
        coherent_overlap=float(abs(coh @ g) ** 2),
    )


@dataclass
class BosonLimitReport:
    ratio: float
    gap_spin: float
    gap_boson: float
    mean_a_spin: float
    mean_a_boson: float

    @property
    def gap_deviation(self) -> float:
        return self.gap_spin / self.gap_boson - 1

    @property
    def order_ratio(self) -> float:
        """Exact over bosonic ``<a>``; ``eps / xi_B`` in closed form."""
        if self.mean_a_boson == 0:
            return 1.0
        return self.mean_a_spin / self.mean_a_boson


def boson_limit_verify(spec: BecSpec) -> BosonLimitReport:
    """Spin model on the Dicke ladder vs ``2 eps a^dag a + lam sqrt(N) (a + a^dag)``."""
    if spec.epsilon <= 0:
        raise ValueError("bosonic limit needs eps > 0")
    lad = collective_operators(spec.n)
    h_spin = (2 * spec.epsilon * lad.jz + spec.lambda_ * (lad.jp + lad.jm)).toarray()
    w_s, g_s = _ground(h_spin)
    mean_spin = float(g_s @ lad.a.toarray() @ g_s)

    amp = spec.lambda_ * np.sqrt(spec.n) / (2 * spec.epsilon)
    cutoff = max(spec.fock_cutoff, int(np.ceil(amp**2 + 10 * abs(amp) + 20)))
    b = boson_operators(cutoff)
    h_b = 2 * spec.epsilon * b.T @ b + spec.lambda_ * np.sqrt(spec.n) * (b + b.T)
    w_b, g_b = _ground(h_b)
    if _top_weight(g_b) > 1e-10:
        raise CutoffError("bosonic ground state reaches the truncation edge")
    return BosonLimitReport(
        ratio=spec.lambda_ / spec.epsilon,
        gap_spin=float(w_s[1] - w_s[0]),
        gap_boson=float(w_b[1] - w_b[0]),
        mean_a_spin=mean_spin,
        mean_a_boson=float(g_b @ b @ g_b),
    )


# --- closed forms -----------------------------------------------------------


def dos_h_bec(spec: BecSpec) -> float:
    return 1.0 - spec.lambda_**2 / (2 * (spec.epsilon**2 + spec.lambda_**2))


def order_parameter_zero_t(spec: BecSpec) -> float:
    """``<a>_0 = -(sqrt N / 2) sin(theta)``."""
    return -0.5 * np.sqrt(spec.n) * spec.sin_theta


def dos_ground_bec(spec: BecSpec) -> float:
    """``1/2 + (1/2)(1 - lam^2 / (2 xi_B^2))^N``."""
    return 0.5 + 0.5 * (1.0 - spec.lambda_**2 / (2 * spec.xi**2)) ** spec.n


def dos_ground_from_order(n: int, a0: float) -> float:
    """``1/2 + (1/2)(1 - 2 <a>_0^2 / N)^N``."""
    return 0.5 + 0.5 * (1.0 - 2 * a0**2 / n) ** n


def dos_ground_bec_large_n(a0: float) -> float:
    return 0.5 + 0.5 * float(np.exp(-2 * a0**2))


def order_parameter_finite_t(spec: BecSpec, beta: float) -> float:
    """``<a>_T = -lam sqrt(N) tanh(beta xi_B) / (2 xi_B)``."""
    if beta < 0:
        raise ValueError("beta must be non-negative")
    return -spec.lambda_ * np.sqrt(spec.n) * np.tanh(beta * spec.xi) / (2 * spec.xi)


def _cosh_ratio(beta: float, xi: float, shift: float) -> float:
    """``(cosh(2 b xi) + shift) / cosh(2 b xi)`` without overflow."""
    x = 2 * beta * xi
    if x > 700:
        return 1.0
    c = np.cosh(x)
    return (c + shift) / c


def dos_thermal_bec(spec: BecSpec, beta: float) -> float:
    """Gibbs-state value from the couplings (the ``cosh - 1`` form)."""
    if beta < 0:
        raise ValueError("beta must be non-negative")
    base = 1.0 - spec.lambda_**2 / (2 * spec.xi**2) * _cosh_ratio(beta, spec.xi, -1.0)
    return 0.5 + 0.5 * base**spec.n


def dos_thermal_bec_order(spec: BecSpec, beta: float) -> float:
    """Same value rewritten through the finite-temperature order parameter."""
    a_t = order_parameter_finite_t(spec, beta)
    base = 1.0 - 2 * a_t**2 / spec.n * _cosh_ratio(beta, spec.xi, 1.0)
    return 0.5 + 0.5 * base**spec.n


@dataclass
class CoherentCheck:
    theta: float
    order_parameter: float
    amplitude: float
    relative_deviation: float

    @property
    def bound(self) -> float:
        return self.theta**2 / 6

    @property
    def agrees(self) -> bool:
        return self.relative_deviation <= self.bound


def coherent_ground_check(spec: BecSpec) -> CoherentCheck:
    """Compare ``<a>_0 = -sqrt(N) sin(theta)/2`` with the coherent amplitude ``-sqrt(N) theta/2``."""
    theta = spec.theta
    if abs(theta) > 0.5:
        raise ValueError("coherent-state comparison needs |theta| <= 0.5")
    a0 = order_parameter_zero_t(spec)
    alpha = -0.5 * np.sqrt(spec.n) * theta
    rel = 0.0 if theta == 0 else abs(np.sin(theta) - theta) / abs(theta)
    return CoherentCheck(theta, float(a0), float(alpha), float(rel))
