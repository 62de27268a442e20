"""Verification suites shared by the ``verify`` command and the acceptance tests.

Each suite returns a :class:`SuiteResult` whose ``metrics`` hold the raw
observed quantities, so callers can apply their own thresholds.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import bcs, bec, jordan_wigner as jw
from .operators import State, thermal_state
from .spin_models import (
    ManySpinSpec,
    build_hamiltonian,
    dos_ground_closed,
    dos_h_closed,
    dos_thermal_closed,
    ground_state,
    limit_diagnostics,
)
from .symmetry import GroupSpec, dos_hamiltonian, dos_state

KAPPA = bcs.KAPPA_COEFF
BCS_RATIO = 1.764


@dataclass
class SuiteResult:
    name: str
    passed: bool
    max_deviation: float
    tolerance: float
    metrics: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} max_deviation={self.max_deviation:.6e} tolerance={self.tolerance:.1e}"


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed), spawn_key=(stream,))))


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (a + a.conj().T)


def random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


# --- suites -----------------------------------------------------------------


def oracle_triangle(seed: int = 0, count: int = 20, nodes: int = 32, samples: int = 100_000) -> SuiteResult:
    """Pinching vs quadrature vs Monte Carlo on random operators and states, N in {1,2,3}."""
    rng = _rng(seed, 1)
    quad_dev, mc_sigma = 0.0, 0.0
    for i in range(2 * count):
        n = i % 3 + 1
        group = GroupSpec(n)
        if i < count:
            a = random_hermitian(rng, 2**n)
            fn = dos_hamiltonian
        else:
            a = State(random_density(rng, 2**n))
            fn = dos_state
        pin = fn(a, group, "pinching").value
        quad = fn(a, group, "quadrature", nodes=nodes).value
        mc = fn(a, group, "monte_carlo", samples=samples, seed=seed, stream=100 + i)
        quad_dev = max(quad_dev, abs(pin - quad))
        mc_sigma = max(mc_sigma, abs(pin - mc.value) / mc.error_estimate)
    passed = quad_dev <= 1e-8 and mc_sigma <= 4.0
    return SuiteResult("oracle-triangle", passed, quad_dev, 1e-8, {"quadrature_dev": quad_dev, "mc_max_sigma": mc_sigma})


def _closed_form_cases(rng: np.random.Generator):
    n = int(rng.integers(1, 7))
    eps, lam, mu = rng.uniform(-1, 1, 3)
    beta = float(rng.uniform(0, 3))
    return n, float(eps), float(lam), float(mu), beta


def closed_forms(seed: int = 0, count: int = 50) -> SuiteResult:
    """Every closed form against the full-matrix pinching oracle, N <= 6."""
    rng = _rng(seed, 2)
    devs: dict[str, float] = {}

    def record(key, closed, oracle):
        devs[key] = max(devs.get(key, 0.0), abs(closed - oracle))

    for _ in range(count):
        n, eps, lam, mu, beta = _closed_form_cases(rng)
        spec = ManySpinSpec(n, eps, lam, mu)
        h = build_hamiltonian(spec)
        record("spin_hamiltonian", dos_h_closed(spec), dos_hamiltonian(h).value)
        record("spin_ground", dos_ground_closed(spec), dos_state(ground_state(spec)).value)
        record("spin_thermal", dos_thermal_closed(spec, beta), dos_state(thermal_state(h, beta)).value)

        bspec = bec.BecSpec(n, eps, lam)
        hb = build_hamiltonian(bspec.spin_spec())
        gb = dos_state(ground_state(bspec.spin_spec())).value
        tb = dos_state(thermal_state(hb, beta)).value
        record("bec_hamiltonian", bec.dos_h_bec(bspec), dos_hamiltonian(hb).value)
        record("bec_ground", bec.dos_ground_bec(bspec), gb)
        record("bec_ground_from_order", bec.dos_ground_from_order(n, bec.order_parameter_zero_t(bspec)), gb)
        record("bec_thermal", bec.dos_thermal_bec(bspec, beta), tb)
        record("bec_thermal_from_order", bec.dos_thermal_bec_order(bspec, beta), tb)

        e_k = rng.uniform(-1, 1, n)
        delta = complex(*rng.uniform(-1, 1, 2))
        hs = bcs.bcs_spin_hamiltonian(e_k, delta)
        record("bcs_hamiltonian", bcs.dos_h_bcs(e_k, delta), dos_hamiltonian(hs).value)
        record("bcs_ground_modes", bcs.dos_ground_modes(e_k, delta), dos_state(thermal_state(hs, np.inf)).value)
    worst = max(devs.values())
    return SuiteResult("closed-forms", worst <= 1e-10, worst, 1e-10, devs)


def bcs_fock(seed: int = 0, count: int = 10) -> SuiteResult:
    """Finite-temperature mode product against a Gibbs state on the full Fock space (m <= 2)."""
    rng = _rng(seed, 3)
    worst = 0.0
    for i in range(count):
        m = i % 2 + 1
        ops = jw.pair_operators(m)
        group = GroupSpec(m, charges=jw.fock_charges(ops))
        eps = rng.uniform(-1, 1, m)
        delta = complex(*rng.uniform(-1, 1, 2))
        beta = float(rng.uniform(0.1, 3))
        rho = thermal_state(jw.mean_field_fock_hamiltonian(ops, eps, delta), beta)
        oracle = dos_state(rho, group, "quadrature").value
        worst = max(worst, abs(oracle - bcs.dos_thermal_modes(eps, delta, beta)))
    return SuiteResult("bcs-fock", worst <= 1e-10, worst, 1e-10, {"max_dev": worst})


def log_integral_suite() -> SuiteResult:
    val = bcs.pair_log_integral()
    dev = abs(val + KAPPA)
    return SuiteResult("appendix-a", dev <= 1e-6, dev, 1e-6, {"integral": val, "expected": -KAPPA})


K_GRID = (0.0, 0.5, 1.0, 2.0, 5.0, 50.0)


def k_integral_suite() -> SuiteResult:
    vals = [bcs.k_integral(x) for x in K_GRID]
    dev50 = abs(vals[-1] + KAPPA / 2)
    monotone = all(b <= a for a, b in zip(vals, vals[1:]))
    passed = dev50 <= 1e-4 and vals[0] == 0.0 and monotone
    return SuiteResult("k-integral", passed, dev50, 1e-4, {"values": dict(zip(K_GRID, vals)), "monotone": monotone})


def product_vs_exponential(delta0: float = 0.01, ratio: float = 100.0, m_modes: int = 400_000) -> SuiteResult:
    spec = bcs.BcsSpec(g0=1.0, hbar_omega_d=ratio * delta0, g0v=0.2, m_modes=m_modes)
    lp = np.log(2 * bcs.dos_ground_product(spec, delta0) - 1)
    le = np.log(2 * bcs.dos_ground_exponential(spec.g0, delta0) - 1)
    rel = abs(lp - le) / abs(le)
    return SuiteResult("product-vs-exp", rel <= 0.02, rel, 0.02, {"log_product": lp, "log_exponential": le})


def bcs_solver(points: int = 21) -> SuiteResult:
    spec = bcs.BcsSpec(g0v=0.15)
    ratio = bcs.solve_gap_zero_t(spec) / bcs.critical_temperature(spec)
    grid = np.linspace(0.0, 1.0, points)
    c1 = bcs.gap_curve(bcs.BcsSpec(g0v=0.1), grid)
    c2 = bcs.gap_curve(bcs.BcsSpec(g0v=0.2), grid)
    curve_dev = float(np.max(np.abs(c1.delta / c1.delta0 - c2.delta / c2.delta0)))
    ratio_dev = abs(ratio - BCS_RATIO)
    passed = ratio_dev <= 0.002 and curve_dev <= 0.005
    return SuiteResult(
        "bcs-solver", passed, max(ratio_dev, curve_dev), 0.002,
        {"ratio": ratio, "ratio_dev": ratio_dev, "curve_dev": curve_dev},
    )


def dos_curve_suite(points: int = 50) -> SuiteResult:
    metrics = {}
    worst = 0.0
    ok = True
    for g in (0.4, 0.5):
        rows = bcs.figure1_data(g, points)
        s = np.array([r["dos"] for r in rows])
        t = np.array([r["t_over_tc"] for r in rows])
        expected = 0.5 + 0.5 * np.exp(-1.840301 * BCS_RATIO * g)
        dev = abs(s[0] - expected)
        below = s[t <= 1.0]
        monotone = bool(np.all(np.diff(below) >= 0))
        restored = bool(np.all(s[t >= 1.0] == 1.0))
        metrics[g] = {"s0": float(s[0]), "expected": expected, "dev": dev, "monotone": monotone, "restored": restored}
        worst = max(worst, dev)
        ok = ok and dev <= 1e-3 and monotone and restored
    return SuiteResult("bcs-curves", ok, worst, 1e-3, metrics)


LIMIT_EPSILON = 0.1


def limits(epsilon: float = LIMIT_EPSILON) -> SuiteResult:
    big = limit_diagnostics(epsilon, [1e-3], [10**6])[0]["dos_ground"]
    small = limit_diagnostics(epsilon, [1e-8], [10])[0]["dos_ground"]
    passed = big <= 0.501 and small >= 0.999999
    dev = max(big - 0.5, 1 - small)
    return SuiteResult("limits", passed, dev, 1e-3, {"epsilon": epsilon, "n_first": big, "lambda_first": small})


def jw_suite(modes: int = 2) -> SuiteResult:
    worst = 0.0
    for m in range(1, modes + 1):
        r = jw.jw_verify(m, seed=m)
        worst = max(worst, r.commutator_deviation, r.hamiltonian_deviation)
    return SuiteResult("jw", worst <= 1e-12, worst, 1e-12, {"modes": modes})


def dicke_suite() -> SuiteResult:
    hp = [bec.hp_map_verify(n) for n in (2, 4, 20)]
    osc = [bec.displaced_oscillator_verify(a) for a in (0.0, 0.5, 2.0)]
    hp_dev = max(r.identity_deviation for r in hp)
    mean_dev = max(abs(r.mean_a + r.alpha) for r in osc)
    overlap_dev = max(1 - r.coherent_overlap for r in osc)
    comm_zero = osc[0].commutator_norm
    comm_nonzero = min(r.commutator_norm for r in osc[1:])
    passed = (
        hp_dev <= 1e-10
        and all(r.passed for r in hp)
        and mean_dev <= 1e-8
        and overlap_dev <= 1e-8
        and comm_zero <= 1e-12
        and comm_nonzero > 1e-12
    )
    return SuiteResult(
        "dicke", passed, max(hp_dev, mean_dev, overlap_dev), 1e-8,
        {"hp_dev": hp_dev, "mean_a_dev": mean_dev, "overlap_dev": overlap_dev,
         "commutator_alpha0": comm_zero, "commutator_min_nonzero": comm_nonzero},
    )


def bec_suite(seed: int = 0, count: int = 100) -> SuiteResult:
    large_n_dev = abs(bec.dos_ground_from_order(10**4, 1.0) - (0.5 + 0.5 * np.exp(-2.0)))
    rng = _rng(seed, 4)
    ident = 0.0
    for _ in range(count):
        spec = bec.BecSpec(int(rng.integers(1, 51)), float(rng.uniform(-1, 1)), float(rng.uniform(-1, 1)))
        beta = float(rng.uniform(0, 5))
        ident = max(ident, abs(bec.dos_thermal_bec(spec, beta) - bec.dos_thermal_bec_order(spec, beta)))
    passed = large_n_dev <= 2e-5 and ident <= 1e-14
    return SuiteResult("bec", passed, ident, 1e-14, {"large_n_dev": large_n_dev, "thermal_forms_dev": ident})


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "oracle-triangle": lambda seed, modes: oracle_triangle(seed),
    "closed-forms": lambda seed, modes: closed_forms(seed),
    "bcs-fock": lambda seed, modes: bcs_fock(seed),
    "appendix-a": lambda seed, modes: log_integral_suite(),
    "k-integral": lambda seed, modes: k_integral_suite(),
    "product-vs-exp": lambda seed, modes: product_vs_exponential(),
    "bcs-solver": lambda seed, modes: bcs_solver(),
    "bcs-curves": lambda seed, modes: dos_curve_suite(),
    "limits": lambda seed, modes: limits(),
    "jw": lambda seed, modes: jw_suite(modes),
    "dicke": lambda seed, modes: dicke_suite(),
    "bec": lambda seed, modes: bec_suite(seed),
}


def run_suites(names=None, seed: int = 0, modes: int = 2) -> list[SuiteResult]:
    names = list(SUITES) if not names else list(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    return [SUITES[n](seed, modes) for n in names]
