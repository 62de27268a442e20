import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from dosym import bcs
from dosym.operators import thermal_state
from dosym.symmetry import dos_hamiltonian, dos_state

KAPPA = (2 - np.sqrt(2)) * np.pi


def test_zero_t_gap_closed_form_and_discrete():
    spec = bcs.BcsSpec(g0v=0.3, m_modes=10_000)
    d0 = bcs.solve_gap_zero_t(spec)
    assert d0 == pytest.approx(1 / np.sinh(10 / 3), rel=1e-14)
    assert d0 == pytest.approx(0.07144, abs=1e-5)
    assert bcs.solve_gap_discrete(spec) == pytest.approx(d0, rel=1e-6)


def test_zero_t_gap_weak_coupling():
    spec = bcs.BcsSpec(g0v=0.1)
    assert bcs.solve_gap_zero_t(spec) / (2 * np.exp(-10)) == pytest.approx(1.0, rel=0.01)


def test_finite_t_gap_ends():
    spec = bcs.BcsSpec(g0v=0.2)
    tc = bcs.critical_temperature(spec)
    assert bcs.solve_gap_finite_t(spec, 0.0) == bcs.solve_gap_zero_t(spec)
    assert bcs.solve_gap_finite_t(spec, tc, tc) == 0.0
    assert bcs.solve_gap_finite_t(spec, 2 * tc, tc) == 0.0
    mid = bcs.solve_gap_finite_t(spec, 0.5 * tc, tc)
    assert 0 < mid < bcs.solve_gap_zero_t(spec)


def test_finite_t_gap_solves_equation():
    spec = bcs.BcsSpec(g0v=0.2)
    tc = bcs.critical_temperature(spec)
    t = 0.7 * tc
    d = bcs.solve_gap_finite_t(spec, t, tc)

    def integrand(e):
        en = np.hypot(e, d)
        return np.tanh(en / (2 * t)) / en

    val, _ = integrate.quad(integrand, 0, 1, points=[d, t], limit=200, epsabs=1e-12)
    assert spec.g0v * val == pytest.approx(1.0, abs=1e-9)


def test_critical_temperature_monotone():
    tcs = [bcs.critical_temperature(bcs.BcsSpec(g0v=g)) for g in (0.1, 0.15, 0.2, 0.3)]
    assert all(b > a for a, b in zip(tcs, tcs[1:]))


def test_universal_ratio():
    spec = bcs.BcsSpec(g0v=0.15)
    assert bcs.solve_gap_zero_t(spec) / bcs.critical_temperature(spec) == pytest.approx(1.764, abs=0.002)


def test_gap_curve_universality():
    grid = np.linspace(0, 1, 11)
    a = bcs.gap_curve(bcs.BcsSpec(g0v=0.1), grid)
    b = bcs.gap_curve(bcs.BcsSpec(g0v=0.2), grid)
    assert np.max(np.abs(a.delta / a.delta0 - b.delta / b.delta0)) <= 0.005


def test_dos_h_bcs_examples():
    assert bcs.dos_h_bcs([0.3, -0.2], 0.0) == 1.0
    eps = [1.0, 2.0]
    assert bcs.dos_h_bcs(eps, 1.0) == pytest.approx(0.5 + 5 / 14, abs=1e-14)
    oracle = dos_hamiltonian(bcs.bcs_spin_hamiltonian(eps, 1.0)).value
    assert oracle == pytest.approx(0.5 + 5 / 14, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**31), st.floats(0, 2 * np.pi))
def test_phase_invariance(m, seed, phi):
    rng = np.random.default_rng(seed)
    eps = rng.uniform(-1, 1, m)
    d = float(rng.uniform(0.05, 1))
    rotated = d * np.exp(1j * phi)
    h0 = dos_hamiltonian(bcs.bcs_spin_hamiltonian(eps, d)).value
    h1 = dos_hamiltonian(bcs.bcs_spin_hamiltonian(eps, rotated)).value
    assert abs(h0 - h1) <= 1e-12
    g0 = dos_state(thermal_state(bcs.bcs_spin_hamiltonian(eps, d), np.inf)).value
    g1 = dos_state(thermal_state(bcs.bcs_spin_hamiltonian(eps, rotated), np.inf)).value
    assert abs(g0 - g1) <= 1e-12
    assert abs(bcs.dos_ground_modes(eps, rotated) - g0) <= 1e-10


def test_ground_product_small_gap():
    spec = bcs.BcsSpec(m_modes=1000)
    assert bcs.dos_ground_product(spec, 0.0) == 1.0
    assert bcs.dos_ground_product(spec, 1e-9) == pytest.approx(1.0, abs=1e-8)


def test_ground_exponential_examples():
    assert bcs.dos_ground_exponential(1.0, 0.0) == 1.0
    assert bcs.dos_ground_exponential(1.0, 0.5) == pytest.approx(0.5 + 0.5 * np.exp(-0.92015), abs=1e-5)
    assert bcs.dos_ground_exponential(1.0, 0.5) == pytest.approx(0.6992, abs=1e-4)


def test_product_tracks_exponential_at_wide_shell():
    spec = bcs.BcsSpec(hbar_omega_d=1.0, m_modes=400_000)
    d0 = 0.01
    lp = np.log(2 * bcs.dos_ground_product(spec, d0) - 1)
    le = np.log(2 * bcs.dos_ground_exponential(spec.g0, d0) - 1)
    assert abs(lp - le) / abs(le) <= 0.02


def test_pair_log_integral_against_quad():
    ref, _ = integrate.quad(lambda t: np.log1p(-0.5 / (1 + t * t)), -np.inf, np.inf, epsabs=1e-12)
    assert bcs.pair_log_integral() == pytest.approx(ref, abs=1e-8)
    assert bcs.pair_log_integral() == pytest.approx(-KAPPA, abs=1e-6)


def test_k_integral_endpoints():
    assert bcs.k_integral(0.0) == 0.0
    assert bcs.k_integral(50.0) == pytest.approx(-KAPPA / 2, abs=1e-4)
    assert bcs.k_integral(np.inf) == pytest.approx(-KAPPA / 2, abs=1e-8)


def test_k_integral_golden_at_one():
    k1 = bcs.k_integral(1.0)
    assert -0.9202 < k1 < 0
    ref, _ = integrate.quad(
        lambda t: np.log1p(-0.5 * np.tanh(np.sqrt(1 + t * t)) ** 2 / (1 + t * t)), 0, np.inf, epsabs=1e-12
    )
    assert k1 == pytest.approx(ref, abs=1e-8)
    assert k1 == pytest.approx(-0.6813454380056545, abs=1e-9)


def test_k_integral_matches_cosh_form():
    # the integrand as written with k = cosh(2 x sqrt(1+t^2)), for moderate x where cosh is finite
    x = 0.8

    def original(t):
        k = np.cosh(2 * x * np.sqrt(1 + t * t))
        return np.log(1 + (-0.5 + 1 / (k + 1)) / (1 + t * t))

    with np.errstate(over="ignore"):  # cosh overflows to inf far out, where 1/(k+1) -> 0 anyway
        ref, _ = integrate.quad(original, 0, np.inf, epsabs=1e-12)
    assert bcs.k_integral(x) == pytest.approx(ref, abs=1e-8)


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 100), st.floats(0, 100))
def test_k_integral_monotone_and_bounded(a, b):
    lo, hi = sorted((a, b))
    k_lo, k_hi = bcs.k_integral(lo), bcs.k_integral(hi)
    assert k_hi <= k_lo + 1e-9
    assert -0.9202 < k_hi <= 0


def test_thermal_dos_ends():
    spec = bcs.BcsSpec(g0=5.0, g0v=0.2)
    tc = bcs.critical_temperature(spec)
    assert bcs.dos_thermal_bcs(spec, tc, tc) == 1.0
    assert bcs.dos_thermal_bcs(spec, 1.5 * tc, tc) == 1.0
    d0 = bcs.solve_gap_zero_t(spec)
    assert bcs.dos_thermal_bcs(spec, 0.0, tc) == pytest.approx(bcs.dos_ground_exponential(spec.g0, d0), abs=1e-6)


def test_thermal_modes_limits():
    eps = np.array([-0.4, 0.1, 0.7])
    assert bcs.dos_thermal_modes(eps, 0.3, 0.0) == 1.0
    assert bcs.dos_thermal_modes(eps, 0.3, 400.0) == pytest.approx(bcs.dos_ground_modes(eps, 0.3), abs=1e-14)


def test_dos_curve_shape():
    for g, s0 in ((0.4, 0.636), (0.5, 0.599)):
        rows = bcs.figure1_data(g, points=30)
        t = np.array([r["t_over_tc"] for r in rows])
        s = np.array([r["dos"] for r in rows])
        assert s[0] == pytest.approx(s0, abs=1e-3)
        assert np.all(np.diff(s[t <= 1]) >= 0)
        assert np.all(s[t >= 1] == 1.0)


def test_dos_curve_rejects_bad_input():
    with pytest.raises(ValueError):
        bcs.figure1_data(0.0)
    with pytest.raises(ValueError):
        bcs.figure1_data(0.4, points=0)
