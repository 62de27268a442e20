import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dosym.numerics import (
    BracketError,
    ConvergenceError,
    find_root_bisect,
    gauss_legendre,
    integrate_semi_infinite,
)


def test_gauss_legendre_polynomial_exactness():
    assert gauss_legendre(2).integrate(lambda x: x**2) == pytest.approx(2 / 3, abs=1e-15)


def test_gauss_legendre_cosine_period():
    assert abs(gauss_legendre(16, -np.pi, np.pi).integrate(np.cos)) <= 1e-14


def test_gauss_legendre_bad_input():
    with pytest.raises(ValueError):
        gauss_legendre(0)
    with pytest.raises(ValueError):
        gauss_legendre(4, 1.0, 1.0)


def test_semi_infinite_log_integrand():
    val = integrate_semi_infinite(lambda t: np.log1p(-0.5 / (1 + t**2)), tail_coeff=-0.5, tol=1e-9)
    assert val == pytest.approx(-(2 - np.sqrt(2)) * np.pi / 2, abs=1e-6)


def test_semi_infinite_arctangent():
    val = integrate_semi_infinite(lambda t: 1 / (1 + t**2), tail_coeff=1.0, tol=1e-9)
    assert val == pytest.approx(np.pi / 2, abs=1e-8)


def test_semi_infinite_zero():
    assert integrate_semi_infinite(np.zeros_like, tail_coeff=0.0, tol=1e-9) == 0.0


def test_semi_infinite_budget_exhausted():
    with pytest.raises(ConvergenceError):
        integrate_semi_infinite(lambda t: np.sin(50 * t) ** 2 / (1 + t**2), tail_coeff=0.5, tol=1e-12, max_nodes=32)


def test_root_linear():
    res = find_root_bisect(lambda x: x - 1, 0.0, 2.0, tol=1e-12)
    assert res.converged and res.root == pytest.approx(1.0, abs=1e-10)


def test_root_inverse_sinh():
    res = find_root_bisect(lambda x: np.sinh(x) - 14.0, 1.0, 5.0, tol=1e-12)
    assert res.root == pytest.approx(np.arcsinh(14.0), abs=1e-10)
    assert res.root == pytest.approx(3.3334, abs=1e-4)


def test_root_no_sign_change():
    with pytest.raises(BracketError):
        find_root_bisect(lambda x: x**2 + 1, -1.0, 1.0, tol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(-50, 50), st.floats(0.1, 10))
def test_root_history_monotone(shift, width):
    res = find_root_bisect(lambda x: np.tanh(x - shift), shift - width, shift + 2 * width, tol=1e-13)
    assert res.converged
    assert all(b <= a for a, b in zip(res.history, res.history[1:]))
    assert abs(res.root - shift) <= 1e-10
