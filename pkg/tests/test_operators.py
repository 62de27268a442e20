import numpy as np
import pytest

from dosym.operators import (
    PAULI,
    DimensionError,
    InvalidStateError,
    NotHermitianError,
    Operator,
    State,
    frobenius_norm,
    hermitian_exp,
    identity,
    pauli,
    rebias,
    tensor,
    thermal_state,
)


def test_pauli_single_site_z():
    assert pauli("z", 0, 1).allclose(np.diag([1, -1]))


def test_pauli_second_site_is_block_diagonal():
    expected = np.kron(np.eye(2), PAULI["x"])
    assert pauli("x", 1, 2).allclose(expected)


def test_pauli_rejects_bad_axis_and_site():
    with pytest.raises(ValueError):
        pauli("w", 0, 1)
    with pytest.raises(IndexError):
        pauli("x", 2, 2)


def test_tensor_identities():
    assert tensor(identity(2), identity(2)).allclose(np.eye(4))
    assert tensor(PAULI["z"], PAULI["z"]).allclose(np.diag([1, -1, -1, 1]))


def test_tensor_trace_factorises(rng):
    a = rng.normal(size=(3, 3))
    b = rng.normal(size=(4, 4))
    t = tensor(a, b)
    assert abs(t.trace() - np.trace(a) * np.trace(b)) <= 1e-12


def test_tensor_rejects_non_square():
    with pytest.raises(ValueError):
        tensor(np.zeros((4, 3)), np.eye(2))


def test_tensor_dimension_cap():
    big = identity(64)
    with pytest.raises(DimensionError):
        tensor(big, identity(128))


def test_frobenius_norm_values():
    assert frobenius_norm(identity(2)) == pytest.approx(np.sqrt(2))
    assert frobenius_norm(pauli("x", 1, 3)) == pytest.approx(np.sqrt(8))
    assert frobenius_norm(np.zeros((2, 2))) == 0


def test_rebias_removes_mean():
    assert rebias(np.diag([2.0, 0.0])).allclose(np.diag([1.0, -1.0]))
    x = pauli("x", 0, 2)
    assert rebias(x).allclose(x)


def test_hermitian_exp_diagonal_and_zero():
    beta = 0.7
    assert hermitian_exp(PAULI["z"], -beta).allclose(np.diag([np.exp(-beta), np.exp(beta)]))
    assert hermitian_exp(PAULI["x"], 0.0).allclose(np.eye(2))


def test_hermitian_exp_trace():
    tr = hermitian_exp(PAULI["x"], -1.0).trace()
    assert tr.real == pytest.approx(2 * np.cosh(1.0), abs=1e-12)
    assert tr.real == pytest.approx(3.08616, abs=1e-5)


def test_hermitian_exp_requires_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_exp(np.array([[0, 1], [0, 0]]), 1.0)


def test_thermal_state_limits(rng):
    h = rng.normal(size=(4, 4))
    h = h + h.T
    assert np.allclose(thermal_state(h, 0.0).rho, np.eye(4) / 4)
    cold = thermal_state(PAULI["z"], np.inf)
    assert np.allclose(cold.rho, np.diag([0, 1]))
    assert np.allclose(thermal_state(PAULI["z"], 200.0).rho, np.diag([0, 1]), atol=1e-12)


def test_thermal_state_rejects_negative_beta():
    with pytest.raises(ValueError):
        thermal_state(PAULI["z"], -1.0)


def test_state_validation():
    with pytest.raises(InvalidStateError):
        State(np.diag([0.7, 0.7]))
    with pytest.raises(InvalidStateError):
        State(np.diag([1.5, -0.5]))
    plus = State.from_vector(np.array([1, 1]) / np.sqrt(2))
    assert plus.purity() == pytest.approx(1.0)
    assert plus.expect(PAULI["x"]).real == pytest.approx(1.0)


def test_operator_flags():
    assert Operator(PAULI["y"]).hermitian is True
    assert Operator(np.array([[0, 1], [0, 0]])).hermitian is False
    with pytest.raises(NotHermitianError):
        Operator(np.array([[0, 1], [0, 0]]), hermitian=True)
