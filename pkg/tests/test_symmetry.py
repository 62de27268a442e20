import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from conftest import random_density, random_hermitian
from dosym.numerics import gauss_legendre
from dosym.operators import PAULI, embed, pauli, rebias, frobenius_norm
from dosym.symmetry import (
    GroupSpec,
    SO2ProductElement,
    UndefinedDosError,
    dos_hamiltonian,
    dos_state,
    group_average_monte_carlo,
    group_average_pinching,
    group_average_quadrature,
    representation,
)


def test_representation_identity_and_phase():
    assert representation(SO2ProductElement((0.0, 0.0, 0.0))).allclose(np.eye(8))
    r = representation(SO2ProductElement((-np.pi,)))
    assert r.allclose(np.diag([1j, -1j]))  # omega = -pi is the in-range image of pi


def test_element_angle_range():
    with pytest.raises(ValueError):
        SO2ProductElement((np.pi,))


def test_dos_commuting_hamiltonian_is_one():
    for n in (1, 2, 3):
        h = sum(pauli("z", i, n).matrix for i in range(n))
        assert dos_hamiltonian(h).value == pytest.approx(1.0, abs=1e-14)


def test_dos_sigma_x_is_half():
    assert dos_hamiltonian(PAULI["x"]).value == pytest.approx(0.5, abs=1e-14)


def test_dos_two_site_methods_agree():
    h = embed(PAULI["z"], 0, 2) + embed(PAULI["x"], 1, 2)
    p = dos_hamiltonian(h).value
    q = dos_hamiltonian(h, method="quadrature").value
    assert abs(p - q) <= 1e-8


def test_dos_undefined_for_identity():
    with pytest.raises(UndefinedDosError):
        dos_hamiltonian(3 * np.eye(4))


def test_dos_state_examples(rng):
    assert dos_state(np.diag(rng.dirichlet(np.ones(4)))).value == pytest.approx(1.0)
    plus = np.array([1, 1]) / np.sqrt(2)
    assert dos_state(plus).value == pytest.approx(0.75)


def test_quadrature_examples():
    g = GroupSpec(1)
    assert group_average_quadrature(PAULI["z"], g) == pytest.approx(2.0, abs=1e-12)
    assert abs(group_average_quadrature(PAULI["x"], g)) <= 1e-12
    const = lambda r: np.full(r.shape[0], 0.3)
    assert group_average_quadrature(const, GroupSpec(2), 5) == pytest.approx(0.3)
    assert group_average_quadrature(const, GroupSpec(2), 17) == pytest.approx(0.3)


def test_monte_carlo_examples():
    g = GroupSpec(1)
    mean, err = group_average_monte_carlo(lambda r: np.full(r.shape[0], 0.7), g, 1000, seed=1)
    assert mean == pytest.approx(0.7) and err == 0.0
    mean, err = group_average_monte_carlo(PAULI["x"], g, 100_000, seed=3)
    assert abs(mean) <= 4 * err
    again = group_average_monte_carlo(PAULI["x"], g, 100_000, seed=3)
    assert again == (mean, err)


def test_monte_carlo_requires_samples():
    with pytest.raises(ValueError):
        group_average_monte_carlo(PAULI["x"], GroupSpec(1), 10, seed=0)


def test_pinching_examples(rng):
    d = rng.normal(size=4)
    assert group_average_pinching(np.diag(d)) == pytest.approx(np.sum(d**2))
    assert group_average_pinching(PAULI["x"]) == 0.0


def test_pinching_matches_quadrature_random(rng):
    h = random_hermitian(rng, 8)
    g = GroupSpec(3)
    assert abs(group_average_pinching(h, g) - group_average_quadrature(h, g, 32)) <= 1e-8


def test_pinching_degenerate_charges_keep_sector_blocks(rng):
    # one angle acting on two qubits at once: charges (1, 0, 0, -1)
    g = GroupSpec(1, charges=np.array([[1.0, 0.0, 0.0, -1.0]]))
    h = random_hermitian(rng, 4)
    assert abs(group_average_pinching(h, g) - group_average_quadrature(h, g, 32)) <= 1e-10


def test_pinching_rejects_fractional_charge_gaps():
    g = GroupSpec(1, charges=np.array([[0.0, 0.5]]))
    with pytest.raises(ValueError):
        group_average_pinching(np.eye(2), g)


def _conjugated_average(h, u, nodes=16):
    """Average of Re Tr(R'^dag H' R' H') with H' = U H U^dag and R' = U R U^dag."""
    n = int(np.log2(h.shape[0]))
    rule = gauss_legendre(nodes, -np.pi, np.pi)
    hp = u @ h @ u.conj().T
    total = 0.0
    for idx in itertools.product(range(nodes), repeat=n):
        om = rule.nodes[list(idx)]
        w = np.prod(rule.weights[list(idx)]) / (2 * np.pi) ** n
        rp = u @ representation(SO2ProductElement(tuple(om))).matrix @ u.conj().T
        total += w * np.trace(rp.conj().T @ hp @ rp @ hp).real
    return total


@pytest.mark.parametrize("n", [1, 2])
def test_basis_independence(rng, n):
    h = rebias(random_hermitian(rng, 2**n)).matrix
    u = unitary_group.rvs(2**n, random_state=7)
    conj = 0.5 + _conjugated_average(h, u) / (2 * frobenius_norm(h) ** 2)
    assert abs(conj - dos_hamiltonian(h).value) <= 1e-10


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2**31), st.floats(-100, 100))
def test_zero_point_and_scaling(n, seed, c):
    h = random_hermitian(np.random.default_rng(seed), 2**n)
    base = dos_hamiltonian(h).value
    assert abs(dos_hamiltonian(h + c * np.eye(2**n)).value - base) <= 1e-12
    if abs(c) > 1e-3:
        assert abs(dos_hamiltonian(c * h).value - base) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2**31))
def test_ranges(n, seed):
    r = np.random.default_rng(seed)
    assert 0 <= dos_hamiltonian(random_hermitian(r, 2**n)).value <= 1
    assert 0.5 - 1e-12 <= dos_state(random_density(r, 2**n)).value <= 1 + 1e-12
