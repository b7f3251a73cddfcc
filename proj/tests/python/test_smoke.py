import math

import numpy as np
import pytest

import cp1ent


def test_bell_state_entropy_and_kernel():
    basis = cp1ent.kernel_basis(1)
    assert len(basis) == 1
    c = basis[0]
    assert abs(abs(c[0, 0] - c[1, 1]) / math.sqrt(2) - 1) < 1e-12
    assert cp1ent.entanglement_entropy(c) == pytest.approx(math.log(2), abs=1e-14)
    assert np.allclose(cp1ent.restrict(c), 0, atol=1e-14)


def test_kernel_and_diagonal_dimensions():
    assert len(cp1ent.kernel_basis(4)) == 16
    assert len(cp1ent.diagonal_kernel_basis(5)) == 5


def test_named_vectors():
    k = 6
    assert cp1ent.entanglement_entropy(cp1ent.vector_c(k)) == pytest.approx(math.log(2), abs=1e-12)
    assert cp1ent.entanglement_entropy(cp1ent.vector_b(k)) == pytest.approx(cp1ent.vector_b_entropy_formula(k), abs=1e-12)
    assert cp1ent.entanglement_entropy(cp1ent.max_entropy_vector(5)) == pytest.approx(math.log(6), abs=1e-12)


def test_reduced_density_is_a_density_matrix():
    rng = np.random.default_rng(0)
    c = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    c /= np.linalg.norm(c)
    rho = cp1ent.reduced_density(c)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-14)
    assert np.allclose(rho, rho.conj().T)
    p = cp1ent.schmidt_coefficients(c) ** 2
    assert cp1ent.entanglement_entropy(c) == pytest.approx(-(p * np.log(p)).sum(), abs=1e-12)


def test_toeplitz_projector():
    t = cp1ent.toeplitz_matrix(1)
    assert np.allclose(t, cp1ent.kernel_projector(1), atol=1e-12)
    assert cp1ent.toeplitz_matches_projector_exactly(1)
    assert np.abs(cp1ent.toeplitz_matrix(1, offset=-1.9) - t).max() == pytest.approx(0.1, abs=1e-12)


def test_maximize_odd_level():
    r = cp1ent.maximize(3, seed=2)
    assert r.converged
    assert r.best_value == pytest.approx(math.log(4), abs=1e-9)
    assert r.best_state.shape == (4, 4)


def test_monte_carlo_against_oracle():
    e = cp1ent.mc_mean_entropy(1, 20000, seed=9)
    assert abs(e.mean - cp1ent.page_mean(2)) < 4 * e.stderr
    assert cp1ent.mc_mean_entropy(1, 20000, seed=9).mean == e.mean


def test_fit_tail_on_oracle():
    c0, c1 = cp1ent.fit_tail([(k, cp1ent.page_mean(k + 1)) for k in range(50, 1000, 100)])
    assert c0 == pytest.approx(-0.5, abs=1e-2)


def test_preconditions_raise():
    with pytest.raises(cp1ent.PreconditionError):
        cp1ent.entanglement_entropy(np.eye(2, dtype=complex))
    with pytest.raises(ValueError):
        cp1ent.kernel_basis(0)
