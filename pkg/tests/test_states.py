"""Tests for the single-qubit state algebra."""

import math

import numpy as np
import pytest

from qbackflow import (
    EigenPair,
    InvalidStateError,
    QubitState,
    binary_entropy,
    eigenvalues,
    entropy_rate,
    from_bloch,
    relative_entropy,
    to_bloch,
    trace_distance,
    von_neumann_entropy,
)
from helpers import random_state, random_unitary


def test_from_bloch_center_is_maximally_mixed():
    rho = from_bloch([0.0, 0.0, 0.0])
    assert np.allclose(rho.matrix, 0.5 * np.eye(2))


def test_from_bloch_north_pole_is_ground_projector():
    rho = from_bloch([0.0, 0.0, 1.0])
    assert np.allclose(rho.matrix, np.diag([1.0, 0.0]))


def test_from_bloch_plus_state_all_entries_half():
    rho = from_bloch([1.0, 0.0, 0.0])
    assert np.allclose(rho.matrix, 0.5 * np.ones((2, 2)))


def test_from_bloch_rejects_outside_ball():
    with pytest.raises(InvalidStateError):
        from_bloch([1.0, 1.0, 1.0])


def test_bloch_roundtrip():
    rng = np.random.default_rng(7)
    for _ in range(200):
        v = rng.normal(size=3)
        v *= rng.uniform() / np.linalg.norm(v)
        assert np.allclose(to_bloch(from_bloch(v)), v, atol=1e-14)


def test_state_validation_rejects_unphysical_matrices():
    with pytest.raises(InvalidStateError):
        QubitState([[1.0, 0.5], [0.2, 0.0]])  # not Hermitian
    with pytest.raises(InvalidStateError):
        QubitState([[0.9, 0.0], [0.0, 0.9]])  # trace != 1
    with pytest.raises(InvalidStateError):
        QubitState([[1.2, 0.0], [0.0, -0.2]])  # negative eigenvalue


def test_eigenvalues_diagonal():
    eig = eigenvalues(QubitState(np.diag([0.7, 0.3])))
    assert eig.lambda_plus == pytest.approx(0.7, abs=1e-15)
    assert eig.lambda_minus == pytest.approx(0.3, abs=1e-15)


def test_eigenvalues_pure_plus_state():
    eig = eigenvalues(from_bloch([1.0, 0.0, 0.0]))
    assert eig.lambda_plus == 1.0
    assert eig.lambda_minus == 0.0


@pytest.mark.parametrize("c", [0.1, 0.25, 0.5, 0.75, 0.99])
def test_eigenvalues_equal_diagonal_real_coherence(c):
    # rho11 = rho22 = 1/2, rho12 = c/2: closed form gives ((1+c)/2, (1-c)/2).
    m = np.array([[0.5, 0.5 * c], [0.5 * c, 0.5]], dtype=complex)
    eig = eigenvalues(QubitState(m))
    assert eig.lambda_plus == pytest.approx(0.5 * (1 + c), abs=1e-14)
    assert eig.lambda_minus == pytest.approx(0.5 * (1 - c), abs=1e-14)
    # generic Hermitian eigensolver oracle
    oracle = np.linalg.eigvalsh(m)
    assert eig.lambda_plus == pytest.approx(oracle[1], abs=1e-13)


def test_eigenvalues_match_generic_solver_on_random_states():
    rng = np.random.default_rng(11)
    for _ in range(10_000):
        rho = random_state(rng)
        eig = eigenvalues(rho)
        lo, hi = np.linalg.eigvalsh(rho.matrix)
        assert abs(eig.lambda_plus - hi) <= 1e-12
        assert abs(eig.lambda_minus - lo) <= 1e-12
        assert eig.lambda_plus + eig.lambda_minus == 1.0
        assert eig.lambda_plus >= eig.lambda_minus


def test_eigenvalues_negative_discriminant_rejected():
    # bypass constructor validation: only non-unit-trace garbage can push
    # the discriminant negative, which is exactly what the guard flags
    bad = QubitState(np.diag([1.0, 1.0]), validate=False)
    with pytest.raises(InvalidStateError):
        eigenvalues(bad)


def test_entropy_maximally_mixed_is_one():
    assert von_neumann_entropy(from_bloch([0.0, 0.0, 0.0])) == 1.0


def test_entropy_pure_states_zero():
    # exactly zero on the axes, where the Bloch norm is exact in floats
    assert von_neumann_entropy(from_bloch([1.0, 0.0, 0.0])) == 0.0
    assert von_neumann_entropy(from_bloch([0.0, 0.0, -1.0])) == 0.0
    rng = np.random.default_rng(3)
    for _ in range(50):
        assert von_neumann_entropy(random_state(rng, pure=True)) <= 1e-12


def test_entropy_frozen_value():
    # high-precision scalar oracle: -(0.9 log2 0.9 + 0.1 log2 0.1)
    rho = QubitState(np.diag([0.9, 0.1]))
    assert von_neumann_entropy(rho) == pytest.approx(0.468995593589281221, abs=1e-15)


def test_entropy_bounds_and_unitary_invariance():
    rng = np.random.default_rng(5)
    for _ in range(500):
        rho = random_state(rng)
        s = von_neumann_entropy(rho)
        assert 0.0 <= s <= 1.0
        u = random_unitary(rng)
        rotated = QubitState(u @ rho.matrix @ u.conj().T)
        assert abs(von_neumann_entropy(rotated) - s) <= 1e-12


def test_relative_entropy_self_is_zero():
    rng = np.random.default_rng(13)
    for _ in range(50):
        rho = random_state(rng)
        assert relative_entropy(rho, rho) <= 1e-13


def test_relative_entropy_against_maximally_mixed():
    # S(rho || I/2) = 1 - S(rho)
    rng = np.random.default_rng(17)
    mixed = from_bloch([0.0, 0.0, 0.0])
    for _ in range(200):
        rho = random_state(rng)
        lhs = relative_entropy(rho, mixed)
        assert abs(lhs - (1.0 - von_neumann_entropy(rho))) <= 1e-12


def test_relative_entropy_ground_vs_mixed_is_one_bit():
    rho = from_bloch([0.0, 0.0, 1.0])
    sigma = QubitState(np.diag([0.5, 0.5]))
    assert relative_entropy(rho, sigma) == pytest.approx(1.0, abs=1e-14)


def test_relative_entropy_support_violation_is_infinite():
    plus = from_bloch([1.0, 0.0, 0.0])
    ground = from_bloch([0.0, 0.0, 1.0])
    assert relative_entropy(plus, ground) == math.inf


def test_entropy_rate_degenerate_spectrum_is_zero():
    assert entropy_rate(EigenPair(0.5, 0.5), 123.0) == 0.0


def test_entropy_rate_frozen_value():
    # 0.1 * log2(1/9)
    rate = entropy_rate(EigenPair(0.9, 0.1), 0.1)
    assert rate == pytest.approx(-0.316992500144231236, abs=1e-15)
    assert rate < 0.0


def test_entropy_rate_stationary_is_zero():
    assert entropy_rate(EigenPair(0.8, 0.2), 0.0) == 0.0


def test_entropy_rate_sign_opposite_to_eigenvalue_drift():
    rng = np.random.default_rng(19)
    for _ in range(100):
        lam = rng.uniform(0.5 + 1e-6, 1.0 - 1e-9)
        dl = rng.normal()
        rate = entropy_rate(EigenPair(lam, 1.0 - lam), dl)
        assert np.sign(rate) == -np.sign(dl)


def test_entropy_rate_matches_finite_differences_along_path():
    # smooth eigenvalue path; centered differences of the entropy converge
    # at O(h^2) to the closed-form rate
    def lam(u):
        return 0.7 + 0.1 * math.sin(u)

    def dlam(u):
        return 0.1 * math.cos(u)

    for u in np.linspace(0.0, 6.0, 25):
        rate = entropy_rate(EigenPair(lam(u), 1 - lam(u)), dlam(u))
        h = 1e-5
        fd = (binary_entropy(lam(u + h)) - binary_entropy(lam(u - h))) / (2 * h)
        assert rate == pytest.approx(fd, abs=5e-9)


def test_trace_distance_identical_states():
    rng = np.random.default_rng(23)
    rho = random_state(rng)
    assert trace_distance(rho, rho) == 0.0


def test_trace_distance_orthogonal_pure_states():
    up = from_bloch([0.0, 0.0, 1.0])
    down = from_bloch([0.0, 0.0, -1.0])
    assert trace_distance(up, down) == pytest.approx(1.0, abs=1e-15)


def test_trace_distance_matches_eigenvalue_sum_oracle():
    rng = np.random.default_rng(29)
    mixed = from_bloch([0.0, 0.0, 0.0])
    ground = from_bloch([0.0, 0.0, 1.0])
    assert trace_distance(mixed, ground) == pytest.approx(0.5, abs=1e-15)
    for _ in range(200):
        rho, sigma = random_state(rng), random_state(rng)
        oracle = 0.5 * np.sum(np.abs(np.linalg.eigvalsh(rho.matrix - sigma.matrix)))
        assert trace_distance(rho, sigma) == pytest.approx(oracle, abs=1e-12)


def test_binary_entropy_endpoints():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == 1.0
