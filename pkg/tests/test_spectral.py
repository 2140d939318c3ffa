"""Tests for the spectral density and the quadrature-based exponent/rate."""

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import gamma as euler_gamma

from qbackflow import (
    QuadratureConfig,
    QuadratureConvergenceError,
    SpectralParams,
    gamma_big,
    gamma_big_grid,
    gamma_rate,
    gamma_rate_grid,
    j_omega,
)


def gamma_closed_form(s, t):
    """Independent oracle: the Mellin/Laplace closed form at omega_c = 1.

    4*Gamma(s-1)*(1 - (1+t^2)^(-(s-1)/2) * cos((s-1)*atan t)) for s != 1,
    and 2*ln(1+t^2) at s = 1.
    """
    t = np.asarray(t, dtype=float)
    if s == 1.0:
        return 2.0 * np.log1p(t * t)
    return 4.0 * euler_gamma(s - 1.0) * (
        1.0 - (1.0 + t * t) ** (-(s - 1.0) / 2.0) * np.cos((s - 1.0) * np.arctan(t))
    )


def rate_closed_form(s, t):
    """4*Gamma(s)*(1+t^2)^(-s/2) * sin(s*atan t) at omega_c = 1."""
    t = np.asarray(t, dtype=float)
    return 4.0 * euler_gamma(s) * (1.0 + t * t) ** (-s / 2.0) * np.sin(s * np.arctan(t))


# ---------------------------------------------------------------------------
# spectral density
# ---------------------------------------------------------------------------


def test_j_omega_ohmic_at_cutoff():
    params = SpectralParams(s=1.0, omega_c=2.0)
    assert j_omega(params, 2.0) == pytest.approx(2.0 * np.exp(-1.0), rel=1e-14)


def test_j_omega_vanishes_at_zero():
    for s in (0.5, 1.0, 3.0):
        assert j_omega(SpectralParams(s=s), 0.0) == 0.0


def test_j_omega_argmax_near_s_omega_c():
    # dense grid scan oracle: maximum of w^s e^-w sits at w = s
    params = SpectralParams(s=3.0, omega_c=1.0)
    grid = np.linspace(0.0, 20.0, 200001)
    argmax = grid[np.argmax(j_omega(params, grid))]
    assert argmax == pytest.approx(3.0, abs=1e-3)


def test_j_omega_rejects_negative_frequency():
    with pytest.raises(ValueError):
        j_omega(SpectralParams(s=1.0), -0.5)


def test_params_validation():
    with pytest.raises(ValueError):
        SpectralParams(s=0.0)
    with pytest.raises(ValueError):
        SpectralParams(s=1.0, omega_c=-1.0)
    with pytest.raises(ValueError):
        QuadratureConfig(rel_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureConfig(omega_max_factor=10.0)


# ---------------------------------------------------------------------------
# decoherence exponent Gamma(t)
# ---------------------------------------------------------------------------


def test_gamma_big_zero_time():
    assert gamma_big(SpectralParams(s=2.0), 0.0) == 0.0


def test_gamma_big_ohmic_closed_form():
    params = SpectralParams(s=1.0, omega_c=1.0)
    ts = np.linspace(0.0, 50.0, 200)
    values = gamma_big_grid(params, ts)
    oracle = gamma_closed_form(1.0, ts)
    assert np.all(np.abs(values - oracle) <= 1e-6 * (1.0 + np.abs(oracle)))


@pytest.mark.parametrize("s", [0.5, 1.5, 2.5, 3.0, 4.0, 5.0])
def test_gamma_big_matches_closed_form(s):
    params = SpectralParams(s=s, omega_c=1.0)
    ts = np.array([0.1, 0.5, 1.0, 2.0, 5.0, 10.0])
    values = gamma_big_grid(params, ts)
    oracle = gamma_closed_form(s, ts)
    assert np.max(np.abs(values - oracle) / (1.0 + np.abs(oracle))) <= 1e-6


@pytest.mark.parametrize("s,t", [(0.5, 3.0), (3.0, 7.0)])
def test_gamma_big_matches_scipy_quad(s, t):
    params = SpectralParams(s=s, omega_c=1.0)

    def integrand(w):
        return 4.0 * w ** (s - 2.0) * (1.0 - np.cos(w * t)) * np.exp(-w)

    oracle, _ = quad(integrand, 0.0, 40.0, limit=400)
    assert gamma_big(params, t) == pytest.approx(oracle, rel=1e-6)


def test_gamma_big_nonnegative_and_super_ohmic_non_monotone():
    ts = np.linspace(0.0, 10.0, 2000)
    values = gamma_big_grid(SpectralParams(s=3.0), ts)
    assert np.all(values >= 0.0)
    diffs = np.diff(values)
    assert np.any(diffs > 0.0) and np.any(diffs < -1e-8)  # rises, then decays
    # it decays toward the asymptote 4*Gamma(2) = 4 from above
    assert values[-1] > 4.0
    assert values[-1] < np.max(values)


def test_gamma_scaling_in_omega_c_times_t():
    # Gamma depends on (s, omega_c * t) only
    ts = np.array([0.3, 1.0, 4.0])
    for s in (0.5, 3.0):
        a = gamma_big_grid(SpectralParams(s=s, omega_c=2.5), ts)
        b = gamma_big_grid(SpectralParams(s=s, omega_c=1.0), 2.5 * ts)
        assert np.max(np.abs(a - b) / (1.0 + np.abs(b))) <= 1e-7


# ---------------------------------------------------------------------------
# dephasing rate gamma(t)
# ---------------------------------------------------------------------------


def test_gamma_rate_zero_time():
    assert gamma_rate(SpectralParams(s=3.0), 0.0) == 0.0


def test_gamma_rate_ohmic_closed_form_nonnegative():
    params = SpectralParams(s=1.0, omega_c=1.0)
    ts = np.linspace(0.0, 50.0, 200)
    values = gamma_rate_grid(params, ts)
    oracle = 4.0 * ts / (1.0 + ts * ts)
    assert np.max(np.abs(values - oracle)) <= 1e-8
    assert np.all(values >= 0.0)


@pytest.mark.parametrize("s", [0.5, 2.0, 3.0, 4.0])
def test_gamma_rate_matches_closed_form(s):
    ts = np.array([0.2, 1.0, 2.0, 5.0, 10.0])
    values = gamma_rate_grid(SpectralParams(s=s), ts)
    oracle = rate_closed_form(s, ts)
    assert np.max(np.abs(values - oracle)) <= 1e-8 * (1.0 + np.max(np.abs(oracle)))


def test_gamma_rate_is_derivative_of_gamma_big():
    h = 1e-4
    for s in (0.5, 1.0, 3.0):
        params = SpectralParams(s=s)
        for t in (0.5, 2.0, 10.0, 40.0):
            fd = (gamma_big(params, t + h) - gamma_big(params, t - h)) / (2.0 * h)
            rate = gamma_rate(params, t)
            assert abs(rate - fd) <= max(1e-6, 1e-4 * abs(rate))


def test_gamma_rate_negative_window_super_ohmic():
    # s = 3: the rate changes sign at t = tan(pi/3) = sqrt(3) and stays
    # negative afterwards (the non-Markovian window)
    params = SpectralParams(s=3.0)
    assert gamma_rate(params, 1.0) > 0.0
    assert gamma_rate(params, 2.0) < 0.0
    assert gamma_rate(params, 8.0) < 0.0


def test_quadrature_convergence_error_reports_estimate():
    params = SpectralParams(s=0.5)
    config = QuadratureConfig(rel_tol=1e-15, abs_tol=1e-18)
    with pytest.raises(QuadratureConvergenceError) as excinfo:
        gamma_big(params, 7.0, config)
    assert np.isfinite(excinfo.value.achieved_error)
    assert excinfo.value.achieved_error > 0.0
