"""Ohmic-family bath spectral density and the dephasing exponent.

The decoherence exponent Gamma(t) = 4 * int_0^inf J(w) (1-cos wt)/w^2 dw
and its time derivative gamma(t) = 4 * int_0^inf J(w) sin(wt)/w dw are
computed by adaptive Gauss-Kronrod quadrature on panels aligned to the
half-period pi/t of the oscillatory factor.  Temperature is fixed at zero;
there is no thermal factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .exceptions import QuadratureConvergenceError


@dataclass(frozen=True)
class SpectralParams:
    """Ohmic-like spectral density J(w) = omega_c**(1-s) * w**s * exp(-w/omega_c).

    ``s`` is the Ohmicity (sub-Ohmic s < 1, Ohmic s = 1, super-Ohmic
    s > 1) and ``omega_c`` the cutoff frequency.
    """

    s: float
    omega_c: float = 1.0

    def __post_init__(self):
        if not self.s > 0.0:
            raise ValueError(f"Ohmicity parameter must be positive, got {self.s}")
        if not self.omega_c > 0.0:
            raise ValueError(f"cutoff frequency must be positive, got {self.omega_c}")


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and upper cutoff for the spectral quadrature.

    The improper integral is truncated at ``omega_max_factor * omega_c``;
    the integrand decays like exp(-w/omega_c), so a factor of 40 puts the
    discarded tail near 4e-18 relative.
    """

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    omega_max_factor: float = 40.0

    def __post_init__(self):
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0):
            raise ValueError("quadrature tolerances must be positive")
        if not self.omega_max_factor >= 20.0:
            raise ValueError("omega_max_factor must be at least 20")


DEFAULT_QUADRATURE = QuadratureConfig()

#: Tight configuration used where endpoint refinement differentiates
#: nearly-equal values of the trajectory (bisection on slope signs).
REFINEMENT_QUADRATURE = QuadratureConfig(rel_tol=1e-12, abs_tol=1e-14)


def j_omega(params: SpectralParams, omega):
    """Spectral density J(w); vanishes at w = 0 and peaks near s*omega_c."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0.0):
        raise ValueError("frequencies must be nonnegative")
    s, wc = params.s, params.omega_c
    with np.errstate(divide="ignore"):
        out = wc ** (1.0 - s) * omega**s * np.exp(-omega / wc)
    out = np.where(omega == 0.0, 0.0, out)
    return float(out) if out.ndim == 0 else out


def _run_quad(kind, params, times, config):
    times = np.asarray(times, dtype=float)
    if np.any(times < 0.0):
        raise ValueError("times must be nonnegative")
    values, errors, converged = kernels.phase_damping_quad(
        kind,
        params.s,
        params.omega_c,
        times,
        config.omega_max_factor * params.omega_c,
        config.rel_tol,
        config.abs_tol,
    )
    if not np.all(converged):
        worst = float(np.max(errors[~converged]))
        raise QuadratureConvergenceError(
            f"spectral quadrature did not converge to rel_tol={config.rel_tol}, "
            f"abs_tol={config.abs_tol}; worst achieved error estimate {worst:.3e}",
            achieved_error=worst,
        )
    return values, errors


def gamma_big_grid(params: SpectralParams, times, config: QuadratureConfig = DEFAULT_QUADRATURE) -> np.ndarray:
    """Decoherence exponent Gamma(t) on an array of times."""
    values, _ = _run_quad(kernels.KIND_EXPONENT, params, times, config)
    return values


def gamma_big(params: SpectralParams, t: float, config: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Decoherence exponent Gamma(t) >= 0, with Gamma(0) = 0."""
    return float(gamma_big_grid(params, np.array([t]), config)[0])


def gamma_rate_grid(params: SpectralParams, times, config: QuadratureConfig = DEFAULT_QUADRATURE) -> np.ndarray:
    """Dephasing rate gamma(t) = dGamma/dt on an array of times."""
    values, _ = _run_quad(kernels.KIND_RATE, params, times, config)
    return values


def gamma_rate(params: SpectralParams, t: float, config: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Dephasing rate gamma(t); negative values open non-Markovian windows."""
    return float(gamma_rate_grid(params, np.array([t]), config)[0])
