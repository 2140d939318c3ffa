"""Time-indexed dephasing families used by the measure and the CLI.

Both model families are unital pure-dephasing maps: the Bloch action at
time t is diag(q(t), q(t), 1) with a real coherence factor q(t) (|q| <= 1,
q(0) = 1).  For an initial Bloch vector (x, y, z) this gives

    lambda_plus(t) = (1 + sqrt(z^2 + q(t)^2 * (x^2 + y^2))) / 2,

so the witness eta_plus = d lambda_plus / dt follows q * dq/dt by the
chain rule; the larger eigenvalue rises exactly where q^2 does.
"""

from __future__ import annotations

import numpy as np

from . import measure as _measure
from .channels import (
    AffineMap,
    ColoredNoiseParams,
    KrausChannel,
    colored_noise_channel,
    dephasing_channel,
    lambda_of_nu,
    lambda_rate_of_nu,
)
from .spectral import (
    DEFAULT_QUADRATURE,
    REFINEMENT_QUADRATURE,
    QuadratureConfig,
    SpectralParams,
    gamma_big_grid,
    gamma_rate_grid,
)
from .states import binary_entropy, entropy_rate_series


class DephasingFamilyBase:
    """Shared machinery for unital pure-dephasing families.

    Subclasses provide ``coherence_factor`` / ``coherence_factor_rate``
    (q and dq/dt on a time grid) plus a named per-time diagnostic.
    """

    diagnostic_name: str = "diagnostic"

    # -- subclass surface -------------------------------------------------
    def coherence_factor(self, times) -> np.ndarray:
        raise NotImplementedError

    def coherence_factor_rate(self, times) -> np.ndarray:
        raise NotImplementedError

    def diagnostic(self, times) -> np.ndarray:
        raise NotImplementedError

    def kraus_at(self, t: float) -> KrausChannel:
        raise NotImplementedError

    # -- common machinery --------------------------------------------------
    def affine_at(self, t: float) -> AffineMap:
        q = float(self.coherence_factor(np.array([t]))[0])
        return AffineMap(np.zeros(3), np.diag([q, q, 1.0]))

    @staticmethod
    def _split_bloch(bloch):
        b = np.asarray(bloch, dtype=float)
        z = b[..., 2]
        rxy_sq = b[..., 0] ** 2 + b[..., 1] ** 2
        return z, rxy_sq

    def lambda_plus(self, bloch, times) -> np.ndarray:
        z, rxy_sq = self._split_bloch(bloch)
        q = self.coherence_factor(times)
        return 0.5 * (1.0 + np.sqrt(z * z + q * q * rxy_sq))

    def lambda_plus_matrix(self, blochs, times) -> np.ndarray:
        """lambda_plus for many initial states at once, shape (n_states, n_times)."""
        z, rxy_sq = self._split_bloch(np.atleast_2d(blochs))
        q_sq = self.coherence_factor(times) ** 2
        return 0.5 * (1.0 + np.sqrt(z[:, None] ** 2 + q_sq[None, :] * rxy_sq[:, None]))

    def eta_plus(self, bloch, times) -> np.ndarray:
        """d lambda_plus / dt, closed form through q and dq/dt."""
        z, rxy_sq = self._split_bloch(bloch)
        q = self.coherence_factor(times)
        qdot = self.coherence_factor_rate(times)
        root = np.sqrt(z * z + q * q * rxy_sq)
        with np.errstate(divide="ignore", invalid="ignore"):
            eta = 0.5 * q * qdot * rxy_sq / root
        # The eigenvalues cross at root = 0 and the derivative is a kink;
        # report 0 there rather than NaN.
        return np.where(root > 0.0, eta, 0.0)

    def trajectory(self, bloch, times) -> "_measure.Trajectory":
        times = np.asarray(times, dtype=float)
        lam = self.lambda_plus(bloch, times)
        eta = self.eta_plus(bloch, times)
        return _measure.Trajectory(
            times=times,
            lambda_plus=lam,
            entropy=binary_entropy(lam),
            eta_plus=eta,
        )

    def entropy_rate_series(self, bloch, times) -> np.ndarray:
        lam = self.lambda_plus(bloch, times)
        return entropy_rate_series(lam, self.eta_plus(bloch, times))

    def lambda_plus_fn(self, bloch):
        """Scalar-time evaluator of lambda_plus, for endpoint refinement."""

        def fn(t: float) -> float:
            return float(self.lambda_plus(bloch, np.array([t]))[0])

        return fn

    def entropy_fn(self, bloch):
        """Scalar-time evaluator of the entropy, for endpoint refinement."""

        def fn(t: float) -> float:
            return float(binary_entropy(self.lambda_plus(bloch, np.array([t]))[0]))

        return fn


class OhmicDephasingFamily(DephasingFamilyBase):
    """Pure dephasing against an Ohmic-like bosonic bath at zero temperature.

    The coherence factor is exp(-Gamma(t)) with Gamma from the spectral
    quadrature.  Grids are memoized because trajectory construction,
    optimization and the CLI repeatedly evaluate the same time grid.

    ``refinement_quadrature`` (tighter than the main config) backs the
    scalar evaluators used for bisection refinement, where neighboring
    values must be resolved far below the interval gains.
    """

    diagnostic_name = "gamma_rate"

    def __init__(
        self,
        params: SpectralParams,
        quadrature: QuadratureConfig = DEFAULT_QUADRATURE,
        refinement_quadrature: QuadratureConfig = REFINEMENT_QUADRATURE,
    ):
        self.params = params
        self.quadrature = quadrature
        self.refinement_quadrature = refinement_quadrature
        self._cache: dict = {}

    def _grids(self, times):
        times = np.asarray(times, dtype=float)
        key = (times.shape, times.tobytes())
        hit = self._cache.get(key)
        if hit is None:
            gamma = gamma_big_grid(self.params, times, self.quadrature)
            rate = gamma_rate_grid(self.params, times, self.quadrature)
            hit = (np.exp(-gamma), rate)
            self._cache = {key: hit}  # keep at most one grid
        return hit

    def decoherence_exponent(self, times) -> np.ndarray:
        """Gamma(t) on a time grid."""
        return gamma_big_grid(self.params, np.asarray(times, dtype=float), self.quadrature)

    def coherence_factor(self, times) -> np.ndarray:
        return self._grids(times)[0]

    def coherence_factor_rate(self, times) -> np.ndarray:
        q, rate = self._grids(times)
        return -rate * q

    def diagnostic(self, times) -> np.ndarray:
        return self._grids(times)[1]

    def kraus_at(self, t: float) -> KrausChannel:
        gamma = float(gamma_big_grid(self.params, np.array([t]), self.quadrature)[0])
        return dephasing_channel(max(gamma, 0.0))

    def lambda_plus_fn(self, bloch):
        z, rxy_sq = self._split_bloch(bloch)

        def fn(t: float) -> float:
            gamma = gamma_big_grid(self.params, np.array([t]), self.refinement_quadrature)[0]
            q = np.exp(-gamma)
            return float(0.5 * (1.0 + np.sqrt(z * z + q * q * rxy_sq)))

        return fn

    def entropy_fn(self, bloch):
        lam_fn = self.lambda_plus_fn(bloch)

        def fn(t: float) -> float:
            return float(binary_entropy(lam_fn(t)))

        return fn


class ColoredNoiseDephasingFamily(DephasingFamilyBase):
    """Dephasing driven by random-telegraph (colored) noise.

    The coherence factor is the closed-form memory kernel Lambda(nu) with
    nu = t/(2*tau); no quadrature is involved.
    """

    diagnostic_name = "Lambda"

    def __init__(self, params: ColoredNoiseParams):
        self.params = params

    def coherence_factor(self, times) -> np.ndarray:
        return np.asarray(lambda_of_nu(self.params, self.params.nu(times)))

    def coherence_factor_rate(self, times) -> np.ndarray:
        nu = self.params.nu(times)
        return np.asarray(lambda_rate_of_nu(self.params, nu)) / (2.0 * self.params.tau)

    def diagnostic(self, times) -> np.ndarray:
        return self.coherence_factor(times)

    def kraus_at(self, t: float) -> KrausChannel:
        lam = float(lambda_of_nu(self.params, float(self.params.nu(t))))
        return colored_noise_channel(lam)
