"""Entropy-backflow witness and degree of non-Markovianity for unital
single-qubit channels.

The larger eigenvalue of a qubit density matrix can only fall under
divisible unital dynamics; any temporary rise signals information flowing
back from the environment.  This package detects those rises, totals them
into a degree (optionally maximized over initial states), and ships two
concrete dephasing families: an Ohmic-family bosonic bath (decoherence
exponent by adaptive quadrature) and random-telegraph colored noise
(closed-form memory kernel).
"""

__version__ = "0.1.0"

from .channels import (
    AffineMap,
    ColoredNoiseParams,
    KrausChannel,
    apply,
    choi_matrix,
    choi_of_affine,
    colored_noise_channel,
    dephasing_channel,
    divide_affine,
    intermediate_map,
    is_unital,
    lambda_of_nu,
    lambda_rate_of_nu,
    to_affine,
)
from .exceptions import (
    InvalidStateError,
    MalformedChannelError,
    NonInvertibleMapError,
    QBackflowError,
    QuadratureConvergenceError,
)
from .families import ColoredNoiseDephasingFamily, DephasingFamilyBase, OhmicDephasingFamily
from .measure import (
    MeasureReport,
    StateGrid,
    Trajectory,
    detect_entropy_drop_intervals,
    detect_rising_intervals,
    grid_gains,
    n_e_from_trajectory,
    n_s_from_trajectory,
    optimize_over_states,
)
from .spectral import (
    DEFAULT_QUADRATURE,
    QuadratureConfig,
    SpectralParams,
    gamma_big,
    gamma_big_grid,
    gamma_rate,
    gamma_rate_grid,
    j_omega,
)
from .states import (
    EigenPair,
    QubitState,
    binary_entropy,
    eigenvalues,
    entropy_rate,
    entropy_rate_series,
    from_bloch,
    relative_entropy,
    to_bloch,
    trace_distance,
    von_neumann_entropy,
)

__all__ = [
    "__version__",
    "AffineMap",
    "ColoredNoiseDephasingFamily",
    "ColoredNoiseParams",
    "DEFAULT_QUADRATURE",
    "DephasingFamilyBase",
    "EigenPair",
    "InvalidStateError",
    "KrausChannel",
    "MalformedChannelError",
    "MeasureReport",
    "NonInvertibleMapError",
    "OhmicDephasingFamily",
    "QBackflowError",
    "QuadratureConfig",
    "QuadratureConvergenceError",
    "QubitState",
    "SpectralParams",
    "StateGrid",
    "Trajectory",
    "apply",
    "binary_entropy",
    "choi_matrix",
    "choi_of_affine",
    "colored_noise_channel",
    "dephasing_channel",
    "detect_entropy_drop_intervals",
    "detect_rising_intervals",
    "divide_affine",
    "eigenvalues",
    "entropy_rate",
    "entropy_rate_series",
    "from_bloch",
    "gamma_big",
    "gamma_big_grid",
    "gamma_rate",
    "gamma_rate_grid",
    "grid_gains",
    "intermediate_map",
    "is_unital",
    "j_omega",
    "lambda_of_nu",
    "lambda_rate_of_nu",
    "n_e_from_trajectory",
    "n_s_from_trajectory",
    "optimize_over_states",
    "relative_entropy",
    "to_affine",
    "to_bloch",
    "trace_distance",
    "von_neumann_entropy",
]
