"""Single-qubit state algebra.

States live on the Bloch ball: rho = (I + r.sigma)/2 with |r| <= 1.  All
entropies are in bits (base-2 logarithms throughout).
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .exceptions import InvalidStateError

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

#: Absolute tolerance for Hermiticity / trace / positivity validation.
VALIDATION_TOL = 1e-9


class QubitState:
    """Density matrix of a single qubit.

    Wraps a 2x2 complex matrix that is Hermitian, unit-trace and positive
    semidefinite (all within :data:`VALIDATION_TOL`).  Instances are
    immutable; the wrapped array is read-only.

    Parameters
    ----------
    matrix:
        2x2 array-like of complex entries.
    validate:
        Skip the physicality checks when False.  Intended for internal
        use and for tests that deliberately build non-physical input.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix, validate: bool = True):
        m = np.array(matrix, dtype=complex)
        if m.shape != (2, 2):
            raise InvalidStateError(f"expected a 2x2 matrix, got shape {m.shape}")
        if validate:
            _validate_density_matrix(m)
        m.setflags(write=False)
        self.matrix = m

    @classmethod
    def from_bloch(cls, r) -> "QubitState":
        """Build the state (I + r.sigma)/2 from a Bloch vector."""
        r = np.asarray(r, dtype=float)
        if r.shape != (3,):
            raise InvalidStateError(f"Bloch vector must have 3 components, got {r.shape}")
        norm = float(np.linalg.norm(r))
        if norm > 1.0 + VALIDATION_TOL:
            raise InvalidStateError(f"Bloch vector norm {norm} exceeds 1")
        x, y, z = r
        m = 0.5 * np.array(
            [[1.0 + z, x - 1.0j * y], [x + 1.0j * y, 1.0 - z]], dtype=complex
        )
        return cls(m, validate=False)

    @property
    def bloch(self) -> np.ndarray:
        """Bloch vector (x, y, z) of the state."""
        m = self.matrix
        return np.array(
            [2.0 * m[0, 1].real, -2.0 * m[0, 1].imag, (m[0, 0] - m[1, 1]).real]
        )

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        x, y, z = self.bloch
        return f"QubitState(bloch=({x:.6g}, {y:.6g}, {z:.6g}))"


def _validate_density_matrix(m: np.ndarray) -> None:
    if np.max(np.abs(m - m.conj().T)) > VALIDATION_TOL:
        raise InvalidStateError("matrix is not Hermitian within tolerance")
    if abs(m[0, 0].real + m[1, 1].real - 1.0) > VALIDATION_TOL:
        raise InvalidStateError("matrix does not have unit trace within tolerance")
    # For a Hermitian unit-trace 2x2 matrix both eigenvalues are >= -tol
    # iff det >= -tol (their product) and the diagonal is >= -tol.
    det = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real
    if det < -VALIDATION_TOL or m[0, 0].real < -VALIDATION_TOL or m[1, 1].real < -VALIDATION_TOL:
        raise InvalidStateError("matrix is not positive semidefinite within tolerance")


def from_bloch(r) -> QubitState:
    """Module-level alias for :meth:`QubitState.from_bloch`."""
    return QubitState.from_bloch(r)


def to_bloch(state: QubitState) -> np.ndarray:
    """Bloch vector of ``state`` (inverse of :func:`from_bloch`)."""
    return state.bloch


class EigenPair(NamedTuple):
    """Eigenvalues of a qubit density matrix, larger one first.

    ``lambda_plus + lambda_minus == 1`` holds exactly by construction and
    ``lambda_plus >= lambda_minus``.
    """

    lambda_plus: float
    lambda_minus: float


def eigenvalues(state: QubitState) -> EigenPair:
    """Eigenvalues of a qubit state from the closed-form quadratic.

    Uses lambda_pm = (1 +- sqrt(1 - 4*(rho00*rho11 - |rho01|^2)))/2, which
    agrees with a generic Hermitian eigensolver to better than 1e-12.  A
    discriminant below ``-VALIDATION_TOL`` signals non-physical input and
    raises :class:`InvalidStateError`; small negative values from roundoff
    are clamped to zero.
    """
    m = state.matrix
    det_term = (m[0, 0].real * m[1, 1].real) - abs(m[0, 1]) ** 2
    disc = 1.0 - 4.0 * det_term
    if disc < -VALIDATION_TOL:
        raise InvalidStateError(f"negative eigenvalue discriminant {disc}")
    s = math.sqrt(max(disc, 0.0))
    lam_plus = min(0.5 * (1.0 + s), 1.0)
    return EigenPair(lam_plus, 1.0 - lam_plus)


def binary_entropy(p):
    """Entropy in bits of the distribution (p, 1-p), elementwise.

    ``0*log2(0)`` is defined as 0 by an explicit branch so that pure
    states give exactly 0.0 without NaN hazards.
    """
    p = np.asarray(p, dtype=float)
    q = 1.0 - p
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -np.where(p > 0.0, p * np.log2(np.where(p > 0.0, p, 1.0)), 0.0)
        h -= np.where(q > 0.0, q * np.log2(np.where(q > 0.0, q, 1.0)), 0.0)
    h = np.maximum(h, 0.0)
    return float(h) if h.ndim == 0 else h


def von_neumann_entropy(state: QubitState) -> float:
    """Von Neumann entropy S(rho) in bits; lies in [0, 1] for a qubit."""
    eig = eigenvalues(state)
    return binary_entropy(eig.lambda_plus)


def relative_entropy(rho: QubitState, sigma: QubitState, support_tol: float = 1e-12) -> float:
    """Quantum relative entropy S(rho || sigma) in bits.

    Returns ``math.inf`` when ``rho`` has weight outside the support of
    ``sigma`` (the standard convention for the support condition).  The
    result is clamped at 0 to absorb roundoff; S(rho||sigma) = 0 iff
    rho = sigma within tolerance.
    """
    evals_r = np.linalg.eigvalsh(rho.matrix)
    evals_s, vecs_s = np.linalg.eigh(sigma.matrix)
    evals_r = np.clip(evals_r, 0.0, None)
    evals_s = np.clip(evals_s, 0.0, None)

    # Tr rho log2 rho
    term_rho = float(sum(l * math.log2(l) for l in evals_r if l > 0.0))

    # Tr rho log2 sigma expanded in sigma's eigenbasis.
    overlaps = np.real(np.einsum("ji,jk,ki->i", vecs_s.conj(), rho.matrix, vecs_s))
    term_sigma = 0.0
    for weight, s_val in zip(overlaps, evals_s):
        if s_val <= support_tol:
            if weight > support_tol:
                return math.inf
            continue
        term_sigma += weight * math.log2(s_val)
    return max(term_rho - term_sigma, 0.0)


def entropy_rate(eig: EigenPair, dlambda_plus_dt: float) -> float:
    """Time derivative of the entropy from the eigenvalue derivative.

    Implements dS/dt = (dlambda_plus/dt) * log2(lambda_minus/lambda_plus).
    At the degenerate point lambda_plus = lambda_minus = 1/2 the analytic
    limit is 0 and is returned exactly.
    """
    lam_plus, lam_minus = eig
    if dlambda_plus_dt == 0.0 or lam_plus == lam_minus:
        return 0.0
    if lam_minus <= 0.0:
        return math.inf if dlambda_plus_dt < 0.0 else -math.inf
    return dlambda_plus_dt * math.log2(lam_minus / lam_plus)


def entropy_rate_series(lambda_plus, dlambda_plus_dt) -> np.ndarray:
    """Vectorized :func:`entropy_rate` over trajectory arrays."""
    lam = np.asarray(lambda_plus, dtype=float)
    dl = np.asarray(dlambda_plus_dt, dtype=float)
    lam_minus = 1.0 - lam
    degenerate = (dl == 0.0) | (lam == lam_minus)
    pure = (lam_minus <= 0.0) & ~degenerate
    safe_minus = np.where(lam_minus > 0.0, lam_minus, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        rate = dl * np.log2(safe_minus / lam)
    rate = np.where(degenerate, 0.0, rate)
    rate = np.where(pure, np.where(dl < 0.0, np.inf, -np.inf), rate)
    return rate


def trace_distance(rho: QubitState, sigma: QubitState) -> float:
    """Trace distance between qubit states: |r_rho - r_sigma| / 2."""
    return 0.5 * float(np.linalg.norm(rho.bloch - sigma.bloch))
