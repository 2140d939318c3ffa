"""Qubit channels: Kraus and affine representations, structural checks.

Kraus convention: a channel acts as Phi(rho) = sum_k K_k rho K_k^dag with
trace preservation sum_k K_k^dag K_k = I and unitality sum_k K_k K_k^dag = I.
(The adjoint-indexed form Phi(rho) = sum_k E_k^dag rho E_k maps onto this
with K_k = E_k^dag; both dephasing families below use Hermitian operators,
for which the two conventions coincide.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .exceptions import MalformedChannelError, NonInvertibleMapError
from .states import IDENTITY, PAULIS, SIGMA_Z, QubitState

CHANNEL_TOL = 1e-9

#: Choi eigenvalues above this (negative) threshold count as positive
#: semidefinite; genuine CP violations in the models are O(1e-2) or larger.
CP_EIGENVALUE_TOL = -1e-10

#: Condition-number cap for inverting the Bloch matrix of an earlier-time map.
CONDITION_CAP = 1e12


class KrausChannel:
    """A qubit channel given by a finite list of 2x2 Kraus operators.

    Construction validates trace preservation (sum K^dag K = I) within
    ``tol`` and raises :class:`MalformedChannelError` otherwise.
    """

    __slots__ = ("operators",)

    def __init__(self, operators, validate: bool = True, tol: float = CHANNEL_TOL):
        ops = tuple(np.array(op, dtype=complex) for op in operators)
        if not ops:
            raise MalformedChannelError("a channel needs at least one Kraus operator")
        for op in ops:
            if op.shape != (2, 2):
                raise MalformedChannelError(
                    f"Kraus operators must be 2x2, got shape {op.shape}"
                )
        if validate:
            completeness = sum(op.conj().T @ op for op in ops)
            defect = float(np.max(np.abs(completeness - IDENTITY)))
            if defect > tol:
                raise MalformedChannelError(
                    f"Kraus set violates trace preservation (defect {defect:.3e})"
                )
        for op in ops:
            op.setflags(write=False)
        self.operators = ops

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"KrausChannel(n_ops={len(self.operators)})"


@dataclass(frozen=True, eq=False)
class AffineMap:
    """Action on Bloch vectors: r -> translation + matrix @ r."""

    translation: np.ndarray
    matrix: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.translation, dtype=float).reshape(3)
        m = np.asarray(self.matrix, dtype=float).reshape(3, 3)
        t.setflags(write=False)
        m.setflags(write=False)
        object.__setattr__(self, "translation", t)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(np.zeros(3), np.eye(3))

    def apply_bloch(self, r) -> np.ndarray:
        return self.translation + self.matrix @ np.asarray(r, dtype=float)

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """The map 'self after inner'."""
        return AffineMap(
            self.translation + self.matrix @ inner.translation,
            self.matrix @ inner.matrix,
        )

    def is_unital(self, tol: float = CHANNEL_TOL) -> bool:
        return float(np.linalg.norm(self.translation)) <= tol


def apply(channel: KrausChannel, rho: QubitState) -> QubitState:
    """Apply the channel; the output trace is renormalized to exactly 1."""
    out = np.zeros((2, 2), dtype=complex)
    for op in channel.operators:
        out += op @ rho.matrix @ op.conj().T
    out = 0.5 * (out + out.conj().T)
    tr = out[0, 0].real + out[1, 1].real
    return QubitState(out / tr)


def to_affine(channel: KrausChannel) -> AffineMap:
    """Affine Bloch representation, obtained by probing basis states."""
    translation = apply(channel, QubitState.from_bloch([0.0, 0.0, 0.0])).bloch
    columns = []
    for axis in range(3):
        r = np.zeros(3)
        r[axis] = 1.0
        columns.append(apply(channel, QubitState.from_bloch(r)).bloch - translation)
    return AffineMap(translation, np.column_stack(columns))


def is_unital(channel: KrausChannel, tol: float = CHANNEL_TOL) -> bool:
    """True iff the channel maps the identity to itself (sum K K^dag = I)."""
    image = sum(op @ op.conj().T for op in channel.operators)
    return float(np.max(np.abs(image - IDENTITY))) <= tol


def _vec(op: np.ndarray) -> np.ndarray:
    # Column-stacking convention.
    return op.T.reshape(-1)


def choi_matrix(channel: KrausChannel) -> np.ndarray:
    """Choi matrix sum_k |K_k>><<K_k| (trace 2; PSD iff the map is CP)."""
    c = np.zeros((4, 4), dtype=complex)
    for op in channel.operators:
        v = _vec(op)
        c += np.outer(v, v.conj())
    return c


# Basis matrices E_ij expanded as (x0*I + w.sigma)/2 with complex w.
_BASIS_BLOCH = {
    (0, 0): (1.0, np.array([0.0, 0.0, 1.0], dtype=complex)),
    (1, 1): (1.0, np.array([0.0, 0.0, -1.0], dtype=complex)),
    (0, 1): (0.0, np.array([1.0, 1.0j, 0.0], dtype=complex)),
    (1, 0): (0.0, np.array([1.0, -1.0j, 0.0], dtype=complex)),
}


def choi_of_affine(amap: AffineMap) -> np.ndarray:
    """Choi matrix of an affine Bloch map (complex-linear extension).

    Matches :func:`choi_matrix` on channels where both are available.
    """
    c = np.zeros((4, 4), dtype=complex)
    for (i, j), (x0, w) in _BASIS_BLOCH.items():
        e_ij = np.zeros((2, 2), dtype=complex)
        e_ij[i, j] = 1.0
        w_out = x0 * amap.translation + amap.matrix @ w
        phi_e = 0.5 * (x0 * IDENTITY + sum(w_out[k] * PAULIS[k] for k in range(3)))
        c += np.kron(e_ij, phi_e)
    return c


def intermediate_map(affine_source, t1: float, t2: float, condition_cap: float = CONDITION_CAP) -> AffineMap:
    """Map taking the state at ``t1`` to the state at ``t2``.

    ``affine_source`` is either a callable ``t -> AffineMap`` or an object
    with an ``affine_at(t)`` method (the channel families).  Requires
    0 <= t1 <= t2 and an invertible Bloch matrix at ``t1``; a condition
    number beyond ``condition_cap`` raises :class:`NonInvertibleMapError`
    rather than guessing.
    """
    if not 0.0 <= t1 <= t2:
        raise ValueError(f"need 0 <= t1 <= t2, got t1={t1}, t2={t2}")
    at = getattr(affine_source, "affine_at", affine_source)
    return divide_affine(at(t2), at(t1), condition_cap)


def divide_affine(outer: AffineMap, inner: AffineMap, condition_cap: float = CONDITION_CAP) -> AffineMap:
    """Affine map m with outer = m.compose(inner)."""
    cond = np.linalg.cond(inner.matrix)
    if not np.isfinite(cond) or cond > condition_cap:
        raise NonInvertibleMapError(
            f"Bloch matrix is numerically singular (condition number {cond:.3e})"
        )
    m = outer.matrix @ np.linalg.inv(inner.matrix)
    translation = outer.translation - m @ inner.translation
    return AffineMap(translation, m)


def _phase_flip_kraus(q: float) -> KrausChannel:
    """Kraus pair {sqrt((1+q)/2) I, sqrt((1-q)/2) sigma_z} for q in [-1, 1]."""
    c = math.sqrt(0.5 * (1.0 + q))
    d = math.sqrt(0.5 * (1.0 - q))
    return KrausChannel((c * IDENTITY, d * SIGMA_Z), validate=False)


def dephasing_channel(gamma_big: float) -> KrausChannel:
    """Phase-damping channel with decoherence exponent ``gamma_big``.

    Off-diagonal elements are scaled by exp(-gamma_big); the diagonal is
    untouched.  Trace-preserving and unital for every gamma_big >= 0.
    """
    if gamma_big < 0.0:
        raise ValueError(f"decoherence exponent must be nonnegative, got {gamma_big}")
    return _phase_flip_kraus(math.exp(-gamma_big))


@dataclass(frozen=True)
class ColoredNoiseParams:
    """Random-telegraph dephasing: noise amplitude ``a`` and mean flip time ``tau``.

    The memory kernel depends on the product ``a*tau``; the regime
    boundary sits at 4*a*tau = 1 (see :func:`lambda_of_nu` for branches).
    """

    a: float
    tau: float = 1.0

    def __post_init__(self):
        if not self.a > 0.0:
            raise ValueError(f"noise amplitude must be positive, got {self.a}")
        if not self.tau > 0.0:
            raise ValueError(f"mean flip time must be positive, got {self.tau}")

    @property
    def mu_squared(self) -> float:
        """(4*a*tau)^2 - 1; its sign selects the oscillatory vs damped branch."""
        g = 4.0 * self.a * self.tau
        return g * g - 1.0

    def nu(self, t):
        """Dimensionless time nu = t / (2*tau)."""
        return np.asarray(t, dtype=float) / (2.0 * self.tau)


def lambda_of_nu(params: ColoredNoiseParams, nu):
    """Memory kernel Lambda(nu); Lambda(0) = 1 and |Lambda| <= 1.

    For 4*a*tau > 1: exp(-nu) * (cos(mu*nu) + sin(mu*nu)/mu) with
    mu = sqrt((4*a*tau)^2 - 1).  For 4*a*tau < 1 the real-analytic
    continuation replaces the trigonometric functions by hyperbolic ones;
    within 1e-8 of the boundary the limit exp(-nu)*(1+nu) is used.  The
    three branches join continuously.
    """
    nu_arr = np.asarray(nu, dtype=float)
    if np.any(nu_arr < 0.0):
        raise ValueError("dimensionless time must be nonnegative")
    out = kernels.telegraph_memory(params.a, params.tau, np.atleast_1d(nu_arr))
    if nu_arr.ndim == 0:
        return float(out[0])
    return out.reshape(nu_arr.shape)


def lambda_rate_of_nu(params: ColoredNoiseParams, nu):
    """Derivative dLambda/dnu on the same branches as :func:`lambda_of_nu`."""
    nu_arr = np.asarray(nu, dtype=float)
    if np.any(nu_arr < 0.0):
        raise ValueError("dimensionless time must be nonnegative")
    out = kernels.telegraph_memory_rate(params.a, params.tau, np.atleast_1d(nu_arr))
    if nu_arr.ndim == 0:
        return float(out[0])
    return out.reshape(nu_arr.shape)


def colored_noise_channel(lam: float) -> KrausChannel:
    """Dephasing channel with off-diagonal factor ``lam`` in [-1, 1].

    lam = 1 is the identity, lam = 0 full dephasing, lam = -1 a sigma_z
    conjugation (off-diagonals negated).
    """
    if abs(lam) > 1.0 + 1e-12:
        raise ValueError(f"off-diagonal factor must satisfy |lam| <= 1, got {lam}")
    return _phase_flip_kraus(min(max(lam, -1.0), 1.0))
