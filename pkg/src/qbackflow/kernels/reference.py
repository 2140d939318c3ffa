"""Pure NumPy implementation of the hot numerical kernels.

The compiled extension (``_compiled.pyx``) mirrors these routines one to
one; this module is the import-time fallback and the ground truth for the
backend equivalence tests.
"""

from __future__ import annotations

import math

import numpy as np

# 15-point Gauss-Kronrod rule on [-1, 1].  The embedded 7-point Gauss rule
# uses the odd-indexed abscissae; its weights are zero elsewhere so both
# rules share one set of integrand evaluations.
_XK = np.array(
    [
        -0.991455371120813,
        -0.949107912342759,
        -0.864864423359769,
        -0.741531185599394,
        -0.586087235467691,
        -0.405845151377397,
        -0.207784955007898,
        0.0,
        0.207784955007898,
        0.405845151377397,
        0.586087235467691,
        0.741531185599394,
        0.864864423359769,
        0.949107912342759,
        0.991455371120813,
    ]
)
_WK = np.array(
    [
        0.022935322010529,
        0.063092092629979,
        0.104790010322250,
        0.140653259715525,
        0.169004726639267,
        0.190350578064785,
        0.204432940075298,
        0.209482141084728,
        0.204432940075298,
        0.190350578064785,
        0.169004726639267,
        0.140653259715525,
        0.104790010322250,
        0.063092092629979,
        0.022935322010529,
    ]
)
_WG = np.array(
    [
        0.0,
        0.129484966168870,
        0.0,
        0.279705391489277,
        0.0,
        0.381830050505119,
        0.0,
        0.417959183673469,
        0.0,
        0.381830050505119,
        0.0,
        0.279705391489277,
        0.0,
        0.129484966168870,
        0.0,
    ]
)

#: kind codes for :func:`phase_damping_quad`
KIND_EXPONENT = 0  # Gamma(t)  = 4 int J(w) (1-cos wt)/w^2 dw
KIND_RATE = 1      # dGamma/dt = 4 int J(w) sin(wt)/w dw


def _integrand(kind, s, omega_c, t, omega):
    scale = omega_c ** (1.0 - s)
    if kind == KIND_EXPONENT:
        # 1 - cos(wt) written as 2 sin^2(wt/2) to avoid cancellation.
        sn = np.sin(0.5 * omega * t)
        return 8.0 * scale * omega ** (s - 2.0) * sn * sn * np.exp(-omega / omega_c)
    sn = np.sin(omega * t)
    return 4.0 * scale * omega ** (s - 1.0) * sn * np.exp(-omega / omega_c)


def _gk15_panels(kind, s, omega_c, t, left, width):
    """Evaluate the GK15 rule on a batch of panels.

    Returns per-panel integral values (Kronrod) and the |K15 - G7| error
    estimates, both already scaled by the panel half-width.
    """
    nodes = left[:, None] + 0.5 * width[:, None] * (_XK[None, :] + 1.0)
    f = _integrand(kind, s, omega_c, t, nodes)
    half = 0.5 * width
    k15 = half * (f @ _WK)
    g7 = half * (f @ _WG)
    return k15, np.abs(k15 - g7)


def _quad_single(kind, s, omega_c, t, omega_max, rel_tol, abs_tol, max_rounds, max_panels):
    if t == 0.0:
        return 0.0, 0.0, True
    # Base grid aligned to half oscillation periods (length pi/t), with a
    # floor so the spectral envelope is resolved at small t.
    n0 = max(16, int(math.ceil(omega_max * t / math.pi)))
    n0 = min(n0, max_panels)
    width0 = omega_max / n0
    left = width0 * np.arange(n0)
    width = np.full(n0, width0)
    vals, errs = _gk15_panels(kind, s, omega_c, t, left, width)

    for _ in range(max_rounds):
        total = float(vals.sum())
        err = float(errs.sum())
        tol = max(abs_tol, rel_tol * abs(total))
        if err <= tol:
            return total, err, True
        if len(left) >= max_panels:
            break
        split = errs > tol / len(left)
        if not split.any():
            split = errs == errs.max()
        # Respect the panel budget: split the worst offenders first.
        budget = (max_panels - len(left))
        if int(split.sum()) > budget:
            order = np.argsort(errs)[::-1]
            chosen = order[:budget]
            split = np.zeros(len(left), dtype=bool)
            split[chosen] = True
        keep = ~split
        half_w = 0.5 * width[split]
        new_left = np.concatenate([left[split], left[split] + half_w])
        new_width = np.concatenate([half_w, half_w])
        new_vals, new_errs = _gk15_panels(kind, s, omega_c, t, new_left, new_width)
        left = np.concatenate([left[keep], new_left])
        width = np.concatenate([width[keep], new_width])
        vals = np.concatenate([vals[keep], new_vals])
        errs = np.concatenate([errs[keep], new_errs])

    total = float(vals.sum())
    err = float(errs.sum())
    return total, err, err <= max(abs_tol, rel_tol * abs(total))


def phase_damping_quad(
    kind: int,
    s: float,
    omega_c: float,
    times,
    omega_max: float,
    rel_tol: float,
    abs_tol: float,
    max_rounds: int = 14,
    max_panels: int = 16384,
):
    """Adaptive panel-aligned quadrature of the dephasing integrals.

    Parameters mirror the compiled kernel exactly.  Returns arrays of
    values, achieved error estimates and per-time convergence flags.
    """
    times = np.asarray(times, dtype=float)
    values = np.empty(times.shape)
    errors = np.empty(times.shape)
    converged = np.empty(times.shape, dtype=bool)
    for i, t in enumerate(times.ravel()):
        v, e, ok = _quad_single(
            kind, s, omega_c, float(t), omega_max, rel_tol, abs_tol, max_rounds, max_panels
        )
        values.flat[i] = v
        errors.flat[i] = e
        converged.flat[i] = ok
    return values, errors, converged


_DEGENERATE_BAND = 1e-8  # |4*a*tau - 1| below this uses the limiting branch


def telegraph_memory(a: float, tau: float, nu) -> np.ndarray:
    """Memory kernel Lambda(nu) of random-telegraph dephasing.

    Three branches keep the function real and continuous: trigonometric
    for 4*a*tau > 1, a hyperbolic continuation for 4*a*tau < 1 (written
    with decaying exponentials so it cannot overflow), and the limit
    exp(-nu)*(1+nu) inside a narrow band around 4*a*tau = 1.
    """
    nu = np.asarray(nu, dtype=float)
    g = 4.0 * a * tau
    if abs(g - 1.0) <= _DEGENERATE_BAND:
        return np.exp(-nu) * (1.0 + nu)
    if g > 1.0:
        mu = math.sqrt(g * g - 1.0)
        return np.exp(-nu) * (np.cos(mu * nu) + np.sin(mu * nu) / mu)
    mu = math.sqrt(1.0 - g * g)
    return 0.5 * (
        (1.0 + 1.0 / mu) * np.exp(-(1.0 - mu) * nu)
        + (1.0 - 1.0 / mu) * np.exp(-(1.0 + mu) * nu)
    )


def telegraph_memory_rate(a: float, tau: float, nu) -> np.ndarray:
    """Derivative dLambda/dnu on the same branches as :func:`telegraph_memory`."""
    nu = np.asarray(nu, dtype=float)
    g = 4.0 * a * tau
    if abs(g - 1.0) <= _DEGENERATE_BAND:
        return -nu * np.exp(-nu)
    if g > 1.0:
        mu = math.sqrt(g * g - 1.0)
        return -np.exp(-nu) * np.sin(mu * nu) * (1.0 + mu * mu) / mu
    mu = math.sqrt(1.0 - g * g)
    coeff = 0.5 * (mu * mu - 1.0) / mu
    return coeff * (np.exp(-(1.0 - mu) * nu) - np.exp(-(1.0 + mu) * nu))


def positive_gain_total(lam: np.ndarray) -> np.ndarray:
    """Per-row sum of positive consecutive increments.

    For a row holding lambda_plus over a time grid this telescopes to the
    total eigenvalue gain over all rising runs.
    """
    lam = np.asarray(lam, dtype=float)
    if lam.ndim == 1:
        lam = lam[None, :]
    d = np.diff(lam, axis=1)
    return np.sum(np.where(d > 0.0, d, 0.0), axis=1)
