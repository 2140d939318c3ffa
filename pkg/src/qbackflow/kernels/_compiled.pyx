# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twin of :mod:`qbackflow.kernels.reference`.

Same panel layout, splitting rule and branch structure; only the loops are
lowered to C.  The reference module is authoritative for semantics (panel
ordering after a refinement round differs, so results may disagree in the
last couple of ulps).
"""

import numpy as np

from libc.math cimport M_PI, ceil, cos, exp, fabs, pow, sin, sqrt

cdef double[15] XK
cdef double[15] WK
cdef double[15] WG

XK[0] = -0.991455371120813; XK[1] = -0.949107912342759; XK[2] = -0.864864423359769
XK[3] = -0.741531185599394; XK[4] = -0.586087235467691; XK[5] = -0.405845151377397
XK[6] = -0.207784955007898; XK[7] = 0.0; XK[8] = 0.207784955007898
XK[9] = 0.405845151377397; XK[10] = 0.586087235467691; XK[11] = 0.741531185599394
XK[12] = 0.864864423359769; XK[13] = 0.949107912342759; XK[14] = 0.991455371120813

WK[0] = 0.022935322010529; WK[1] = 0.063092092629979; WK[2] = 0.104790010322250
WK[3] = 0.140653259715525; WK[4] = 0.169004726639267; WK[5] = 0.190350578064785
WK[6] = 0.204432940075298; WK[7] = 0.209482141084728; WK[8] = 0.204432940075298
WK[9] = 0.190350578064785; WK[10] = 0.169004726639267; WK[11] = 0.140653259715525
WK[12] = 0.104790010322250; WK[13] = 0.063092092629979; WK[14] = 0.022935322010529

WG[0] = 0.0; WG[1] = 0.129484966168870; WG[2] = 0.0
WG[3] = 0.279705391489277; WG[4] = 0.0; WG[5] = 0.381830050505119
WG[6] = 0.0; WG[7] = 0.417959183673469; WG[8] = 0.0
WG[9] = 0.381830050505119; WG[10] = 0.0; WG[11] = 0.279705391489277
WG[12] = 0.0; WG[13] = 0.129484966168870; WG[14] = 0.0

KIND_EXPONENT = 0
KIND_RATE = 1

cdef double DEGENERATE_BAND = 1e-8


cdef inline double _integrand(int kind, double s, double scale, double inv_wc,
                              double t, double omega) nogil:
    # scale = omega_c**(1-s) and inv_wc = 1/omega_c are hoisted by callers.
    cdef double sn
    if kind == 0:
        sn = sin(0.5 * omega * t)
        return 8.0 * scale * pow(omega, s - 2.0) * sn * sn * exp(-omega * inv_wc)
    sn = sin(omega * t)
    return 4.0 * scale * pow(omega, s - 1.0) * sn * exp(-omega * inv_wc)


cdef inline void _gk15(int kind, double s, double scale, double inv_wc, double t,
                       double left, double width, double* val, double* err) nogil:
    cdef double k15 = 0.0
    cdef double g7 = 0.0
    cdef double x, f
    cdef int i
    for i in range(15):
        x = left + 0.5 * width * (XK[i] + 1.0)
        f = _integrand(kind, s, scale, inv_wc, t, x)
        k15 += WK[i] * f
        g7 += WG[i] * f
    val[0] = 0.5 * width * k15
    err[0] = fabs(0.5 * width * (k15 - g7))


cdef int _quad_single(int kind, double s, double omega_c, double t,
                      double omega_max, double rel_tol, double abs_tol,
                      int max_rounds, int max_panels,
                      double* left, double* width, double* vals, double* errs,
                      double* left2, double* width2, double* vals2, double* errs2,
                      double* flags,
                      double* out_val, double* out_err) nogil:
    """Adaptive GK15 on [0, omega_max]; returns 1 when converged."""
    cdef int n, i, rnd, n_keep, n_out, budget, n_split
    cdef double width0, total, err, tol, half_w, worst, share
    cdef double scale = pow(omega_c, 1.0 - s)
    cdef double inv_wc = 1.0 / omega_c

    if t == 0.0:
        out_val[0] = 0.0
        out_err[0] = 0.0
        return 1

    n = <int>ceil(omega_max * t / M_PI)
    if n < 16:
        n = 16
    if n > max_panels:
        n = max_panels
    width0 = omega_max / n
    for i in range(n):
        left[i] = width0 * i
        width[i] = width0
        _gk15(kind, s, scale, inv_wc, t, left[i], width[i], &vals[i], &errs[i])

    for rnd in range(max_rounds):
        total = 0.0
        err = 0.0
        for i in range(n):
            total += vals[i]
            err += errs[i]
        tol = rel_tol * fabs(total)
        if abs_tol > tol:
            tol = abs_tol
        if err <= tol:
            out_val[0] = total
            out_err[0] = err
            return 1
        if n >= max_panels:
            break

        # Mark panels for splitting: everything above the fair error
        # share, or (if nothing qualifies) the worst panel(s).
        share = tol / n
        worst = 0.0
        n_split = 0
        for i in range(n):
            if errs[i] > worst:
                worst = errs[i]
        for i in range(n):
            flags[i] = 1.0 if errs[i] > share else 0.0
            if flags[i] != 0.0:
                n_split += 1
        if n_split == 0:
            for i in range(n):
                flags[i] = 1.0 if errs[i] == worst else 0.0
                if flags[i] != 0.0:
                    n_split += 1
        budget = max_panels - n
        if n_split > budget:
            # drop the smallest-error candidates until within budget
            while n_split > budget:
                worst = -1.0
                n_keep = -1
                for i in range(n):
                    if flags[i] != 0.0 and (n_keep < 0 or errs[i] < worst):
                        worst = errs[i]
                        n_keep = i
                flags[n_keep] = 0.0
                n_split -= 1

        n_out = 0
        for i in range(n):
            if flags[i] == 0.0:
                left2[n_out] = left[i]
                width2[n_out] = width[i]
                vals2[n_out] = vals[i]
                errs2[n_out] = errs[i]
                n_out += 1
        for i in range(n):
            if flags[i] != 0.0:
                half_w = 0.5 * width[i]
                left2[n_out] = left[i]
                width2[n_out] = half_w
                _gk15(kind, s, scale, inv_wc, t, left2[n_out], half_w,
                      &vals2[n_out], &errs2[n_out])
                n_out += 1
                left2[n_out] = left[i] + half_w
                width2[n_out] = half_w
                _gk15(kind, s, scale, inv_wc, t, left2[n_out], half_w,
                      &vals2[n_out], &errs2[n_out])
                n_out += 1
        n = n_out
        for i in range(n):
            left[i] = left2[i]
            width[i] = width2[i]
            vals[i] = vals2[i]
            errs[i] = errs2[i]

    total = 0.0
    err = 0.0
    for i in range(n):
        total += vals[i]
        err += errs[i]
    out_val[0] = total
    out_err[0] = err
    tol = rel_tol * fabs(total)
    if abs_tol > tol:
        tol = abs_tol
    return 1 if err <= tol else 0


def phase_damping_quad(int kind, double s, double omega_c, times,
                       double omega_max, double rel_tol, double abs_tol,
                       int max_rounds=14, int max_panels=16384):
    """Adaptive panel-aligned quadrature of the dephasing integrals."""
    t_arr = np.ascontiguousarray(times, dtype=np.float64)
    shape = t_arr.shape
    t_flat = t_arr.ravel()
    cdef double[::1] t_view = t_flat
    cdef Py_ssize_t n_times = t_view.shape[0]
    values = np.empty(n_times)
    errors = np.empty(n_times)
    converged = np.empty(n_times, dtype=bool)
    cdef double[::1] v_view = values
    cdef double[::1] e_view = errors
    work = np.empty((9, max_panels))
    cdef double[:, ::1] w_view = work
    cdef Py_ssize_t i
    cdef double val, err
    cdef int ok
    for i in range(n_times):
        ok = _quad_single(kind, s, omega_c, t_view[i], omega_max, rel_tol, abs_tol,
                          max_rounds, max_panels,
                          &w_view[0, 0], &w_view[1, 0], &w_view[2, 0], &w_view[3, 0],
                          &w_view[4, 0], &w_view[5, 0], &w_view[6, 0], &w_view[7, 0],
                          &w_view[8, 0], &val, &err)
        v_view[i] = val
        e_view[i] = err
        converged[i] = bool(ok)
    return values.reshape(shape), errors.reshape(shape), converged.reshape(shape)


def telegraph_memory(double a, double tau, nu):
    """Memory kernel Lambda(nu) of random-telegraph dephasing."""
    nu_arr = np.ascontiguousarray(nu, dtype=np.float64)
    shape = nu_arr.shape
    flat = nu_arr.ravel()
    out = np.empty(flat.shape[0])
    cdef double[::1] nu_view = flat
    cdef double[::1] out_view = out
    cdef double g = 4.0 * a * tau
    cdef double mu, x
    cdef Py_ssize_t i
    if fabs(g - 1.0) <= DEGENERATE_BAND:
        for i in range(nu_view.shape[0]):
            x = nu_view[i]
            out_view[i] = exp(-x) * (1.0 + x)
    elif g > 1.0:
        mu = sqrt(g * g - 1.0)
        for i in range(nu_view.shape[0]):
            x = nu_view[i]
            out_view[i] = exp(-x) * (cos(mu * x) + sin(mu * x) / mu)
    else:
        mu = sqrt(1.0 - g * g)
        for i in range(nu_view.shape[0]):
            x = nu_view[i]
            out_view[i] = 0.5 * ((1.0 + 1.0 / mu) * exp(-(1.0 - mu) * x)
                                 + (1.0 - 1.0 / mu) * exp(-(1.0 + mu) * x))
    return out.reshape(shape)


def telegraph_memory_rate(double a, double tau, nu):
    """Derivative dLambda/dnu on the same branches as telegraph_memory."""
    nu_arr = np.ascontiguousarray(nu, dtype=np.float64)
    shape = nu_arr.shape
    flat = nu_arr.ravel()
    out = np.empty(flat.shape[0])
    cdef double[::1] nu_view = flat
    cdef double[::1] out_view = out
    cdef double g = 4.0 * a * tau
    cdef double mu, coeff, x
    cdef Py_ssize_t i
    if fabs(g - 1.0) <= DEGENERATE_BAND:
        for i in range(nu_view.shape[0]):
            x = nu_view[i]
            out_view[i] = -x * exp(-x)
    elif g > 1.0:
        mu = sqrt(g * g - 1.0)
        coeff = (1.0 + mu * mu) / mu
        for i in range(nu_view.shape[0]):
            x = nu_view[i]
            out_view[i] = -exp(-x) * sin(mu * x) * coeff
    else:
        mu = sqrt(1.0 - g * g)
        coeff = 0.5 * (mu * mu - 1.0) / mu
        for i in range(nu_view.shape[0]):
            x = nu_view[i]
            out_view[i] = coeff * (exp(-(1.0 - mu) * x) - exp(-(1.0 + mu) * x))
    return out.reshape(shape)


def positive_gain_total(lam):
    """Per-row sum of positive consecutive increments."""
    arr = np.ascontiguousarray(lam, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[None, :]
    cdef double[:, ::1] view = arr
    out = np.zeros(view.shape[0])
    cdef double[::1] out_view = out
    cdef Py_ssize_t i, j
    cdef double d, acc
    for i in range(view.shape[0]):
        acc = 0.0
        for j in range(view.shape[1] - 1):
            d = view[i, j + 1] - view[i, j]
            if d > 0.0:
                acc += d
        out_view[i] = acc
    return out
