"""Compiled inner loops: the weakly singular Volterra march and the coupled
particle-field recursion.

Both have pure-numpy twins in fracdrift._fallback; fracdrift._backend picks
at import time.  Keep the two implementations semantically identical: the
parity tests compare them to near machine precision.
"""

import numpy as np

cimport cython
from libc.math cimport fabs, pow, sqrt


@cython.boundscheck(False)
@cython.wraparound(False)
def march_nodes(double[::1] nodes, double[::1] g, double c, double gamma,
                double sign):
    """Second-order product-integration march on an increasing node set.

    Solves h(t) + sign * int_0^t c (t-s)^(-gamma) h(s) ds = g(t) at the nodes,
    piecewise-linear in the smooth factor except the very first step, which
    integrates the singularity against the known constant h(0) = g(0).
    """
    cdef Py_ssize_t n = nodes.shape[0]
    h_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] h = h_arr
    cdef double e1 = 1.0 - gamma
    cdef double e2 = 2.0 - gamma
    # Taylor coefficients of the distant-cell weights in x = d/r1; the exact
    # power-difference form cancels catastrophically for x << 1.
    cdef double c0 = gamma / 2.0
    cdef double c1 = gamma * (gamma + 1.0) / 6.0
    cdef double c2 = gamma * (gamma + 1.0) * (gamma + 2.0) / 24.0
    cdef double c3 = gamma * (gamma + 1.0) * (gamma + 2.0) * (gamma + 3.0) / 120.0
    cdef double b0 = gamma / 3.0
    cdef double b1 = gamma * (gamma + 1.0) / 8.0
    cdef double b2 = gamma * (gamma + 1.0) * (gamma + 2.0) / 30.0
    cdef double b3 = gamma * (gamma + 1.0) * (gamma + 2.0) * (gamma + 3.0) / 144.0
    cdef Py_ssize_t idx, j
    cdef double tn, acc, m1p, m2p, m1, m2, d, r1, x, w, p0, p1
    cdef double I0, I1, J1, de1, wl, diag

    h[0] = g[0]
    for idx in range(1, n):
        tn = nodes[idx]
        acc = 0.0
        m1p = pow(tn, e1)
        m2p = pow(tn, e2)
        for j in range(idx - 1):
            d = nodes[j + 1] - nodes[j]
            r1 = tn - nodes[j + 1]
            x = d / r1
            if x <= 0.01:
                w = c * pow(r1, -gamma) * d
                p0 = 1.0 - x * (c0 - x * (c1 - x * (c2 - x * c3)))
                p1 = 0.5 - x * (b0 - x * (b1 - x * (b2 - x * b3)))
                acc += w * (p0 * h[j + 1] + p1 * (h[j] - h[j + 1]))
                m1p = pow(r1, e1)
                m2p = pow(r1, e2)
            else:
                m1 = pow(r1, e1)
                m2 = pow(r1, e2)
                I0 = c * (m1p - m1) / e1
                I1 = c * (m2p - m2) / e2
                J1 = I1 - r1 * I0
                acc += I0 * h[j + 1] + J1 * (h[j] - h[j + 1]) / d
                m1p = m1
                m2p = m2
        d = tn - nodes[idx - 1]
        de1 = pow(d, e1)
        if idx == 1:
            acc += c * de1 / e1 * h[0]
            diag = 0.0
        else:
            wl = c * de1 / e2
            diag = c * de1 * (1.0 / e1 - 1.0 / e2)
            acc += wl * h[idx - 1]
        h[idx] = (g[idx] - sign * acc) / (1.0 + sign * diag)
    return h_arr


@cython.boundscheck(False)
@cython.wraparound(False)
def uniform_steps(double[::1] hu, double[::1] gu, double[::1] rev_w0,
                  double[::1] rev_w1, double[::1] pref, double wl,
                  double diag, double sign):
    """March the uniform tail zone; hu[0] must hold the prefix endpoint.

    rev_w0/rev_w1 are the lag-indexed product-integration weights reversed
    so each step reads two contiguous slices; pref[m] carries the memory
    integral over the graded prefix for target m.
    """
    cdef Py_ssize_t m_end = hu.shape[0] - 1
    cdef Py_ssize_t lmax = rev_w0.shape[0]
    cdef Py_ssize_t m, j, base
    cdef double acc
    for m in range(1, m_end + 1):
        acc = pref[m] + wl * hu[m - 1]
        base = lmax - m + 1
        for j in range(m - 1):
            acc += hu[1 + j] * rev_w0[base + j] + hu[j] * rev_w1[base + j]
        hu[m] = (gu[m] - sign * acc) / (1.0 + sign * diag)
    return np.asarray(hu)


@cython.boundscheck(False)
@cython.wraparound(False)
def coupled_march(double[::1] dw, double[:, ::1] q_rows, double dy, double dt,
                  double a_noise, double a_drift, double xlim):
    """Inner recursion of the coupled particle-field system.

    q_rows[l - 1] tabulates the mollified-kernel autocorrelation at lag l
    on offsets 0, dy, 2*dy, ...; drift at step i is the lag sum
    -a_drift * sum_m dX_m * Q(t_i - s_m, X_i - X_m) * dt.

    Returns (X, dX, exit_step); exit_step is -1 unless |X| crossed xlim,
    in which case marching stopped there.
    """
    cdef Py_ssize_t n = dw.shape[0]
    cdef Py_ssize_t half = q_rows.shape[1] - 1
    x_arr = np.zeros(n + 1, dtype=np.float64)
    dx_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] x = x_arr
    cdef double[::1] dx = dx_arr
    cdef Py_ssize_t i, m, idx, exit_step = -1
    cdef double acc, xi, dist, pos, frac, q

    with nogil:
        for i in range(n):
            acc = 0.0
            xi = x[i]
            for m in range(i):
                dist = xi - x[m + 1]
                if dist < 0.0:
                    dist = -dist
                pos = dist / dy
                idx = <Py_ssize_t> pos
                if idx >= half:
                    continue
                frac = pos - idx
                q = q_rows[i - m - 1, idx]
                q = q + frac * (q_rows[i - m - 1, idx + 1] - q)
                acc += dx[m] * q
            dx[i] = a_noise * dw[i] - a_drift * acc * dt
            x[i + 1] = x[i] + dx[i]
            if fabs(x[i + 1]) > xlim:
                exit_step = i
                break
    return x_arr, dx_arr, exit_step
