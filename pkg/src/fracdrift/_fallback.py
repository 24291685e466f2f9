"""Pure-numpy twins of the compiled inner loops in _native.pyx.

Selected by fracdrift._backend when the extension is unavailable or when
FRACDRIFT_FORCE_FALLBACK=1.  Contracts must match _native exactly; see the
backend parity tests.
"""

from __future__ import annotations

import numpy as np


def march_nodes(nodes, g, c, gamma, sign):
    """Product-integration march on an increasing node set (numpy inner loop)."""
    nodes = np.asarray(nodes, dtype=np.float64)
    g = np.asarray(g, dtype=np.float64)
    n = nodes.shape[0]
    e1 = 1.0 - gamma
    e2 = 2.0 - gamma
    c0 = gamma / 2.0
    c1 = gamma * (gamma + 1.0) / 6.0
    c2 = gamma * (gamma + 1.0) * (gamma + 2.0) / 24.0
    c3 = gamma * (gamma + 1.0) * (gamma + 2.0) * (gamma + 3.0) / 120.0
    b0 = gamma / 3.0
    b1 = gamma * (gamma + 1.0) / 8.0
    b2 = gamma * (gamma + 1.0) * (gamma + 2.0) / 30.0
    b3 = gamma * (gamma + 1.0) * (gamma + 2.0) * (gamma + 3.0) / 144.0

    h = np.empty(n)
    h[0] = g[0]
    for idx in range(1, n):
        tn = nodes[idx]
        acc = 0.0
        if idx >= 2:
            # interior cells j = 0 .. idx-2, right node j+1
            d = nodes[1:idx] - nodes[:idx - 1]
            r1 = tn - nodes[1:idx]
            x = d / r1
            hr = h[1:idx]
            hl = h[:idx - 1]
            far = x <= 0.01
            w = np.where(far, c * r1 ** (-gamma) * d, 0.0)
            p0 = 1.0 - x * (c0 - x * (c1 - x * (c2 - x * c3)))
            p1 = 0.5 - x * (b0 - x * (b1 - x * (b2 - x * b3)))
            contrib = w * (p0 * hr + p1 * (hl - hr))
            near = ~far
            if near.any():
                rl = tn - nodes[:idx - 1]
                m1p = rl[near] ** e1
                m2p = rl[near] ** e2
                m1 = r1[near] ** e1
                m2 = r1[near] ** e2
                I0 = c * (m1p - m1) / e1
                I1 = c * (m2p - m2) / e2
                J1 = I1 - r1[near] * I0
                contrib[near] = I0 * hr[near] + J1 * (hl[near] - hr[near]) / d[near]
            acc = float(contrib.sum())
        d_last = tn - nodes[idx - 1]
        de1 = d_last ** e1
        if idx == 1:
            acc += c * de1 / e1 * h[0]
            diag = 0.0
        else:
            acc += c * de1 / e2 * h[idx - 1]
            diag = c * de1 * (1.0 / e1 - 1.0 / e2)
        h[idx] = (g[idx] - sign * acc) / (1.0 + sign * diag)
    return h


def uniform_steps(hu, gu, rev_w0, rev_w1, pref, wl, diag, sign):
    """Toeplitz-weight uniform-zone march; per-step work is two BLAS dots."""
    m_end = hu.shape[0] - 1
    lmax = rev_w0.shape[0]
    for m in range(1, m_end + 1):
        base = lmax - m + 1
        acc = pref[m] + wl * hu[m - 1]
        if m >= 2:
            acc += np.dot(hu[1:m], rev_w0[base:]) + np.dot(hu[:m - 1], rev_w1[base:])
        hu[m] = (gu[m] - sign * acc) / (1.0 + sign * diag)
    return hu


def coupled_march(dw, q_rows, dy, dt, a_noise, a_drift, xlim):
    """Coupled-system recursion with per-step vectorized lag sums."""
    dw = np.asarray(dw, dtype=np.float64)
    n = dw.shape[0]
    half = q_rows.shape[1] - 1
    x = np.zeros(n + 1)
    dx = np.zeros(n)
    exit_step = -1
    for i in range(n):
        if i > 0:
            dist = np.abs(x[i] - x[1:i + 1])
            pos = dist / dy
            idx = pos.astype(np.intp)
            ok = idx < half
            idx[~ok] = 0
            frac = pos - idx
            rows = np.arange(i - 1, -1, -1)
            q_lo = q_rows[rows, idx]
            q = q_lo + frac * (q_rows[rows, idx + 1] - q_lo)
            acc = float(np.dot(np.where(ok, dx[:i], 0.0), q))
        else:
            acc = 0.0
        dx[i] = a_noise * dw[i] - a_drift * acc * dt
        x[i + 1] = x[i] + dx[i]
        if abs(x[i + 1]) > xlim:
            exit_step = i
            break
    return x, dx, exit_step
