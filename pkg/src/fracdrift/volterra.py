"""Linear Volterra equations of the second kind with t^-g convolution kernels.

Solves h(t) + sign * int_0^t c (t-s)^-g h(s) ds = g(t) by second-order
product integration: the smooth factor h is piecewise linear, the singular
factor is integrated exactly per cell. The time range splits into a graded
startup zone (node density concentrated at the singularity, merged with the
user grid) marched directly, and a uniform zone driven by Toeplitz lag
weights so long horizons stay O(n^2) scalar operations with small constants.

The Green function F of the memory kernel, its Mittag-Leffler closed form,
the Tauberian long-time constant and the signed Neumann resolvent series
live here too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .errors import DomainError
from .grids import TimeGrid
from .kernels import KernelSpec, _mainardi_c, c_gamma
from .specfun import mittag_leffler

__all__ = [
    "VolterraProblem",
    "GreenTable",
    "solve_volterra",
    "green_function",
    "green_function_ml",
    "green_asymptotic_constant",
    "resolvent_series",
]

# startup zone: at least this much time, and at least this many user cells,
# resolved by the graded mesh before the uniform recursion takes over
_PREFIX_TIME = 0.32
_PREFIX_CELLS = 32
# lag beyond which the series form of the weights replaces the exact
# power-difference form (cancellation grows ~ lag in the exact form)
_SERIES_LAG = 100
# terms in the far-field moment expansion of the prefix contribution
_MOMENT_TERMS = 45


@dataclass(frozen=True)
class VolterraProblem:
    """h(t) + sign * int_0^t c (t-s)^-gamma h(s) ds = g(t) on a TimeGrid."""

    c: float
    gamma: float
    sign: int
    grid: TimeGrid
    forcing: np.ndarray

    def __post_init__(self):
        if not 0.0 < self.gamma < 1.0:
            raise DomainError(
                f"kernel exponent needs gamma in (0, 1), got {self.gamma:g} "
                "(gamma >= 1 is a non-integrable singularity)"
            )
        if self.c < 0.0:
            raise DomainError(f"kernel coefficient must be >= 0: {self.c:g}")
        if self.sign not in (-1, 1):
            raise DomainError(f"sign must be +1 or -1: {self.sign!r}")
        g = np.asarray(self.forcing, dtype=np.float64)
        if g.shape != (self.grid.n_steps + 1,):
            raise DomainError(
                f"forcing needs {self.grid.n_steps + 1} samples "
                f"(grid nodes incl. t=0), got shape {g.shape}"
            )
        if not np.all(np.isfinite(g)):
            raise DomainError("forcing contains non-finite samples")
        object.__setattr__(self, "forcing", g)


@dataclass(frozen=True)
class GreenTable:
    """Green function samples F(t_i) with the scheme that produced them."""

    spec: KernelSpec
    grid: TimeGrid
    values: np.ndarray
    scheme: dict

    def to_csv(self, path) -> None:
        times = self.grid.times()
        with open(path, "w") as fh:
            fh.write(f"# family={self.spec.family} gamma={self.spec.gamma:.12g} "
                     f"dt={self.grid.dt:.12g}\n")
            fh.write("t,F\n")
            for t, v in zip(times, self.values):
                fh.write(f"{t:.12g},{v:.15g}\n")


def _graded_nodes(t_pre: float, gamma: float, dt: float) -> np.ndarray:
    J = max(int(320 * (1e-2 / dt) ** 0.9), 160)
    q = max(2.0 / (1.0 - gamma), 3.0)
    return t_pre * (np.arange(J + 1) / J) ** q


def _cell_quadrature(nodes: np.ndarray, h: np.ndarray, c: float, gamma: float,
                     t: float) -> float:
    """int_0^nodes[-1] c (t-s)^-gamma h_lin(s) ds for a target t > nodes[-1]."""
    e1, e2 = 1.0 - gamma, 2.0 - gamma
    d = np.diff(nodes)
    r1 = t - nodes[1:]
    hl, hr = h[:-1], h[1:]
    x = d / r1
    g0 = gamma / 2.0
    g1 = gamma * (gamma + 1.0) / 6.0
    g2 = gamma * (gamma + 1.0) * (gamma + 2.0) / 24.0
    g3 = gamma * (gamma + 1.0) * (gamma + 2.0) * (gamma + 3.0) / 120.0
    b0 = gamma / 3.0
    b1 = gamma * (gamma + 1.0) / 8.0
    b2 = gamma * (gamma + 1.0) * (gamma + 2.0) / 30.0
    b3 = gamma * (gamma + 1.0) * (gamma + 2.0) * (gamma + 3.0) / 144.0
    w = c * r1 ** (-gamma) * d
    p0 = 1.0 - x * (g0 - x * (g1 - x * (g2 - x * g3)))
    p1 = 0.5 - x * (b0 - x * (b1 - x * (b2 - x * b3)))
    far = w * (p0 * hr + p1 * (hl - hr))
    r0 = r1 + d
    I0 = c * (r0 ** e1 - r1 ** e1) / e1
    I1 = c * (r0 ** e2 - r1 ** e2) / e2
    J1 = I1 - r1 * I0
    with np.errstate(invalid="ignore", divide="ignore"):
        near = I0 * hr + J1 * (hl - hr) / d
    return float(np.sum(np.where(x <= 0.01, far, near)))


def _prefix_moments(nodes: np.ndarray, h: np.ndarray, t_pre: float) -> np.ndarray:
    """Scaled moments mu_k = int_0^tP h(s) (s/tP)^k ds, piecewise linear h."""
    a = nodes[:-1] / t_pre
    b = nodes[1:] / t_pre
    d = nodes[1:] - nodes[:-1]
    with np.errstate(invalid="ignore", divide="ignore"):
        slope = np.where(d > 0.0, (h[1:] - h[:-1]) / d, 0.0)
    A = h[:-1] - slope * nodes[:-1]
    ks = np.arange(_MOMENT_TERMS)
    pa = a[:, None] ** (ks[None, :] + 1)
    pb = b[:, None] ** (ks[None, :] + 1)
    term1 = A[:, None] * (pb - pa) / (ks[None, :] + 1.0)
    term2 = (slope * t_pre)[:, None] * (pb * b[:, None] - pa * a[:, None]) \
        / (ks[None, :] + 2.0)
    return t_pre * np.sum(term1 + term2, axis=0)


def _uniform_lag_weights(c: float, gamma: float, dt: float, lmax: int):
    """Toeplitz weights (W0, W1) for lags 1..lmax at uniform spacing dt."""
    e1, e2 = 1.0 - gamma, 2.0 - gamma
    lag = np.arange(1, lmax + 1, dtype=np.float64)
    r1 = lag * dt
    r0 = r1 + dt
    I0 = c * (r0 ** e1 - r1 ** e1) / e1
    I1 = c * (r0 ** e2 - r1 ** e2) / e2
    J1 = I1 - r1 * I0
    w0 = I0 - J1 / dt
    w1 = J1 / dt
    far = lag >= _SERIES_LAG
    if far.any():
        x = 1.0 / lag[far]
        g0 = gamma / 2.0
        g1 = gamma * (gamma + 1.0) / 6.0
        g2 = gamma * (gamma + 1.0) * (gamma + 2.0) / 24.0
        g3 = gamma * (gamma + 1.0) * (gamma + 2.0) * (gamma + 3.0) / 120.0
        b0 = gamma / 3.0
        b1 = gamma * (gamma + 1.0) / 8.0
        b2 = gamma * (gamma + 1.0) * (gamma + 2.0) / 30.0
        b3 = gamma * (gamma + 1.0) * (gamma + 2.0) * (gamma + 3.0) / 144.0
        w = c * r1[far] ** (-gamma) * dt
        p0 = 1.0 - x * (g0 - x * (g1 - x * (g2 - x * g3)))
        p1 = 0.5 - x * (b0 - x * (b1 - x * (b2 - x * b3)))
        w0[far] = w * (p0 - p1)
        w1[far] = w * p1
    return w0, w1


def solve_volterra(p: VolterraProblem) -> np.ndarray:
    """Solution samples h on the problem grid (length n_steps + 1)."""
    grid = p.grid
    dt = grid.dt
    n = grid.n_steps
    times = grid.times()
    c, gamma, sign = p.c, p.gamma, p.sign

    i_pre = max(int(math.ceil(_PREFIX_TIME / dt - 1e-12)), _PREFIX_CELLS)
    if i_pre >= n:
        # short horizon: the graded mesh covers everything
        nodes = np.union1d(_graded_nodes(times[-1], gamma, dt), times)
        g_nodes = np.interp(nodes, times, p.forcing)
        h_nodes = _backend.march_nodes(nodes, g_nodes, c, gamma, sign)
        idx = np.searchsorted(nodes, times)
        return np.ascontiguousarray(h_nodes[idx])

    t_pre = i_pre * dt
    user_pre = times[: i_pre + 1]
    nodes = np.union1d(_graded_nodes(t_pre, gamma, dt), user_pre)
    g_nodes = np.interp(nodes, times, p.forcing)
    h_nodes = _backend.march_nodes(nodes, g_nodes, c, gamma, sign)

    h = np.empty(n + 1)
    h[: i_pre + 1] = h_nodes[np.searchsorted(nodes, user_pre)]

    # prefix contribution to each uniform target: direct quadrature while the
    # prefix subtends a wide angle, moment expansion once t >= 2 tP
    m_count = n - i_pre
    u_times = times[i_pre:]
    pref = np.zeros(m_count + 1)
    mu = _prefix_moments(nodes, h_nodes, t_pre)
    coef = np.empty(_MOMENT_TERMS)
    coef[0] = 1.0
    for k in range(1, _MOMENT_TERMS):
        coef[k] = coef[k - 1] * (gamma + k - 1.0) / k
    far = u_times >= 2.0 * t_pre
    if far.any():
        uf = u_times[far]
        ratio = t_pre / uf
        powers = np.ones_like(uf)
        acc = np.zeros_like(uf)
        for k in range(_MOMENT_TERMS):
            acc += coef[k] * mu[k] * powers
            powers *= ratio
        pref[far] = c * uf ** (-gamma) * acc
    for m in range(1, m_count + 1):
        if not far[m]:
            pref[m] = _cell_quadrature(nodes, h_nodes, c, gamma, u_times[m])

    w0, w1 = _uniform_lag_weights(c, gamma, dt, max(m_count - 1, 1))
    de1 = dt ** (1.0 - gamma)
    wl = c * de1 / (2.0 - gamma)
    diag = c * de1 * (1.0 / (1.0 - gamma) - 1.0 / (2.0 - gamma))
    hu = h[i_pre:]
    gu = np.ascontiguousarray(p.forcing[i_pre:])
    _backend.uniform_steps(hu, gu, w0[::-1].copy(), w1[::-1].copy(), pref,
                           wl, diag, sign)
    return h


def green_function(spec: KernelSpec, grid: TimeGrid) -> GreenTable:
    """Green function table: F(t) + int_0^t c(g) (t-s)^-g F(s) ds = 1."""
    forcing = np.ones(grid.n_steps + 1)
    problem = VolterraProblem(c=c_gamma(spec), gamma=spec.gamma, sign=+1,
                              grid=grid, forcing=forcing)
    F = solve_volterra(problem)
    if __debug__:
        assert F[0] == 1.0
        assert np.all(F > 0.0) and np.all(F <= 1.0)
        assert np.all(np.diff(F) <= 1e-12)
    scheme = {"order": 2, "dt": grid.dt, "backend": _backend.BACKEND}
    return GreenTable(spec=spec, grid=grid, values=F, scheme=scheme)


def green_function_ml(spec: KernelSpec, t):
    """Grid-free Green function via the Mittag-Leffler closed form."""
    arr = np.asarray(t, dtype=np.float64)
    if np.any(arr < 0.0):
        raise DomainError("green_function_ml needs t >= 0")
    g = spec.gamma
    lam = c_gamma(spec) * math.gamma(1.0 - g)
    return mittag_leffler(1.0 - g, -lam * arr ** (1.0 - g))


def green_asymptotic_constant(spec: KernelSpec) -> float:
    """Long-time constant q(g): t^(1-g) F(t) -> sin(pi g) / (pi c(g))."""
    return math.sin(math.pi * spec.gamma) / (math.pi * c_gamma(spec))


def resolvent_series(gamma: float, n_terms: int, t: float, grid: TimeGrid) -> float:
    """Partial sum of the signed Neumann series of iterated kernels at t.

    Terms beyond the first whose sup over the positive grid times falls
    below 1e-10 are dropped (the series is a cross-check for the marching
    solver, not a production evaluator; the solution satisfies
    h = g + H * g for the sign=+1 problem).
    """
    if not 0.0 < gamma < 1.0:
        raise DomainError(f"resolvent_series needs gamma in (0, 1): {gamma:g}")
    if n_terms < 1:
        raise DomainError(f"resolvent_series needs n_terms >= 1: {n_terms}")
    if t <= 0.0:
        raise DomainError(f"resolvent_series needs t > 0: {t:g}")
    c = _mainardi_c(gamma)
    total = 0.0
    for m in range(1, n_terms + 1):
        # m factors of K; the m=1 term is the kernel itself
        coeff = c ** m * math.gamma(1.0 - gamma) ** m / math.gamma(m * (1.0 - gamma))
        expo = m * (1.0 - gamma) - 1.0
        total += (-1.0) ** m * coeff * float(t) ** expo
        sup = coeff * max(grid.dt ** expo, grid.t_end ** expo)
        if sup < 1e-10:
            break
    return total
