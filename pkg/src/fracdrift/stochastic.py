"""Monte Carlo layer: anomalous-diffusion increments and the coupled system.

The noise process is the stochastic convolution xi(t) = int_0^t F(t-s) db(s)
against the Green function F; paths are sampled as kernel-weighted sums of
Brownian increments (midpoint kernel evaluation, FFT-batched across paths).
Exact second moments come from adaptive panel quadrature of F^2, and the
long-time limit covariance of the rescaled process has its own quadrature.

The coupled particle-field system is simulated in integral (Duhamel) form:
the field is never stored on the fly; the particle history (s_m, X_m, dX_m)
is, and the drift needs only the lagged correlation
Q(tau, d) = (phi * rho_tau * phi)(d), precomputed per lag by FFT. Field
snapshots are reconstructed on demand from the same history.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import fft as sfft

from . import _backend
from .errors import DomainError
from .grids import TimeGrid
from .kernels import KernelSpec, c_gamma, rho_fourier
from .volterra import green_asymptotic_constant, green_function_ml

__all__ = [
    "RngSpec",
    "PathEnsemble",
    "FieldState",
    "brownian_increments",
    "sample_xi_paths",
    "xi_variance_exact",
    "xi_variance_limit",
    "xi_covariance_exact",
    "z_covariance",
    "simulate_coupled",
    "coupled_ensemble",
    "reconstruct_field",
    "h_mass_residual",
]


@dataclass(frozen=True)
class RngSpec:
    """Root seed plus a stream id; every consumer derives child sequences."""

    seed: int
    stream_id: int = 0

    def generator(self, *key: int) -> np.random.Generator:
        seq = np.random.SeedSequence(self.seed,
                                     spawn_key=(self.stream_id, *key))
        return np.random.default_rng(seq)


@dataclass(frozen=True)
class PathEnsemble:
    """Sampled paths, one row per path, columns on the grid nodes."""

    grid: TimeGrid
    paths: np.ndarray
    rng: RngSpec
    label: str

    def __post_init__(self):
        p = np.asarray(self.paths, dtype=np.float64)
        if p.ndim != 2 or p.shape[1] != self.grid.n_steps + 1:
            raise DomainError(
                f"paths must be (n_paths, {self.grid.n_steps + 1}), got {p.shape}"
            )
        if p.shape[0] > 0 and not np.all(p[:, 0] == 0.0):
            raise DomainError("every path must start at 0")
        object.__setattr__(self, "paths", p)

    @property
    def n_paths(self) -> int:
        return self.paths.shape[0]

    def _header(self) -> str:
        return (f"# label={self.label} seed={self.rng.seed} "
                f"stream={self.rng.stream_id} n_paths={self.n_paths} "
                f"dt={self.grid.dt:.12g}\n")

    def to_csv(self, path, max_paths: int = 64) -> None:
        k = min(self.n_paths, max_paths)
        times = self.grid.times()
        with open(path, "w") as fh:
            fh.write(self._header())
            fh.write("t," + ",".join(f"path_{i}" for i in range(k)) + "\n")
            for row, t in enumerate(times):
                vals = ",".join(f"{self.paths[i, row]:.10g}" for i in range(k))
                fh.write(f"{t:.12g},{vals}\n")

    def stats_csv(self, path) -> None:
        times = self.grid.times()
        mean = self.paths.mean(axis=0)
        var = self.paths.var(axis=0, ddof=1) if self.n_paths > 1 \
            else np.zeros_like(mean)
        stderr = np.sqrt(var / max(self.n_paths, 1))
        with open(path, "w") as fh:
            fh.write(self._header())
            fh.write("t,mean,var,stderr\n")
            for i, t in enumerate(times):
                fh.write(f"{t:.12g},{mean[i]:.10g},{var[i]:.10g},{stderr[i]:.10g}\n")


def brownian_increments(grid: TimeGrid, rng: RngSpec) -> np.ndarray:
    """i.i.d. Normal(0, dt) increments, one per grid cell."""
    gen = rng.generator()
    return gen.standard_normal(grid.n_steps) * math.sqrt(grid.dt)


def sample_xi_paths(spec: KernelSpec, grid: TimeGrid, n_paths: int,
                    rng: RngSpec) -> PathEnsemble:
    """Stochastic convolution paths xi_i = sum_{j<i} F((i-j-1/2) dt) dB_j."""
    if n_paths < 1:
        raise DomainError(f"n_paths must be >= 1: {n_paths}")
    n = grid.n_steps
    dt = grid.dt
    fmid = np.asarray(green_function_ml(spec, (np.arange(n) + 0.5) * dt))
    db = np.empty((n_paths, n))
    root = math.sqrt(dt)
    for p in range(n_paths):
        db[p] = rng.generator(p).standard_normal(n) * root
    nfft = sfft.next_fast_len(2 * n)
    conv = sfft.irfft(sfft.rfft(db, nfft, axis=1)
                      * sfft.rfft(fmid, nfft)[None, :], nfft, axis=1)[:, :n]
    paths = np.zeros((n_paths, n + 1))
    paths[:, 1:] = conv
    return PathEnsemble(grid=grid, paths=paths, rng=rng, label="xi")


# ---------------------------------------------------------------------------
# exact second moments
# ---------------------------------------------------------------------------

_GL20_X, _GL20_W = np.polynomial.legendre.leggauss(20)


def _geom_edges(t: float, a0: float = 1e-12, ratio: float = 2.0) -> np.ndarray:
    """Panel edges 0, a0, a0*r, ... capped at t (resolves fast early decay)."""
    edges = [0.0]
    a = a0
    while a < t:
        edges.append(a)
        a *= ratio
    edges.append(t)
    return np.array(edges)


def _panel_quad(f, edges: np.ndarray) -> float:
    lo = edges[:-1][:, None]
    hi = edges[1:][:, None]
    u = 0.5 * (hi - lo) * _GL20_X[None, :] + 0.5 * (hi + lo)
    vals = f(u.ravel()).reshape(u.shape)
    return float(np.sum(0.5 * (hi - lo) * vals * _GL20_W[None, :]))


def xi_variance_exact(spec: KernelSpec, t: float) -> float:
    """Var xi(t) = int_0^t F(s)^2 ds by panel quadrature of the closed form."""
    if t < 0.0:
        raise DomainError(f"xi_variance_exact needs t >= 0: {t:g}")
    if t == 0.0:
        return 0.0
    return _panel_quad(lambda u: np.asarray(green_function_ml(spec, u)) ** 2,
                       _geom_edges(t))


def xi_variance_limit(spec: KernelSpec, t_star: float = 1e4) -> float:
    """lim Var xi(t) for the subdiffusive range: quadrature to t_star plus
    the analytic tail of the squared asymptotic q^2 t^(2g-2)."""
    g = spec.gamma
    if not g < 0.5:
        raise DomainError(
            f"variance plateau exists only for gamma < 1/2, got {g:g}")
    q = green_asymptotic_constant(spec)
    return xi_variance_exact(spec, t_star) \
        + q * q * t_star ** (2.0 * g - 1.0) / (1.0 - 2.0 * g)


def xi_covariance_exact(spec: KernelSpec, s: float, t: float) -> float:
    """Cov(xi(s), xi(t)) = int_0^min F(t-u) F(s-u) du (Ito isometry)."""
    if s < 0.0 or t < 0.0:
        raise DomainError("xi_covariance_exact needs s, t >= 0")
    a, b = min(s, t), max(s, t)
    if a == 0.0:
        return 0.0
    gap = b - a
    return _panel_quad(
        lambda v: np.asarray(green_function_ml(spec, v))
        * np.asarray(green_function_ml(spec, gap + v)),
        _geom_edges(a))


def z_covariance(gamma: float, c: float, s: float, t: float) -> float:
    """Limit covariance q^2 int_0^min (t-u)^(g-1) (s-u)^(g-1) du, with
    q = sin(pi g)/(pi c); closed form on the diagonal."""
    if not 0.5 < gamma < 1.0:
        raise DomainError(f"z_covariance needs gamma in (1/2, 1): {gamma:g}")
    if s < 0.0 or t < 0.0:
        raise DomainError("z_covariance needs s, t >= 0")
    q = math.sin(math.pi * gamma) / (math.pi * c)
    a, b = min(s, t), max(s, t)
    if a == 0.0:
        return 0.0
    if a == b:
        return q * q * a ** (2.0 * gamma - 1.0) / (2.0 * gamma - 1.0)
    # v = min - u, then w = v^g flattens the endpoint singularity
    gap = b - a
    w_top = a ** gamma
    edges = _geom_edges(w_top)[1:]  # drop the zero edge; integrand smooth
    edges = np.concatenate([[0.0], edges])
    val = _panel_quad(
        lambda w: (gap + w ** (1.0 / gamma)) ** (gamma - 1.0), edges)
    return q * q * val / gamma


# ---------------------------------------------------------------------------
# coupled particle-field system
# ---------------------------------------------------------------------------


@dataclass
class FieldState:
    """Spatial setup for the coupled run plus the recorded increment history.

    The mollifier is a Gaussian density of the given width, optionally
    offset; the spatial grid spans [-half_width, half_width) with n_points
    nodes. After a simulation the (time, position, amplitude) history is
    stored here for Duhamel reconstruction of the field.
    """

    half_width: float = 40.0
    n_points: int = 4096
    mollifier_width: float = 1.0
    mollifier_offset: float = 0.0
    times: np.ndarray | None = None
    positions: np.ndarray | None = None
    amplitudes: np.ndarray | None = None

    def __post_init__(self):
        if self.half_width <= 0.0 or self.mollifier_width <= 0.0:
            raise DomainError("half_width and mollifier_width must be > 0")
        if self.n_points < 64 or self.n_points % 2 != 0:
            raise DomainError(f"n_points must be even and >= 64: {self.n_points}")
        if abs(self.mollifier_offset) > self.half_width / 4.0:
            raise DomainError("mollifier_offset too large for the domain")
        mass = float(np.trapezoid(self.mollifier_values(), dx=self.dx))
        if abs(mass - 1.0) > 1e-8:
            raise DomainError(
                f"mollifier mass on the truncated grid is {mass:.12f}, "
                "must be 1 within 1e-8 (enlarge half_width or shrink width)"
            )

    @property
    def dx(self) -> float:
        return 2.0 * self.half_width / self.n_points

    def x_grid(self) -> np.ndarray:
        return (np.arange(self.n_points) - self.n_points // 2) * self.dx

    def wavenumbers(self) -> np.ndarray:
        return 2.0 * math.pi * np.fft.rfftfreq(self.n_points, d=self.dx)

    def mollifier_values(self) -> np.ndarray:
        x = self.x_grid() - self.mollifier_offset
        w = self.mollifier_width
        return np.exp(-0.5 * (x / w) ** 2) / (w * math.sqrt(2.0 * math.pi))

    def mollifier_fourier(self) -> np.ndarray:
        """Continuous-convention transform of the grid mollifier (dx folded in)."""
        return np.fft.rfft(np.fft.ifftshift(self.mollifier_values())) * self.dx


_Q_CACHE: dict = {}


def _q_table(spec: KernelSpec, field: FieldState, dt: float, n_lags: int) -> np.ndarray:
    """Rows Q(l*dt, d) for lags l = 1..n_lags, on d = 0..(m/2)*dx."""
    key = (spec.family, spec.gamma, field.half_width, field.n_points,
           field.mollifier_width, round(dt, 15), n_lags)
    q = _Q_CACHE.get(key)
    if q is not None:
        return q
    k = field.wavenumbers()
    phi2 = np.abs(field.mollifier_fourier()) ** 2
    half = field.n_points // 2 + 1
    q = np.empty((n_lags, half))
    # continuous-convention inverse transform needs the extra 1/dx on irfft
    for lag in range(1, n_lags + 1):
        hat = rho_fourier(spec, lag * dt, k) * phi2
        q[lag - 1] = np.fft.irfft(hat, field.n_points)[:half] / field.dx
    _Q_CACHE[key] = q
    return q


def simulate_coupled(spec: KernelSpec, lam: float, field: FieldState,
                     grid: TimeGrid, rng: RngSpec,
                     snapshot_times=None):
    """One coupled path in original variables.

    Step i: dX_i = lam^(1/2g) dw_i + lam^(1/g - 1) <phi_X, h_i> dt, with the
    field pairing evaluated through the lag-correlation table. Returns the
    particle path and, if snapshot_times given, reconstructed field arrays
    per requested time. The increment history is stored on the field state.
    Raises DomainError if the particle leaves [-half_width/2, half_width/2].
    """
    if not 0.0 < lam < 1.0:
        raise DomainError(f"lambda must be in (0, 1): {lam:g}")
    g = spec.gamma
    n = grid.n_steps
    dt = grid.dt
    dw = rng.generator().standard_normal(n) * math.sqrt(dt)
    q = _q_table(spec, field, dt, n)
    a_noise = lam ** (1.0 / (2.0 * g))
    a_drift = lam ** (1.0 / g - 1.0)
    x, dx_hist, exit_step = _backend.coupled_march(
        dw, q, field.dx, dt, a_noise, a_drift, field.half_width / 2.0)
    if exit_step >= 0:
        raise DomainError(
            f"particle exited [-{field.half_width / 2:g}, {field.half_width / 2:g}] "
            f"at t={exit_step * dt:g}; enlarge the spatial domain"
        )
    field.times = np.arange(n) * dt
    field.positions = x[1:n + 1].copy()
    field.amplitudes = dx_hist
    snapshots = None
    if snapshot_times is not None:
        snapshots = {float(ts): reconstruct_field(spec, field, float(ts))
                     for ts in snapshot_times}
    return x, snapshots


_ROWS_CACHE: dict = {}


def _rho_rows(spec: KernelSpec, taus: np.ndarray, k: np.ndarray) -> np.ndarray:
    """Matrix rho_hat(tau_j, k_i); cached since every path of an ensemble
    reconstructs at the same horizon on the same lag grid."""
    key = (spec.family, spec.gamma, k.size, float(k[-1]), taus.tobytes())
    rows = _ROWS_CACHE.get(key)
    if rows is None:
        rows = np.empty((taus.size, k.size))
        for j, tau in enumerate(taus):
            rows[j] = rho_fourier(spec, float(tau), k)
        if len(_ROWS_CACHE) > 16:
            _ROWS_CACHE.clear()
        _ROWS_CACHE[key] = rows
    return rows


def reconstruct_field(spec: KernelSpec, field: FieldState, t: float,
                      n_points: int | None = None,
                      half_width: float | None = None) -> np.ndarray:
    """Duhamel field h(t, .) = -sum_m dX_m (rho_{t-s_m} * phi_{X_m}),
    returned on the centered spatial grid (optionally on a different
    window or resolution, e.g. widened to capture late-time spreading)."""
    if field.times is None:
        raise DomainError("field has no recorded increments yet")
    m = field.n_points if n_points is None else n_points
    width = field.half_width if half_width is None else half_width
    dx = 2.0 * width / m
    k = 2.0 * math.pi * np.fft.rfftfreq(m, d=dx)
    w = field.mollifier_width
    # analytic Gaussian transform; the offset shifts every center equally
    phi_hat = np.exp(-0.5 * (w * k) ** 2)
    keep = field.times < t
    if not keep.any():
        return np.zeros(m)
    pos = field.positions[keep] + field.mollifier_offset
    amp = field.amplitudes[keep]
    rows = _rho_rows(spec, t - field.times[keep], k)
    phase = np.exp(-1j * np.outer(pos, k))
    hat = -(amp[:, None] * rows * phase).sum(axis=0) * phi_hat
    return np.fft.fftshift(np.fft.irfft(hat, m)) / dx


def h_mass_residual(spec: KernelSpec, field: FieldState, t: float,
                    n_points: int | None = None,
                    half_width: float | None = None) -> float:
    """|trapz h(t,.) + sum dX| on a reconstruction grid: the Duhamel mass
    identity int h = -int dX, degraded only by mollifier truncation and
    window leakage.

    The default window widens with the kernel spread t^gamma so the
    stretched-exponential tails are captured; heavy-tailed families need a
    caller-chosen (much larger) window to reach tight tolerances.
    """
    if half_width is None:
        half_width = field.half_width \
            + 16.0 * (t ** spec.gamma + field.mollifier_width)
    if n_points is None:
        # keep dx at or below 0.5 so early narrow contributions resolve
        n_points = 1 << max(int(4.0 * half_width) - 1, 64).bit_length()
    h = reconstruct_field(spec, field, t, n_points=n_points,
                          half_width=half_width)
    dx = 2.0 * half_width / n_points
    keep = field.times < t
    drift_total = float(np.sum(field.amplitudes[keep]))
    return abs(float(np.trapezoid(h, dx=dx)) + drift_total)


def coupled_ensemble(spec: KernelSpec, lam: float, grid: TimeGrid,
                     rng: RngSpec, n_paths: int,
                     field_template: FieldState | None = None,
                     threads: int | None = None,
                     mass_check: bool = True):
    """Independent coupled paths with per-path derived rng streams.

    Returns (PathEnsemble, mass_residuals): residuals are per-path Duhamel
    mass defects at t_end (nan when mass_check is off). Paths are
    reproducible per (seed, stream_id, path index) regardless of threading.
    """
    if n_paths < 1:
        raise DomainError(f"n_paths must be >= 1: {n_paths}")
    template = field_template if field_template is not None else FieldState()
    # build the shared lag table once before workers race for it
    _q_table(spec, template, grid.dt, grid.n_steps)
    paths = np.zeros((n_paths, grid.n_steps + 1))
    residuals = np.full(n_paths, np.nan)

    def run_one(p: int) -> None:
        f = FieldState(half_width=template.half_width,
                       n_points=template.n_points,
                       mollifier_width=template.mollifier_width,
                       mollifier_offset=template.mollifier_offset)
        x, _ = simulate_coupled(spec, lam, f, grid, _path_rng(rng, p))
        paths[p] = x
        if mass_check:
            residuals[p] = h_mass_residual(spec, f, grid.t_end)

    if threads is not None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run_one, range(n_paths)))
    else:
        for p in range(n_paths):
            run_one(p)
    ens = PathEnsemble(grid=grid, paths=paths, rng=rng, label="coupled")
    return ens, residuals


def _path_rng(rng: RngSpec, p: int) -> RngSpec:
    """Derived spec whose root generator equals rng.generator(p)."""
    return _DerivedRng(rng.seed, rng.stream_id, p)


@dataclass(frozen=True)
class _DerivedRng(RngSpec):
    path_index: int = 0

    def generator(self, *key: int) -> np.random.Generator:
        seq = np.random.SeedSequence(
            self.seed, spawn_key=(self.stream_id, self.path_index, *key))
        return np.random.default_rng(seq)
