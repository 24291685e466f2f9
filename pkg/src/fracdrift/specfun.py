"""Special functions for the anomalous-diffusion kernels.

Real Gamma with reflection, the entire reciprocal Gamma, the one-parameter
Mittag-Leffler function on the negative axis, and the Mainardi function
M(z, gamma).  Everything vectorizes over the main argument; scalar inputs
give scalar outputs.

The Mittag-Leffler evaluator is three-branch: compensated power series for
small arguments, the divergent tail expansion at optimal truncation when
its smallest term certifies the target accuracy, and a spectral-integral
quadrature in between.  The Mainardi evaluator is zoned per gamma: float64
series while it retains >= 6 significant digits, a log-domain spline built
from high-precision summation past that, and the calibrated
stretched-exponential tail A z^a exp(-B z^b) beyond the handoff point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special
from scipy.interpolate import CubicSpline

from .errors import DomainError, PoleError, PrecisionError
from .policies import DEFAULT_POLICY, SeriesPolicy

__all__ = [
    "gamma_real",
    "reciprocal_gamma",
    "mittag_leffler",
    "mittag_leffler_wide",
    "mainardi",
]


def _scalar_ok(x) -> bool:
    return np.ndim(x) == 0


def gamma_real(x: float) -> float:
    """Euler Gamma on the reals; negative non-integers via reflection."""
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"Gamma pole at nonpositive integer x={x:g}")
    if x > 0.0:
        return math.gamma(x)
    # reflection: Gamma(x) = pi / (sin(pi x) * Gamma(1 - x))
    return math.pi / (math.sin(math.pi * x) * math.gamma(1.0 - x))


def reciprocal_gamma(x):
    """Entire function 1/Gamma; exactly 0 at nonpositive integers."""
    arr = np.asarray(x, dtype=np.float64)
    out = special.rgamma(arr)
    # rgamma already returns 0.0 at the poles; pin it exactly in case of
    # platform quirks with signed zeros
    pole = (arr <= 0.0) & (arr == np.floor(arr))
    out = np.where(pole, 0.0, out)
    return float(out) if _scalar_ok(x) else out


# ---------------------------------------------------------------------------
# Mittag-Leffler on the negative real axis
# ---------------------------------------------------------------------------

# Frozen panel edges (log u, scaled by alpha) for the spectral branch, and
# the Gauss-Legendre rule shared by all panels.
_S_EDGES = np.array([-9.0, -6.0, -4.0, -2.5, -1.5, -0.8, -0.3, 0.2, 0.7, 1.3,
                     2.0, 2.9, 4.0, 5.3, 6.72])
_GL_X, _GL_W = np.polynomial.legendre.leggauss(28)
_ASYM_K = np.arange(1, 41)


def _ml_series(alpha: float, y: np.ndarray, rel_tol: float, max_terms: int) -> np.ndarray:
    """Compensated series sum of E_alpha(-y); y >= 0 elementwise."""
    s = np.zeros_like(y)
    comp = np.zeros_like(y)
    term = np.ones_like(y)
    converged = False
    for k in range(1, max_terms + 1):
        t = term - comp
        tt = s + t
        comp = (tt - s) - t
        s = tt
        term = term * (-y) * (special.gamma(alpha * (k - 1) + 1.0)
                              * special.rgamma(alpha * k + 1.0))
        if k > 8 and np.all(np.abs(term) <= 0.1 * rel_tol * np.abs(s)):
            converged = True
            break
    if not converged:
        raise PrecisionError(
            f"Mittag-Leffler series not converged in {max_terms} terms (alpha={alpha:g})"
        )
    return s


def _ml_asym(alpha: float, y: np.ndarray):
    """Divergent tail expansion at optimal truncation; returns (sum, min term)."""
    rg = special.rgamma(1.0 - alpha * _ASYM_K)
    terms = (-1.0) ** (_ASYM_K - 1) * y[:, None] ** (-_ASYM_K.astype(float)) * rg[None, :]
    at = np.abs(terms)
    at = np.where(at == 0.0, np.nan, at)
    stop = np.nanargmin(at, axis=1)
    keep = np.arange(len(_ASYM_K))[None, :] <= stop[:, None]
    ssum = np.where(keep, terms, 0.0).sum(axis=1)
    err = np.take_along_axis(np.where(np.isnan(at), 0.0, at), stop[:, None], axis=1)[:, 0]
    return ssum, err


def _ml_spectral(alpha: float, y: np.ndarray) -> np.ndarray:
    """Spectral-density integral on log-spaced panels pinned to u_c = 1/y."""
    X = y ** (1.0 / alpha)
    uc = 1.0 / y
    edges_rel = np.exp(alpha * np.concatenate([[-30.0, -18.0, -13.0], _S_EDGES]))
    edges = np.concatenate([np.zeros((y.size, 1)), uc[:, None] * edges_rel[None, :]],
                           axis=1)
    ca = math.cos(alpha * math.pi)
    lo = edges[:, :-1][:, :, None]
    hi = edges[:, 1:][:, :, None]
    u = 0.5 * (hi - lo) * _GL_X[None, None, :] + 0.5 * (hi + lo)
    z = X[:, None, None] * u ** (1.0 / alpha)
    g = np.where(z < 720.0, np.exp(-np.minimum(z, 720.0)), 0.0) \
        / (u * u + 2.0 * ca * u + 1.0)
    val = (0.5 * (hi - lo) * g * _GL_W[None, None, :]).sum(axis=(1, 2))
    return math.sin(alpha * math.pi) / (alpha * math.pi) * val


def _ml_neg(alpha: float, y: np.ndarray, policy: SeriesPolicy) -> np.ndarray:
    """E_alpha(-y) for alpha in (0, 1), vectorized over y >= 0."""
    out = np.ones_like(y)
    pos = y > 0.0
    if not pos.any():
        return out
    yp = y[pos]
    res = np.empty_like(yp)
    crossover = policy.asymptotic_crossover_z if policy.asymptotic_crossover_z is not None else 6.0
    ser = yp ** (1.0 / alpha) <= crossover
    if ser.any():
        res[ser] = _ml_series(alpha, yp[ser], policy.rel_tol, policy.max_terms)
    big = ~ser
    if big.any():
        yb = yp[big]
        asum, aerr = _ml_asym(alpha, yb)
        ok = aerr <= 1e-12 * np.abs(asum)
        vals = np.where(ok, asum, 0.0)
        if (~ok).any():
            vals[~ok] = _ml_spectral(alpha, yb[~ok])
        res[big] = vals
    out[pos] = res
    return out


def _ml_neg_wide(beta: float, y: np.ndarray, policy: SeriesPolicy) -> np.ndarray:
    """E_beta(-y) for beta in (1, 2): series plus oscillatory tail branch."""
    out = np.ones_like(y)
    pos = y > 0.0
    if not pos.any():
        return out
    yp = y[pos]
    res = np.empty_like(yp)
    X = yp ** (1.0 / beta)
    ser = X <= 14.0
    if ser.any():
        res[ser] = _ml_series(beta, yp[ser], policy.rel_tol,
                              max(policy.max_terms, 600))
    big = ~ser
    if big.any():
        asum, _ = _ml_asym(beta, yp[big])
        Xb = X[big]
        # the conjugate pair of exponential modes survives for beta > 1
        osc = (2.0 / beta) * np.exp(Xb * math.cos(math.pi / beta)) \
            * np.cos(Xb * math.sin(math.pi / beta))
        res[big] = asum + osc
    out[pos] = res
    return out


def mittag_leffler(alpha: float, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """E_alpha(x) for alpha in (0, 1] and x <= 0."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"mittag_leffler needs alpha in (0, 1]: {alpha:g}")
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr > 0.0):
        raise DomainError("mittag_leffler is restricted to x <= 0")
    y = -np.atleast_1d(arr)
    if alpha == 1.0:
        out = np.exp(-y)
    elif alpha == 0.5:
        # classical identity E_{1/2}(-y) = exp(y^2) erfc(y)
        out = special.erfcx(y)
    else:
        out = _ml_neg(alpha, y, policy)
    return float(out[0]) if _scalar_ok(x) else out.reshape(np.shape(x))


def mittag_leffler_wide(beta: float, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """E_beta(x) for beta in (1, 2) and x <= 0 (Fourier transform of the
    time-fractional kernel in the superdiffusive range needs this)."""
    if not 1.0 < beta < 2.0:
        raise DomainError(f"mittag_leffler_wide needs beta in (1, 2): {beta:g}")
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr > 0.0):
        raise DomainError("mittag_leffler_wide is restricted to x <= 0")
    out = _ml_neg_wide(beta, -np.atleast_1d(arr), policy)
    return float(out[0]) if _scalar_ok(x) else out.reshape(np.shape(x))


# ---------------------------------------------------------------------------
# Mainardi function
# ---------------------------------------------------------------------------


def _tail_params(gamma: float):
    """Fixed tail exponents: M ~ A z^a exp(-B z^b); B_th guides the scan only."""
    b = 1.0 / (1.0 - gamma)
    a = (2.0 * gamma - 1.0) / (2.0 * (1.0 - gamma))
    B_th = (1.0 - gamma) * gamma ** (gamma / (1.0 - gamma))
    return a, b, B_th


def _mainardi_series(gamma: float, z: np.ndarray, max_terms: int = 700):
    """Compensated alternating series; returns (value, max |term|, dead mask)."""
    s = np.zeros_like(z)
    comp = np.zeros_like(z)
    p = np.ones_like(z)
    dead = np.zeros(z.shape, bool)
    mx = np.full_like(z, abs(special.rgamma(1.0 - gamma)))
    consec = np.zeros(z.shape, int)
    for k in range(0, max_terms):
        rg = special.rgamma(1.0 - gamma * (k + 1))
        # p underflowed to zero means the true term is far below any retained
        # scale even if rg overflowed; only a nonfinite product with p != 0
        # marks genuine float failure
        with np.errstate(invalid="ignore", over="ignore"):
            term = np.where(p == 0.0, 0.0, p * rg)
        bad = ~np.isfinite(term)
        if bad.any():
            dead |= bad
            term = np.where(bad, 0.0, term)
        t = term - comp
        tt = s + t
        comp = (tt - s) - t
        s = tt
        mx = np.maximum(mx, np.abs(term))
        small = np.abs(term) <= 1e-17 * np.maximum(np.abs(s), 1e-280)
        consec = np.where(small, consec + 1, 0)
        if np.all((consec >= 14) | dead):
            break
        p = p * (-z) / (k + 1)
        pbad = ~np.isfinite(p)
        if pbad.any():
            dead |= pbad
            p = np.where(pbad, 0.0, p)
    return s, mx, dead


def _mainardi_mp(z: float, gamma: float) -> float:
    """High-precision series value, digits sized to the largest term."""
    import mpmath as mp

    _, b, B_th = _tail_params(gamma)
    ln_mx = B_th * z ** b + z + 10.0
    dps = 45 + int(0.5 * ln_mx)
    with mp.workdps(dps):
        zz = mp.mpf(z)
        s = mp.mpf(0)
        p = mp.mpf(1)
        consec = 0
        for k in range(100000):
            term = p * mp.rgamma(1 - mp.mpf(gamma) * (k + 1))
            s += term
            if abs(term) < mp.mpf(10) ** (-dps) * (abs(s) + 1):
                consec += 1
                if consec >= 20:
                    break
            else:
                consec = 0
            p = p * (-zz) / (k + 1)
        return float(s)


def _series_crossover(gamma: float) -> float:
    """Largest z where float-series noise keeps >= 6 significant digits."""
    _, b, B_th = _tail_params(gamma)
    zmax = (23.0 / (2.0 * B_th)) ** (1.0 / b) * 1.6 + 2.0
    zs = np.linspace(0.5, zmax, 300)
    vals, mx, dead = _mainardi_series(gamma, zs)
    good = (~dead) & (2e-16 * mx <= 1e-6 * np.abs(vals))
    idx = int(np.argmax(~good)) if (~good).any() else len(zs) - 1
    return float(zs[max(idx - 1, 0)])


@dataclass
class _MainardiTable:
    gamma: float
    z_series: float
    z_hand: float
    a: float
    b: float
    A: float
    B: float
    log_spline: CubicSpline | None

    def tail_integral(self, n: int = 0, z_from: float | None = None) -> float:
        """int_{z_from}^inf z^n A z^a exp(-B z^b) dz in closed form."""
        z0 = self.z_hand if z_from is None else z_from
        s = (self.a + n + 1.0) / self.b
        return (self.A / self.b * self.B ** (-s) * math.gamma(s)
                * float(special.gammaincc(s, self.B * z0 ** self.b)))


_TABLES: dict[tuple, _MainardiTable] = {}


def _build_table(gamma: float, policy: SeriesPolicy) -> _MainardiTable:
    a, b, B_th = _tail_params(gamma)
    forced = policy.asymptotic_crossover_z
    z_auto = _series_crossover(gamma)
    if forced is not None:
        zstar = float(forced)
        probe, mx, dead = _mainardi_series(gamma, np.array([zstar]), policy.max_terms)
        if dead.any() or 2e-16 * mx[0] > 1e-6 * abs(probe[0]):
            raise PrecisionError(
                f"series cancellation exhausts float64 before z={zstar:g} "
                f"(safe crossover for gamma={gamma:g} is z*={z_auto:.2f})"
            )
        # two-zone mode: tail calibrated on the decade below the forced
        # crossover from the float series itself
        zf = np.geomspace(zstar / 10.0, zstar, 60)
        vals, _, _ = _mainardi_series(gamma, zf, policy.max_terms)
        y = np.log(np.abs(vals)) - a * np.log(zf)
        X = np.column_stack([np.ones_like(zf), -zf ** b])
        coef, *_ = np.linalg.lstsq(X, y, rcond=None)
        A_fit = float(np.exp(coef[0]))
        B_fit = float(coef[1])
        ref = float(vals[-1])
        A_fit *= ref / (A_fit * zstar ** a * math.exp(-B_fit * zstar ** b))
        return _MainardiTable(gamma, zstar, zstar, a, b, A_fit, B_fit, None)

    # auto mode: high-precision bridge zone between z* and the handoff z_h,
    # chosen so the remaining tail mass is <= 1e-8
    def mass_est(z: float) -> float:
        m = _mainardi_mp(z, gamma) if z > z_auto else float(
            _mainardi_series(gamma, np.array([z]))[0][0])
        return m / (B_th * b * z ** (b - 1.0))

    zh = z_auto
    while mass_est(zh) > 1e-8:
        zh *= 1.06
    u2 = np.linspace(z_auto ** b, zh ** b, 120)
    z2 = u2 ** (1.0 / b)
    vals2 = np.array([_mainardi_mp(z, gamma) for z in z2])
    log_spline = CubicSpline(u2, np.log(vals2))
    # tail fit on the decade below z_h where the decay is already developed,
    # then rescaled to match the bridge value exactly at z_h
    Y2 = B_th * u2
    mask = (Y2 >= 1.5) & (z2 >= zh / 10.0)
    if mask.sum() < 8:
        mask = z2 >= 0.75 * zh
    y = np.log(vals2[mask]) - a * np.log(z2[mask])
    X = np.column_stack([np.ones_like(u2[mask]), -u2[mask]])
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    A_fit = float(np.exp(coef[0]))
    B_fit = float(coef[1])
    A_fit *= float(vals2[-1]) / (A_fit * zh ** a * math.exp(-B_fit * zh ** b))
    return _MainardiTable(gamma, z_auto, zh, a, b, A_fit, B_fit, log_spline)


def _mainardi_table(gamma: float, policy: SeriesPolicy = DEFAULT_POLICY) -> _MainardiTable:
    key = (round(gamma, 12), policy.rel_tol, policy.max_terms,
           policy.asymptotic_crossover_z)
    tab = _TABLES.get(key)
    if tab is None:
        tab = _build_table(gamma, policy)
        _TABLES[key] = tab
    return tab


def mainardi(z, gamma: float, policy: SeriesPolicy = DEFAULT_POLICY):
    """Mainardi function M(z, gamma) for z >= 0, gamma in (0, 1)."""
    if not 0.0 < gamma < 1.0:
        raise DomainError(f"mainardi needs gamma in (0, 1): {gamma:g}")
    arr = np.asarray(z, dtype=np.float64)
    if np.any(arr < 0.0):
        raise DomainError("mainardi is restricted to z >= 0")
    zv = np.atleast_1d(arr)
    tab = _mainardi_table(gamma, policy)
    out = np.empty_like(zv)
    in1 = zv <= tab.z_series
    if in1.any():
        vals, mx, dead = _mainardi_series(gamma, zv[in1], policy.max_terms)
        if dead.any():
            raise PrecisionError(
                f"Mainardi series failed inside the series zone (gamma={gamma:g})"
            )
        out[in1] = vals
    in2 = (~in1) & (zv <= tab.z_hand)
    if in2.any():
        out[in2] = np.exp(tab.log_spline(zv[in2] ** tab.b))
    rest = ~(in1 | in2)
    if rest.any():
        zt = zv[rest]
        out[rest] = tab.A * zt ** tab.a * np.exp(-tab.B * zt ** tab.b)
    return float(out[0]) if _scalar_ok(z) else out.reshape(np.shape(z))
