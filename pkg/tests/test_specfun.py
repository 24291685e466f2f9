import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracdrift import (DomainError, PoleError, PrecisionError, SeriesPolicy,
                       gamma_real, mainardi, mittag_leffler,
                       mittag_leffler_wide, reciprocal_gamma)
from fracdrift.specfun import _mainardi_table

from _helpers import rel
from _oracle_values import MAINARDI, ML_NEG, ML_WIDE

SQRT_PI = math.sqrt(math.pi)


# ---------------------------------------------------------------------------
# gamma_real / reciprocal_gamma
# ---------------------------------------------------------------------------


def test_gamma_real_positive_axis_matches_stdlib():
    for x in (0.1, 0.5, 1.0, 2.5, 7.0, 20.0):
        assert gamma_real(x) == math.gamma(x)


def test_gamma_real_reflection_closed_values():
    assert rel(gamma_real(-0.5), -2.0 * SQRT_PI) < 1e-14
    assert rel(gamma_real(-1.5), 4.0 * SQRT_PI / 3.0) < 1e-14
    assert rel(gamma_real(-2.5), -8.0 * SQRT_PI / 15.0) < 1e-14


@pytest.mark.parametrize("x", [0.0, -1.0, -7.0, -200.0])
def test_gamma_real_pole_raises(x):
    with pytest.raises(PoleError):
        gamma_real(x)


def test_reciprocal_gamma_zero_at_poles():
    assert reciprocal_gamma(0.0) == 0.0
    assert reciprocal_gamma(-3.0) == 0.0
    out = reciprocal_gamma(np.array([-2.0, 0.5, -10.0]))
    assert out[0] == 0.0 and out[2] == 0.0
    assert rel(out[1], 1.0 / SQRT_PI) < 1e-14


@settings(deadline=None, max_examples=50)
@given(st.floats(min_value=-29.5, max_value=29.5)
       .filter(lambda x: abs(x - round(x)) > 1e-2))
def test_reciprocal_gamma_inverts_gamma(x):
    assert abs(reciprocal_gamma(x) * gamma_real(x) - 1.0) < 1e-11


# ---------------------------------------------------------------------------
# Mittag-Leffler, alpha in (0, 1]
# ---------------------------------------------------------------------------


def test_ml_reduces_to_exp_at_alpha_one():
    x = -np.linspace(0.0, 30.0, 61)
    out = mittag_leffler(1.0, x)
    assert np.max(np.abs(out - np.exp(x))) < 1e-10


def test_ml_half_is_scaled_erfc():
    # E_{1/2}(-1) = e erfc(1)
    assert rel(mittag_leffler(0.5, -1.0), math.e * math.erfc(1.0)) < 1e-12


@pytest.mark.parametrize("alpha,x", sorted(ML_NEG))
def test_ml_frozen_points(alpha, x):
    assert rel(mittag_leffler(alpha, x), ML_NEG[(alpha, x)]) < 1e-10


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
def test_ml_positive_and_nonincreasing(alpha):
    x = -np.linspace(0.0, 30.0, 301)
    out = mittag_leffler(alpha, x)
    assert out[0] == 1.0
    assert np.all(out > 0.0)
    assert np.all(np.diff(out) <= 0.0)
    assert np.all(out <= 1.0)


@settings(deadline=None, max_examples=50)
@given(alpha=st.floats(min_value=0.05, max_value=0.99),
       y=st.floats(min_value=0.0, max_value=25.0),
       step=st.floats(min_value=1e-3, max_value=5.0))
def test_ml_monotone_for_random_orders(alpha, y, step):
    assert mittag_leffler(alpha, -(y + step)) <= mittag_leffler(alpha, -y)


def test_ml_scalar_and_array_shapes():
    assert isinstance(mittag_leffler(0.75, -1.0), float)
    out = mittag_leffler(0.75, np.array([[-1.0, -2.0], [-3.0, 0.0]]))
    assert out.shape == (2, 2)
    assert out[1, 1] == 1.0


def test_ml_domain_errors():
    with pytest.raises(DomainError):
        mittag_leffler(0.0, -1.0)
    with pytest.raises(DomainError):
        mittag_leffler(1.2, -1.0)
    with pytest.raises(DomainError):
        mittag_leffler(0.5, 0.1)


# ---------------------------------------------------------------------------
# Mittag-Leffler, beta in (1, 2)
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("beta,x", sorted(ML_WIDE))
def test_ml_wide_frozen_points(beta, x):
    # the surviving oscillatory-mode branch carries a few digits less than
    # the series zone
    assert rel(mittag_leffler_wide(beta, x), ML_WIDE[(beta, x)]) < 3e-6


def test_ml_wide_at_zero_is_one():
    assert mittag_leffler_wide(1.5, 0.0) == 1.0


def test_ml_wide_domain_errors():
    for beta in (1.0, 2.0, 0.9):
        with pytest.raises(DomainError):
            mittag_leffler_wide(beta, -1.0)
    with pytest.raises(DomainError):
        mittag_leffler_wide(1.5, 0.5)


# ---------------------------------------------------------------------------
# Mainardi function
# ---------------------------------------------------------------------------


def _mainardi_tol(value: float) -> float:
    # series and bridge zones are tight; the fitted stretched-exponential
    # tail trades relative accuracy for dynamic range
    if value >= 1e-6:
        return 3e-6
    if value >= 1e-13:
        return 5e-3
    return 5e-2


def test_mainardi_gaussian_at_half():
    # NOTE: the float series runs out of digits just before the handoff
    # near z ~ 7, so the tight bound only applies to the left part.
    z = np.linspace(0.0, 8.0, 81)
    out = mainardi(z, 0.5)
    ref = np.exp(-z * z / 4.0) / SQRT_PI
    err = np.abs(out / ref - 1.0)
    assert np.max(err[z <= 5.5]) < 1e-9
    assert np.max(err) < 1e-6


def test_mainardi_value_at_origin():
    for g in (0.2, 0.25, 0.4, 0.6, 0.75):
        assert rel(mainardi(0.0, g), 1.0 / math.gamma(1.0 - g)) < 1e-12


@pytest.mark.parametrize("gamma,z", sorted(MAINARDI))
def test_mainardi_frozen_points(gamma, z):
    v = MAINARDI[(gamma, z)]
    assert rel(mainardi(z, gamma), v) < _mainardi_tol(v)


@pytest.mark.parametrize("gamma", [0.2, 0.4, 0.6, 0.8])
def test_mainardi_nonnegative(gamma):
    z = np.linspace(0.0, 10.0, 401)
    assert np.all(mainardi(z, gamma) >= 0.0)


def test_mainardi_zone_handoffs_are_continuous():
    # NOTE: the probe window must be narrow enough that the steep local
    # slope (|d log M/dz| ~ 20 at the far handoff) does not dominate.
    tab = _mainardi_table(0.75)
    for z0 in (tab.z_series, tab.z_hand):
        lo = mainardi(z0 * (1.0 - 1e-9), 0.75)
        hi = mainardi(z0 * (1.0 + 1e-9), 0.75)
        assert rel(lo, hi) < 1e-5


def test_mainardi_forced_crossover_past_float_range_raises():
    policy = SeriesPolicy(asymptotic_crossover_z=40.0)
    with pytest.raises(PrecisionError):
        mainardi(1.0, 0.6, policy)


def test_mainardi_domain_errors():
    with pytest.raises(DomainError):
        mainardi(1.0, 0.0)
    with pytest.raises(DomainError):
        mainardi(1.0, 1.0)
    with pytest.raises(DomainError):
        mainardi(-0.5, 0.5)
