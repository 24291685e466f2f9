import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import erfcx

from fracdrift import (Divergent, DomainError, IteratedKernel, KernelSpec,
                       TimeGrid, c_gamma, iterated_kernel_closed,
                       iterated_kernel_numeric, moment, rho, rho_fourier,
                       rho_laplace_oracle, rho_table_csv)

from _helpers import read_csv, rel
from _oracle_values import ABS_MOMENTS, C_LEVY, C_MAINARDI, LEVY_RHO, MAINARDI

SQRT_PI = math.sqrt(math.pi)


# ---------------------------------------------------------------------------
# KernelSpec
# ---------------------------------------------------------------------------


def test_kernel_spec_normalizes_family_case():
    assert KernelSpec("MAINARDI", 0.4).family == "mainardi"
    assert KernelSpec("Levy", 0.6).family == "levy"


def test_kernel_spec_rejects_unknown_family():
    with pytest.raises(DomainError):
        KernelSpec("cauchy", 0.5)


@pytest.mark.parametrize("gamma", [0.0, 1.0, -0.3, 1.2])
def test_kernel_spec_mainardi_gamma_bounds(gamma):
    with pytest.raises(DomainError):
        KernelSpec("mainardi", gamma)


@pytest.mark.parametrize("gamma", [0.4, 0.5, 1.0])
def test_kernel_spec_levy_gamma_bounds(gamma):
    with pytest.raises(DomainError):
        KernelSpec("levy", gamma)


def test_kernel_spec_accepts_open_interval_edges():
    KernelSpec("mainardi", 0.01)
    KernelSpec("mainardi", 0.99)
    KernelSpec("levy", 0.51)
    KernelSpec("levy", 0.99)


# ---------------------------------------------------------------------------
# normalisation constant
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("gamma", sorted(C_MAINARDI))
def test_c_gamma_mainardi_frozen(gamma):
    assert rel(c_gamma(KernelSpec("mainardi", gamma)), C_MAINARDI[gamma]) < 1e-12


@pytest.mark.parametrize("gamma", sorted(C_LEVY))
def test_c_gamma_levy_frozen(gamma):
    assert rel(c_gamma(KernelSpec("levy", gamma)), C_LEVY[gamma]) < 1e-12


def test_c_gamma_mainardi_at_half_is_inverse_two_root_pi():
    assert rel(c_gamma(KernelSpec("mainardi", 0.5)), 1.0 / (2.0 * SQRT_PI)) < 1e-14


def test_c_gamma_levy_continuation_toward_half():
    # both families share the value (2 pi)^(-1/2) in the gamma -> 1/2 limit
    target = 1.0 / math.sqrt(2.0 * math.pi)
    errs = [abs(c_gamma(KernelSpec("levy", g)) - target)
            for g in (0.51, 0.505, 0.501)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 4e-3


# ---------------------------------------------------------------------------
# density rho
# ---------------------------------------------------------------------------


def test_rho_is_even_in_x():
    x = np.linspace(0.1, 5.0, 17)
    for spec in (KernelSpec("mainardi", 0.4), KernelSpec("levy", 0.75)):
        left = rho(spec, 1.5, -x)
        right = rho(spec, 1.5, x)
        assert np.array_equal(left, right)


@pytest.mark.parametrize("family,gamma", [("mainardi", 0.25),
                                          ("mainardi", 0.6),
                                          ("levy", 0.6)])
def test_rho_self_similar_scaling(family, gamma):
    spec = KernelSpec(family, gamma)
    t = 4.0
    x = np.array([0.0, 0.3, 1.0, 2.5])
    scale = t ** (-gamma)
    direct = rho(spec, t, x)
    rescaled = scale * rho(spec, 1.0, x * scale)
    assert np.max(np.abs(direct / rescaled - 1.0)) < 1e-14


def test_rho_gaussian_at_half():
    spec = KernelSpec("mainardi", 0.5)
    t = 2.0
    x = np.linspace(0.0, 6.0, 25)
    ref = np.exp(-x * x / (4.0 * t)) / (2.0 * math.sqrt(math.pi * t))
    out = rho(spec, t, x)
    assert np.max(np.abs(out / ref - 1.0)) < 1e-9


@pytest.mark.parametrize("gamma,z", sorted(LEVY_RHO))
def test_rho_levy_frozen_profile(gamma, z):
    spec = KernelSpec("levy", gamma)
    assert rel(rho(spec, 1.0, z), LEVY_RHO[(gamma, z)]) < 1e-10


@pytest.mark.parametrize("gamma,z", [(0.25, 1.0), (0.4, 2.0), (0.6, 1.0),
                                     (0.75, 0.5)])
def test_rho_mainardi_is_half_profile(gamma, z):
    spec = KernelSpec("mainardi", gamma)
    assert rel(rho(spec, 1.0, z), 0.5 * MAINARDI[(gamma, z)]) < 3e-6


def test_rho_rejects_nonpositive_time():
    with pytest.raises(DomainError):
        rho(KernelSpec("mainardi", 0.4), 0.0, 1.0)
    with pytest.raises(DomainError):
        rho(KernelSpec("levy", 0.6), -1.0, 1.0)


def test_rho_scalar_and_array_shapes():
    spec = KernelSpec("mainardi", 0.4)
    assert isinstance(rho(spec, 1.0, 0.5), float)
    out = rho(spec, 1.0, np.zeros((2, 3)))
    assert out.shape == (2, 3)


@settings(deadline=None, max_examples=50)
@given(gamma=st.sampled_from([0.25, 0.4, 0.5, 0.6, 0.75]),
       t=st.floats(0.1, 10.0),
       x=st.floats(-8.0, 8.0))
def test_rho_nonnegative_and_even_randomized(gamma, t, x):
    spec = KernelSpec("mainardi", gamma)
    v = rho(spec, t, x)
    assert v >= 0.0
    assert rho(spec, t, -x) == v


# ---------------------------------------------------------------------------
# Fourier transform of rho
# ---------------------------------------------------------------------------


def test_rho_fourier_levy_closed_form():
    for gamma in (0.6, 0.75):
        spec = KernelSpec("levy", gamma)
        for t in (0.5, 1.0, 3.0):
            k = np.array([0.0, 0.5, 1.0, 2.0, 4.0])
            ref = np.exp(-0.5 * t * np.abs(k) ** (1.0 / gamma))
            out = rho_fourier(spec, t, k)
            assert np.max(np.abs(out - ref)) < 1e-14


def test_rho_fourier_mainardi_quarter_matches_erfcx():
    spec = KernelSpec("mainardi", 0.25)
    for t in (0.5, 1.0, 2.0):
        for k in (0.5, 1.0, 2.0):
            ref = erfcx(k * k * t ** 0.5)
            assert rel(rho_fourier(spec, t, k), ref) < 1e-12


def test_rho_fourier_mainardi_half_is_heat_kernel():
    spec = KernelSpec("mainardi", 0.5)
    for t in (0.5, 2.0):
        for k in (0.7, 1.5):
            assert rel(rho_fourier(spec, t, k), math.exp(-k * k * t)) < 1e-12


def test_rho_fourier_mainardi_above_half_frozen_point():
    # order 2*gamma = 1.5 at argument -2
    spec = KernelSpec("mainardi", 0.75)
    from _oracle_values import ML_WIDE
    assert rel(rho_fourier(spec, 1.0, math.sqrt(2.0)), ML_WIDE[(1.5, -2.0)]) < 3e-6


def test_rho_fourier_at_zero_wavenumber_is_one():
    assert rho_fourier(KernelSpec("mainardi", 0.4), 3.0, 0.0) == 1.0
    assert rho_fourier(KernelSpec("levy", 0.6), 3.0, 0.0) == 1.0


def test_rho_fourier_rejects_nonpositive_time():
    with pytest.raises(DomainError):
        rho_fourier(KernelSpec("levy", 0.6), 0.0, 1.0)


# ---------------------------------------------------------------------------
# Laplace-inversion oracle
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("gamma", [0.25, 0.5, 0.75])
@pytest.mark.parametrize("x", [0.0, 0.5, 1.0, 2.0])
def test_rho_laplace_oracle_agrees_with_series_route(gamma, x):
    spec = KernelSpec("mainardi", gamma)
    assert rel(rho_laplace_oracle(gamma, 1.0, x), rho(spec, 1.0, x)) < 1e-7


def test_rho_laplace_oracle_domain_errors():
    with pytest.raises(DomainError):
        rho_laplace_oracle(1.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        rho_laplace_oracle(0.5, 0.0, 0.5)


# ---------------------------------------------------------------------------
# absolute moments
# ---------------------------------------------------------------------------


def test_moment_zeroth_is_total_mass():
    assert rel(moment(KernelSpec("mainardi", 0.4), 1.0, 0), 1.0) < 1e-6
    assert rel(moment(KernelSpec("levy", 0.75), 1.0, 0), 1.0) < 1e-6


@pytest.mark.parametrize("family,gamma,n", sorted(ABS_MOMENTS))
def test_moment_frozen_values(family, gamma, n):
    spec = KernelSpec(family, gamma)
    tol = 1e-8 if family == "mainardi" else 1e-4
    assert rel(moment(spec, 1.0, n), ABS_MOMENTS[(family, gamma, n)]) < tol


def test_moment_second_at_half_is_linear_in_time():
    spec = KernelSpec("mainardi", 0.5)
    for t in (0.5, 1.0, 7.0):
        assert rel(moment(spec, t, 2), 2.0 * t) < 1e-8


@pytest.mark.parametrize("family,gamma", [("mainardi", 0.3), ("levy", 0.7)])
def test_moment_time_scaling(family, gamma):
    spec = KernelSpec(family, gamma)
    base = moment(spec, 1.0, 1)
    for t in (0.25, 3.0, 40.0):
        assert rel(moment(spec, t, 1), base * t ** gamma) < 1e-12


def test_moment_levy_divergence_marker():
    out = moment(KernelSpec("levy", 0.6), 1.0, 2)
    assert isinstance(out, Divergent)
    assert abs(out.tail_exponent - (1.0 + 1.0 / 0.6)) < 0.05
    out = moment(KernelSpec("levy", 0.9), 1.0, 2)
    assert isinstance(out, Divergent)
    assert abs(out.tail_exponent - (1.0 + 1.0 / 0.9)) < 0.05


def test_moment_levy_first_moment_is_finite():
    out = moment(KernelSpec("levy", 0.75), 1.0, 1)
    assert isinstance(out, float)


def test_moment_domain_errors():
    with pytest.raises(DomainError):
        moment(KernelSpec("mainardi", 0.4), 0.0, 2)
    with pytest.raises(DomainError):
        moment(KernelSpec("mainardi", 0.4), 1.0, -1)


def test_signed_first_moment_vanishes_by_symmetry():
    spec = KernelSpec("mainardi", 0.4)
    x = np.linspace(-8.0, 8.0, 3201)
    integrand = x * rho(spec, 1.0, x)
    assert abs(np.trapezoid(integrand, x)) < 1e-12


# ---------------------------------------------------------------------------
# iterated memory kernel
# ---------------------------------------------------------------------------


def test_iterated_kernel_first_iterate_quarter():
    ik = IteratedKernel(0.25, 1)
    assert rel(ik.coefficient, 1.0 / (4.0 * math.gamma(1.5))) < 1e-14
    assert ik.exponent == 0.5


def test_iterated_kernel_second_iterate_half():
    ik = IteratedKernel(0.5, 2)
    assert rel(ik.coefficient, 1.0 / (4.0 * SQRT_PI)) < 1e-14
    assert ik.exponent == 0.5


def test_iterated_kernel_boundedness_threshold():
    assert IteratedKernel(0.4, 1).bounded_on_compacts()
    assert not IteratedKernel(0.6, 1).bounded_on_compacts()
    assert IteratedKernel(0.7, 4).bounded_on_compacts()
    assert not IteratedKernel(0.85, 4).bounded_on_compacts()


def test_iterated_kernel_domain_errors():
    with pytest.raises(DomainError):
        IteratedKernel(0.0, 1)
    with pytest.raises(DomainError):
        IteratedKernel(1.0, 1)
    with pytest.raises(DomainError):
        IteratedKernel(0.4, 0)


def test_iterated_kernel_closed_time_scaling():
    ik = IteratedKernel(0.3, 2)
    v1 = iterated_kernel_closed(0.3, 2, 1.0)
    v4 = iterated_kernel_closed(0.3, 2, 4.0)
    assert rel(v4, v1 * 4.0 ** ik.exponent) < 1e-12
    with pytest.raises(DomainError):
        iterated_kernel_closed(0.3, 2, 0.0)


@pytest.mark.parametrize("n", [1, 2])
def test_iterated_kernel_numeric_matches_closed_smoke(n):
    grid = TimeGrid(t_end=1.0, dt=1.0 / 1200.0)
    num = iterated_kernel_numeric(0.25, n, 1.0, grid)
    assert rel(num, iterated_kernel_closed(0.25, n, 1.0)) < 5e-3


def test_iterated_kernel_numeric_grid_mismatch():
    grid = TimeGrid(t_end=2.0, dt=1e-2)
    with pytest.raises(DomainError):
        iterated_kernel_numeric(0.25, 1, 1.0, grid)


# ---------------------------------------------------------------------------
# CSV table export
# ---------------------------------------------------------------------------


def test_rho_table_csv_roundtrip(tmp_path):
    spec = KernelSpec("mainardi", 0.25)
    path = tmp_path / "profile.csv"
    rho_table_csv(spec, path, z_max=4.0, n=101)
    header, names, rows = read_csv(path)
    assert header == "# family=mainardi gamma=0.25 n=101"
    assert names == ["z", "rho1"]
    assert len(rows) == 101
    z = np.array([float(r[0]) for r in rows])
    v = np.array([float(r[1]) for r in rows])
    assert z[0] == -4.0 and z[-1] == 4.0
    assert np.array_equal(v, v[::-1])
    mid = 50
    assert rel(v[mid], 0.5 / math.gamma(0.75)) < 1e-12


def test_rho_table_csv_rejects_degenerate_table(tmp_path):
    with pytest.raises(DomainError):
        rho_table_csv(KernelSpec("mainardi", 0.4), tmp_path / "x.csv", n=1)
