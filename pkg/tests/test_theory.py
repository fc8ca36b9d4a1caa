import math

import numpy as np
import pytest

from dupdel.theory import (ConvergenceError, asymptotic_tail, cd_asymptotic, cd_from_yk,
                           cd_quadrature, cd_quadrature_full, fixed_point_yk,
                           generating_function_residual, log_cd_asymptotic, log_cd_quadrature,
                           normalization_check, peak_location, recursion_residuals, sweep_once,
                           theoretical_distribution, yk_from_cd)

# Frozen with mpmath at 30-40 digits (adaptive quad on the integral with breakpoints
# around the peak, and c_0 separately from int_0^1 exp(-y/(1-y)) dy).
C_EXACT = {
    0: 0.403652637676805925658921500631,
    1: 0.210957913030417776976764501889,
    2: 0.123742144899238516782989754096,
    3: 0.077773758401138762183544924337,
    4: 0.0512488115033236981299863256628,
    5: 0.0349736269061733737024249921219,
    50: 4.95531374319541179545242425123e-06,
    200: 5.37160781115848583932043263852e-12,
    250: 2.02895018357308897301483093975e-13,
    1000: 5.448643598555097446580879170854e-27,
    4000: 2.665089389729080313186907941254e-54,
}


@pytest.fixture(scope="module")
def fp():
    return fixed_point_yk(2000, 1e-8, keep_history=True)


@pytest.fixture(scope="module")
def quad200():
    return np.array([cd_quadrature(d) for d in range(202)])


# -- fixed point ----------------------------------------------------------------

def test_first_sweep_from_zero():
    a1 = sweep_once(np.zeros(50))
    assert a1[0] == pytest.approx(1 / 3)
    assert np.all(a1[1:] == 0)


def test_first_sweep_from_one():
    b1 = sweep_once(np.ones(50), boundary=1.0)
    k = np.arange(2, 51)
    assert b1[0] == 1.0
    assert np.allclose(b1[1:], 2 * k / (2 * k + 1), rtol=1e-15)


def test_fixed_point_c0(fp):
    assert fp.width < 1e-8
    assert fp.y[0] == pytest.approx(C_EXACT[0], abs=1e-8)
    lo, hi = fp.pair.lower[:fp.report], fp.pair.upper[:fp.report]
    assert np.all(lo <= hi) and np.all(lo >= 0) and np.all(hi <= 1)


def test_fixed_point_history_is_monotone(fp):
    w = np.array(fp.widths)
    assert np.all(np.diff(w) <= 0)


def test_fixed_point_satisfies_equations(fp):
    y = fp.y
    assert abs(y[0] - (1 + 2 * y[1]) / 3) < fp.width
    k = np.arange(2, fp.report)
    resid = y[k - 1] - ((k - 1) * y[k - 2] + (k + 1) * y[k]) / (2 * k + 1)
    assert np.abs(resid).max() < fp.width


def test_fixed_point_enclosure_steps_are_nested():
    # a^(j) <= a^(j+1) <= b^(j+1) <= b^(j), checked directly for a small system
    k_max = 60
    a, b = np.zeros(k_max), np.ones(k_max)
    for _ in range(400):
        a2, b2 = sweep_once(a, 0.0), sweep_once(b, 1.0)
        assert np.all(a <= a2) and np.all(a2 <= b2) and np.all(b2 <= b)
        a, b = a2, b2


def test_truncation_does_not_leak():
    small = fixed_point_yk(1000, 1e-9)
    big = fixed_point_yk(2000, 1e-9)
    assert np.abs(small.y[:100] - big.y[:100]).max() < 1e-9


def test_fixed_point_budget_failure():
    with pytest.raises(ConvergenceError) as info:
        fixed_point_yk(200, 1e-12, max_sweeps=50)
    assert info.value.width > 1e-12


def test_fixed_point_vs_quadrature(fp, quad200):
    c_fp = cd_from_yk(fp.y[:51])
    assert np.abs(c_fp - quad200[:51]).max() < 1e-6
    # and in the other direction, through y
    assert np.abs(fp.y[:50] - yk_from_cd(quad200[:50])).max() < 1e-8


# -- conversions -----------------------------------------------------------------

def test_conversions():
    c = np.array([0.4, 0.2, 0.12, 0.08])
    y = yk_from_cd(c)
    assert y[0] == c[0]
    assert y[1] == c[1] / 2
    assert np.allclose(cd_from_yk(y), c, rtol=0, atol=1e-17)


# -- quadrature --------------------------------------------------------------------

@pytest.mark.parametrize("d", sorted(C_EXACT))
def test_quadrature_against_frozen_values(d):
    assert cd_quadrature(d) == pytest.approx(C_EXACT[d], rel=1e-9)


def test_c0_second_route():
    from scipy.integrate import quad
    direct, _ = quad(lambda y: math.exp(-y / (1 - y)) if y < 1 else 0.0, 0, 1,
                     epsabs=1e-14, epsrel=1e-13)
    assert cd_quadrature(0) == pytest.approx(direct, abs=1e-12)
    assert cd_quadrature(0) == pytest.approx(0.4036526, abs=1e-6)


def test_c1_identity():
    assert cd_quadrature(1) == pytest.approx(3 * cd_quadrature(0) - 1, abs=1e-12)
    assert cd_quadrature(1) == pytest.approx(0.2109579, abs=1e-7)


def test_clustering_constant():
    c0, c1 = cd_quadrature(0), cd_quadrature(1)
    assert abs(1 - c0 - c1 - 0.38538) < 1e-5
    assert 1 - c0 - c1 == pytest.approx(2 - 4 * c0, abs=1e-12)


def test_quadrature_reports_error_and_window():
    q = cd_quadrature_full(400, rel_tol=1e-10)
    assert q.rel_error <= 1e-10
    lo, hi = q.window
    assert lo < peak_location(400) < hi


def test_quadrature_survives_underflow():
    # c_d is below the smallest double here, its logarithm is still accurate
    log_c = log_cd_quadrature(10**6)
    assert cd_quadrature(10**6) == 0.0
    assert log_c == pytest.approx(log_cd_asymptotic(10**6), abs=1e-2)


def test_quadrature_bad_args():
    with pytest.raises(ValueError):
        cd_quadrature(-1)
    with pytest.raises(ValueError):
        cd_quadrature(3, rel_tol=0)


# -- peak and asymptotics -----------------------------------------------------------

def test_peak_location():
    assert peak_location(0) == 0
    assert peak_location(4) == 1.0
    assert peak_location(10_000) == pytest.approx(98.51124936725868, rel=1e-14)


@pytest.mark.parametrize("d", [1, 4, 100, 10_000])
def test_peak_is_stationary(d):
    y = peak_location(d)
    h = 1e-6 * y
    f = lambda t: d * math.log(t) - (d + 2) * math.log1p(t) - t
    assert (f(y + h) - f(y - h)) / (2 * h) == pytest.approx(0, abs=1e-6)
    assert f(y) > max(f(0.9 * y), f(1.1 * y))


def test_asymptotic_values():
    assert cd_asymptotic(100) == pytest.approx(1.90472612792376e-08, rel=1e-12)
    assert cd_asymptotic(1) == pytest.approx(0.395487911608249, rel=1e-12)
    assert math.exp(log_cd_asymptotic(4)) == pytest.approx(cd_asymptotic(4))
    with pytest.raises(ValueError):
        cd_asymptotic(0)


def test_asymptotic_ratio_trend():
    ratios = [math.exp(log_cd_quadrature(d) - log_cd_asymptotic(d)) for d in (250, 1000, 4000)]
    gaps = [abs(1 - r) for r in ratios]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 0.1


# -- identities and normalisation ----------------------------------------------------

def test_recursion_residuals(quad200):
    r = recursion_residuals(quad200[:201])
    assert r[0] < 1e-6
    assert r[1:200].max() < 1e-6


def test_recursion_residuals_detect_wrong_sequence():
    geometric = 0.5 ** np.arange(1, 20)
    assert recursion_residuals(geometric).max() > 1e-2


@pytest.mark.parametrize("z", [0.0, 0.1, 0.5])
def test_generating_function_ode(quad200, z):
    assert abs(generating_function_residual(quad200, z)) < 1e-10


def test_generating_function_at_zero(quad200):
    assert np.polynomial.polynomial.polyval(0.0, quad200) == quad200[0]


def test_normalization(quad200):
    assert normalization_check(quad200, 200) < 1e-6
    assert normalization_check(quad200, 200, tail_factor=1.0) < 1e-10


def test_normalization_degenerate_cases(quad200):
    r0 = normalization_check(quad200, 0)
    assert r0 == pytest.approx(abs(1 - quad200[0] - 2 * asymptotic_tail(0)))
    assert normalization_check([1.0], 0, tail_factor=0) == 0.0
    assert normalization_check([1.0], 0) > 0.1


def test_asymptotic_tail_is_small_far_out():
    assert asymptotic_tail(200) < 1e-9
    assert asymptotic_tail(200) > asymptotic_tail(201)


def test_theoretical_distribution_methods():
    q = theoretical_distribution("quadrature", 10)
    f = theoretical_distribution("fixed-point", 10, tol=1e-9)
    a = theoretical_distribution("asymptotic", 10)
    assert np.abs(q.values - f.values).max() < 1e-8
    assert math.isnan(a.values[0]) and a.values[1] == cd_asymptotic(1)
    assert np.all(q.values > 0) and np.all(f.values > 0)
    with pytest.raises(ValueError):
        theoretical_distribution("bogus", 3)
