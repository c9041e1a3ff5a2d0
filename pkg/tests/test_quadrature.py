import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from rotgauss import (CurveParams, DivergentEnd, ParameterError, QuadratureConfig, height_gain, period_data,
                      phi_bounds, time_of_flight)
from rotgauss.quadrature import height_integrand, time_integrand


def test_config_validation():
    with pytest.raises(ParameterError):
        QuadratureConfig(abs_tol=0.0)
    with pytest.raises(ParameterError):
        QuadratureConfig(max_subdivisions=3)


def test_unit_sphere_quarter():
    p = CurveParams(3, 1.0, 0.0)
    assert time_of_flight(0.0, 1.0, p) == pytest.approx(math.pi / 2, abs=1e-12)
    assert height_gain(0.0, 1.0, p) == pytest.approx(1.0, abs=1e-12)


def test_time_of_flight_frozen():
    # arcsin(1/sqrt(3)) for the n = 3 arch between its rim and its crest
    t = time_of_flight(math.sqrt(2), math.sqrt(3), CurveParams(3, 1.0, 2.0))
    assert t == pytest.approx(0.6154797086703869, abs=1e-12)
    assert t == pytest.approx(math.asin(1 / math.sqrt(3)), abs=1e-12)


def test_time_of_flight_sign_and_orientation():
    p = CurveParams(3, 1.0, 0.0)
    assert time_of_flight(1.0, 0.5, p) == pytest.approx(-time_of_flight(0.5, 1.0, p))
    assert time_of_flight(0.5, 1.0, p, sign=-1) == pytest.approx(-time_of_flight(0.5, 1.0, p))


def test_pseudosphere_diverges():
    p = CurveParams(4, -1.0, -1.0)
    with pytest.raises(DivergentEnd):
        time_of_flight(0.0, 0.5, p)
    pd = period_data(p)
    assert pd.divergent and pd.half_period is None


@settings(max_examples=40, deadline=None)
@given(st.floats(-0.9, 5.0))
def test_n3_positive_half_period(ck):
    # sin t = 1/L at the rim, written without the cancellation of asin near 1
    expected = math.atan2(1.0, math.sqrt(max(ck, 0.0)))
    assert period_data(CurveParams(3, 1.0, ck)).half_period == pytest.approx(expected, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.floats(-6.0, -1.05))
def test_n3_negative_arch_half_period(ck):
    L = math.sqrt(-1 - ck)
    pd = period_data(CurveParams(3, -1.0, ck))
    assert pd.half_period == pytest.approx(math.asinh(1.0 / L), abs=1e-10)
    assert pd.full_period == pytest.approx(2 * pd.half_period)


@settings(max_examples=40, deadline=None)
@given(st.floats(-0.95, -0.05))
def test_n3_negative_single_branch(ck):
    L = math.sqrt(1 + ck)
    pd = period_data(CurveParams(3, -1.0, ck))
    assert pd.half_period == pytest.approx(math.acosh(1.0 / L), abs=1e-10)


@pytest.mark.parametrize("n,K,ck", [(5, 2.0, 0.5), (4, 1.0, -0.5), (6, -1.0, -2.5), (5, -1.0, -0.5)])
def test_against_adaptive_quad(n, K, ck):
    p = CurveParams(n, K, ck)
    lo, hi = phi_bounds(p)
    a, b = lo + 0.1 * (hi - lo), lo + 0.9 * (hi - lo)
    ref_t = quad(lambda x: float(time_integrand(x, p)), a, b, epsabs=1e-13, epsrel=1e-13)[0]
    ref_h = quad(lambda x: float(height_integrand(x, p)), a, b, epsabs=1e-13, epsrel=1e-13)[0]
    assert time_of_flight(a, b, p) == pytest.approx(ref_t, rel=1e-10)
    assert height_gain(a, b, p) == pytest.approx(ref_h, rel=1e-10)


def test_integrand_singular_at_extremum():
    p = CurveParams(4, 1.0, 0.5)
    hi = phi_bounds(p)[1]
    assert np.isfinite(time_integrand(hi * (1 - 1e-12), p))
    assert time_integrand(hi * (1 - 1e-12), p) > 1e4


def test_branch_gap_odd_dimension_undefined():
    # the excised stretch only exists for even n when -1 < C_K < 0
    assert period_data(CurveParams(3, -1.0, -0.5)).branch_gap is None
    assert period_data(CurveParams(4, -1.0, -0.5)).branch_gap > 0


def test_tolerance_controls_accuracy():
    p = CurveParams(5, 2.0, 0.5)
    coarse = period_data(p, QuadratureConfig(abs_tol=1e-4, rel_tol=1e-4)).half_period
    fine = period_data(p).half_period
    assert abs(coarse - fine) < 1e-3
