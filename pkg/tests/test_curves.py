import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rotgauss import (CurveParams, EndpointKind, OutOfBounds, ParameterError, TruncationRequired, ZeroCurvature,
                      first_integral_residual, gauss_curvature, read_curve_csv, solve_constant_K,
                      sphere_from_constant_principal)

regimes = st.one_of(
    st.tuples(st.integers(3, 6), st.floats(0.3, 3.0), st.floats(-0.9, 3.0)),
    st.tuples(st.integers(3, 6), st.floats(-3.0, -0.3), st.floats(-3.0, -1.1)),
    st.tuples(st.integers(3, 6), st.floats(-3.0, -0.3), st.floats(-0.9, -0.1)),
)


@settings(max_examples=25, deadline=None)
@given(regimes)
def test_samples_satisfy_first_integral(p):
    params = CurveParams(*p)
    c = solve_constant_K(params, count=41)
    for s in c.samples:
        assert abs(first_integral_residual(s, params)) < 1e-8 * max(1.0, abs(params.ck))
    assert np.allclose(c.dphi ** 2 + c.dpsi ** 2, 1.0, atol=1e-12)
    assert np.all(c.dpsi >= 0) and np.all(np.diff(c.psi) >= -1e-12)


@settings(max_examples=15, deadline=None)
@given(regimes)
def test_interior_gauss_curvature(p):
    params = CurveParams(*p)
    c = solve_constant_K(params, count=41)
    for s in c.samples[5:-5]:
        if s.ddphi is not None and s.phi > 1e-3 and s.dpsi > 1e-3:
            assert gauss_curvature(s, params.n) == pytest.approx(params.K, rel=1e-7)


def test_arch_layout():
    c = solve_constant_K(CurveParams(3, 1.0, 0.5), count=5)
    assert c.endpoints == (EndpointKind.VERTICAL_RIM, EndpointKind.VERTICAL_RIM)
    assert [b[2] for b in c.branches] == [1, -1]
    assert c.phi[2] == pytest.approx(math.sqrt(1.5))
    assert c.dphi[0] == pytest.approx(1.0) and c.dpsi[0] == pytest.approx(0.0, abs=1e-12)


def test_two_periods_repeat_the_arch():
    p = CurveParams(4, 1.0, 0.5)
    one = solve_constant_K(p, count=101)
    two = solve_constant_K(p, count=201, periods=2)
    T = one.metadata["full_period"]
    assert two.t[-1] - two.t[0] == pytest.approx(2 * T)
    shifted = two.evaluate(one.t + T)
    assert np.allclose(shifted[0], one.phi, atol=1e-12)
    H = one.psi[-1] - one.psi[0]
    assert np.allclose(shifted[1], one.psi + H, atol=1e-10)


def test_sphere_n3_matches_cosine():
    c = solve_constant_K(CurveParams(3, 1.0, 0.0, t0=1.0), count=101)
    assert np.allclose(c.phi, np.cos(c.t - 1.0), atol=1e-12)
    assert np.allclose(c.psi, np.sin(c.t - 1.0), atol=1e-12)
    assert c.endpoints == (EndpointKind.SMOOTH_POLE, EndpointKind.SMOOTH_POLE)


def test_orientation_mirrors_single_branch():
    p = CurveParams(5, -1.0, -0.5)
    a = solve_constant_K(p, count=51)
    b = solve_constant_K(p.with_(orientation=-1), count=51)
    assert np.allclose(a.phi, b.phi[::-1], atol=1e-12)
    assert np.all(a.dphi >= 0) and np.all(b.dphi <= 0)


def test_pseudosphere_truncation():
    p = CurveParams(4, -1.0, -1.0)
    c = solve_constant_K(p, count=101)
    assert c.metadata["t_min"] == -25.0
    assert c.endpoints[0] is EndpointKind.PSEUDOSPHERE_END
    assert c.endpoints[1] is EndpointKind.VERTICAL_RIM
    with pytest.raises(TruncationRequired):
        solve_constant_K(p, t_min=-math.inf)
    with pytest.raises(TruncationRequired):
        solve_constant_K(p, t_range=(-math.inf, 0.0))


def test_tractroid_exponential():
    c = solve_constant_K(CurveParams(3, -1.0, -1.0), t_min=-10.0, count=201)
    assert np.allclose(c.phi, np.exp(c.t), rtol=1e-12)


def test_t_range_and_step():
    p = CurveParams(3, 1.0, 0.0)
    c = solve_constant_K(p, t_range=(-0.5, 0.5), step=0.25)
    assert np.allclose(c.t, [-0.5, -0.25, 0.0, 0.25, 0.5])
    with pytest.raises(OutOfBounds):
        solve_constant_K(p, t_range=(-3.0, 0.0))


def test_flat_profiles():
    cyl = solve_constant_K(CurveParams(3, 0.0), count=11)
    assert np.allclose(cyl.phi, 1.0) and cyl.metadata["shape"] == "cylinder"
    cone = solve_constant_K(CurveParams(3, 0.0), line=(0.5, 0.5), t_range=(-1.0, 1.0), count=11)
    assert cone.endpoints[0] is EndpointKind.CONE_POINT
    with pytest.raises(ParameterError):
        solve_constant_K(CurveParams(3, 0.0), line=(1.0, 1.0))


def test_csv_roundtrip():
    c = solve_constant_K(CurveParams(4, 1.0, 0.5), count=21)
    text = c.to_csv()
    assert text.startswith("t,phi,psi,dphi,dpsi,branch,endpoint_flags\r\n")
    back = read_curve_csv(text)
    for k in ("t", "phi", "psi", "dphi", "dpsi"):
        assert np.array_equal(back[k], getattr(c, k))
    assert back["endpoint_flags"][0] == "VerticalRim"
    assert back["endpoint_flags"][10] == "SmoothExtremum"
    assert c.to_csv() == text


@pytest.mark.parametrize("which", ["k1", "k_rest"])
def test_sphere_from_principal(which):
    c = sphere_from_constant_principal(-2.0, which, n=4, count=51)
    r = np.hypot(c.phi, c.psi - (c.psi[0] + c.psi[-1]) / 2)
    assert np.allclose(r, 0.5, atol=1e-12)
    assert c.params.K == pytest.approx(8.0)
    with pytest.raises(ZeroCurvature):
        sphere_from_constant_principal(0.0)
