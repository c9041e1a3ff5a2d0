import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rotgauss import (CurveParams, HeightOutOfRange, ParameterError, PqParams, RankDeficiency,
                      SingularFirstForm, StepOutOfRange, check_comparison, numeric_curvatures, numeric_forms,
                      pq_gauss_curvature, run_suite, solve_constant_K)
from rotgauss.oracle import (FIXTURE_GRID, EmbeddingPoint, FundamentalForms, analytic_first_form, embed_point,
                             numeric_forms_pq, sphere_direction)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-1.5, 1.5), min_size=1, max_size=5))
def test_sphere_direction_unit(angles):
    assert np.linalg.norm(sphere_direction(angles)) == pytest.approx(1.0)


def test_embed_point_on_hypersphere():
    x = embed_point(EmbeddingPoint(2.0, 0.5, (0.3, 1.0)), 4)
    assert np.linalg.norm(x[:-1]) == pytest.approx(2.0) and x[-1] == 0.5
    with pytest.raises(ParameterError):
        embed_point(EmbeddingPoint(1.0, 0.0, (0.3,)), 4)
    with pytest.raises(ParameterError):
        EmbeddingPoint(1.0, 0.0, (2.0,))


def test_first_form_matches_analytic():
    c = solve_constant_K(CurveParams(5, 2.0, 0.0), count=3)
    angles = [0.4, 1.0, 2.0]
    forms = numeric_forms(c, 0.1, angles, h=1e-4)
    phi = float(np.ravel(c.evaluate(0.1)[0])[0])
    assert np.allclose(forms.first, analytic_first_form(phi, angles), atol=1e-7)


@pytest.mark.parametrize("p", FIXTURE_GRID[:6])
def test_gauss_curvature_at_center(p):
    c = solve_constant_K(p, count=3)
    t = p.t0 if c.profile.arch else p.t0 - 0.5 * min(c.profile.L, 2.0)
    _, g = numeric_curvatures(numeric_forms(c, t, [0.2] * (p.n - 2)))
    assert g == pytest.approx(p.K, abs=1e-4)


def test_pq_unit_sphere():
    pq = PqParams(2, 2)
    prof = lambda t: (np.cos(t), np.sin(t))
    t = 0.6
    ev, g = numeric_curvatures(numeric_forms_pq(prof, t, [0.3], [1.2], pq, h=1e-3))
    analytic = pq_gauss_curvature(math.cos(t), math.sin(t), -math.sin(t), math.cos(t), -math.cos(t), pq)
    assert g == pytest.approx(analytic, abs=1e-5)
    assert np.allclose(np.abs(ev), 1.0, atol=1e-5)


def test_step_window():
    c = solve_constant_K(CurveParams(3, 1.0, 0.0), count=3)
    for h in (1e-7, 2e-2):
        with pytest.raises(StepOutOfRange):
            numeric_forms(c, 0.0, [0.1], h)


def test_degenerate_inputs():
    flat = lambda t: (np.zeros_like(t), np.zeros_like(t))
    with pytest.raises(RankDeficiency):
        numeric_forms(flat, 0.0, [0.1])
    bad = FundamentalForms(np.zeros((2, 2)), np.eye(2), np.zeros(3), 1e-3)
    with pytest.raises(SingularFirstForm):
        numeric_curvatures(bad)


def test_comparison_orders_profiles():
    rep = check_comparison(2.0, 1.0, 0.8, 4)
    assert rep.passed and rep.max_difference < 0
    rep = check_comparison(-1.0, -2.0, 1.2, 3)
    assert rep.passed
    # equal curvatures give identical profiles
    assert np.max(np.abs(check_comparison(1.5, 1.5, 0.9, 5).differences)) < 1e-12


def test_comparison_errors():
    with pytest.raises(ParameterError):
        check_comparison(1.0, 2.0, 0.8, 3)
    with pytest.raises(HeightOutOfRange):
        check_comparison(2.0, 1.0, 0.8, 3, heights=[10.0])


def test_run_suite():
    rep = run_suite("riccati")
    assert rep["pass"] and len(rep["checks"]) == 3
    with pytest.raises(ParameterError):
        run_suite("nope")


@pytest.mark.parametrize("n", [3, 4, 5])
def test_determinant_identity(n):
    c = solve_constant_K(CurveParams(n, 1.5, 0.5), count=3)
    forms = numeric_forms(c, 0.1, [0.4] * (n - 2))
    _, g = numeric_curvatures(forms)
    assert g == pytest.approx(forms.determinant_ratio(), abs=1e-10)
