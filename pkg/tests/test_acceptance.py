"""Acceptance suite: one PASS/FAIL line per criterion, printed to the terminal."""

import math
import time

import numpy as np
import pytest

from rotgauss import (BumpSpec, CurveParams, CurveState, RiccatiCase, bump_shooting, enclosed_volume,
                      period_data, riccati_closed_form, solve_constant_K, solve_prescribed_K, surface_area)
from rotgauss.oracle import (comparison_checks, equivalence_checks, forms_checks, numeric_curvatures,
                             numeric_forms, RICCATI_FIXTURES)
from rotgauss.prescribed import riccati_state
from rotgauss.series import asymptotic_pseudosphere, pseudosphere_time_shift, taylor_extremum


@pytest.fixture
def verdict(capsys):
    def emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} [{label}] {detail}")
        assert ok, detail
    return emit


def _slope(x, y):
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def test_pseudosphere_figures(verdict):
    start = time.perf_counter()
    curve = solve_constant_K(CurveParams(4, -1.0, -1.0), t_min=-25.0)
    S = surface_area(curve, convention="paper")
    V = enclosed_volume(curve, convention="paper")
    elapsed = time.perf_counter() - start
    rel_s, rel_v = abs(S.value - 19.74) / 19.74, abs(V.value - 1.82) / 1.82
    tail = max(S.truncation_tail_bound, V.truncation_tail_bound)
    ok = rel_s <= 0.02 and rel_v <= 0.02 and tail < 1e-4 and elapsed < 10
    verdict("pseudosphere figures", ok,
            f"S={S.value:.6g} (target 19.74, rel {rel_s:.3g}), V={V.value:.6g} (target 1.82, rel {rel_v:.3g}), "
            f"tail bound {tail:.2g}, {elapsed:.2f} s")


def test_sphere_closed_form(verdict):
    worst_phi = worst_T = 0.0
    for n in (3, 4, 5, 7):
        for K in (0.5, 1.0, 2.0):
            p = CurveParams(n, K, 0.0, t0=0.3)
            R = K ** (-1.0 / (n - 1))
            c = solve_constant_K(p, count=401)
            exact = R * np.cos((c.t - p.t0) / R)
            worst_phi = max(worst_phi, float(np.max(np.abs(c.phi - exact))))
            worst_T = max(worst_T, abs(period_data(p).full_period - math.pi * R))
    verdict("sphere closed form", worst_phi < 1e-8 and worst_T < 1e-9,
            f"sup phi error {worst_phi:.2g} (< 1e-8), period error {worst_T:.2g} (< 1e-9)")


def test_tractroid_classics(verdict):
    c = solve_constant_K(CurveParams(3, -1.0, -1.0, t0=0.5), t_min=-30.0, count=601)
    phi_err = float(np.max(np.abs(c.phi - np.exp(c.t - 0.5))))
    A = surface_area(c, both_halves=True).value
    V = enclosed_volume(c, both_halves=True).value
    ra, rv = abs(A - 4 * math.pi) / (4 * math.pi), abs(V - 2 * math.pi / 3) / (2 * math.pi / 3)
    verdict("tractroid classics", phi_err < 1e-8 and ra < 1e-5 and rv < 1e-5,
            f"phi error {phi_err:.2g}, area rel {ra:.2g}, volume rel {rv:.2g}")


def test_oracle_equivalence(verdict):
    checks = equivalence_checks()
    worst = max(c["max_error"] for c in checks)
    verdict("oracle equivalence", len(checks) == 12 and worst < 1e-6,
            f"{len(checks)} fixtures, sup error {worst:.2g} (< 1e-6)")


def test_fundamental_forms(verdict):
    checks = forms_checks(points_per_curve=50, h=1e-3, seed=0)
    gauss = [c for c in checks if c["name"].startswith("gauss")]
    diag = [c for c in checks if c["name"].startswith("diagonal")]
    g_ok = all(c["pass"] for c in gauss)
    d_ok = all(c["pass"] for c in diag)
    # convergence order of the Gauss curvature error in h at a fixed point
    c = solve_constant_K(CurveParams(4, 1.5, 0.5), count=3)
    hs = np.array([1e-2, 5e-3, 2.5e-3])
    errs = [abs(numeric_curvatures(numeric_forms(c, 0.2, [0.3, 1.1], h))[1] - 1.5) for h in hs]
    order = _slope(hs, errs)
    verdict("fundamental forms", g_ok and d_ok and order >= 1.8,
            f"max Gauss error {max(c['max_error'] for c in gauss):.2g}, "
            f"max off-diagonal {max(c['max_error'] for c in diag):.2g}, order {order:.3f}")


def _tail_orders(n):
    c = solve_constant_K(CurveParams(n, -1.0, -1.0), count=3)
    tau = pseudosphere_time_shift(n, -1.0)
    T = tau - np.geomspace(50.0, 800.0, 6)
    S = [surface_area(c, t_range=(-math.inf, t)).value for t in T]
    V = [enclosed_volume(c, t_range=(-math.inf, t)).value for t in T]
    x = tau - T
    return _slope(x, S), _slope(x, V)


def test_series_and_asymptotics(verdict):
    parts = []
    ok = True
    # Taylor remainder at smooth extrema
    worst_order = math.inf
    for p in (CurveParams(3, 1.0, 0.5), CurveParams(4, 2.0, 0.0), CurveParams(5, -1.0, -2.0)):
        c = solve_constant_K(p, count=3)
        dt = np.geomspace(2e-2, 1.5e-1, 8)
        rem = np.abs(c.evaluate(p.t0 + dt)[0] - taylor_extremum(p, dt))
        worst_order = min(worst_order, _slope(dt, rem))
    ok &= worst_order >= 5.5
    parts.append(f"Taylor order {worst_order:.3f} (>= 5.5)")
    # n = 4 leading behaviour against the solved curve
    c = solve_constant_K(CurveParams(4, -1.0, -1.0), count=3)
    tau = pseudosphere_time_shift(4, -1.0)
    t = -np.geomspace(50.0, 1000.0, 40)
    rel = np.max(np.abs(asymptotic_pseudosphere(t - tau, 4, -1.0) / c.evaluate(t)[0] - 1.0))
    ok &= rel < 0.05
    parts.append(f"asymptotic rel {rel:.2g} (< 0.05)")
    for n in (4, 5):
        oS, oV = _tail_orders(n)
        tS, tV = (n - 1) / (3 - n), (n + 1) / (3 - n)
        ok &= abs(oS / tS - 1) <= 0.05 and abs(oV / tV - 1) <= 0.05
        parts.append(f"n={n} tail orders {oS:.3f}/{oV:.3f} vs {tS:g}/{tV:g}")
    verdict("series and asymptotics", ok, "; ".join(parts))


def test_comparison(verdict):
    checks = comparison_checks()
    worst = max(c["max_error"] for c in checks)
    verdict("comparison", all(c["pass"] for c in checks) and worst <= 1e-8,
            f"{len(checks)} pairs, max height difference {worst:.3g} (<= 1e-8)")


def test_riccati(verdict):
    worst_res = worst_direct = 0.0
    printed = []
    for case, t_hi in RICCATI_FIXTURES:
        ts = np.geomspace(1.0, t_hi, 100)
        rows = np.array([riccati_closed_form(case, float(t)) for t in ts])
        worst_res = max(worst_res, float(np.max(np.abs(rows[:, 3]))))
        printed.append(f"case {case.case_id}: {float(np.nanmax(np.abs(rows[:, 2]))):.3g}")
        direct = solve_prescribed_K(case.K, riccati_state(case, 1.0), 1e-3, (1.0, t_hi), n=3)
        exact = np.array([riccati_closed_form(case, float(t))[1] for t in direct.t])
        worst_direct = max(worst_direct, float(np.max(np.abs(direct.phi / exact - 1.0))))
    verdict("riccati", worst_res < 1e-9 and worst_direct < 1e-6,
            f"corrected residual {worst_res:.2g} (< 1e-9), direct rel error {worst_direct:.2g} (< 1e-6); "
            f"printed-form residuals {', '.join(printed)}")


def test_bump(verdict):
    eps = np.linspace(0.1, 0.9, 9)
    report = bump_shooting(BumpSpec(4, 1.0, 0.5), eps)
    d = np.array(report.dphi0)
    ok = len(d) == len(eps) and bool(np.all(np.isfinite(d))) and bool(np.all(d < 0))
    verdict("bump experiment", ok,
            f"phi'(0) in [{d.min():.4f}, {d.max():.4f}] over {len(d)} ramps, feasible={report.feasible}")
