"""Finite-difference verification of the curvature formulas.

The hypersurface is embedded through the hypersphere chart

    r(t, theta) = (phi(t) e(theta), psi(t)),
    e = (c1 ... c_{n-2}, c1 ... c_{n-3} s_{n-2}, ..., c1 s2, s1),

with ``c_i = cos(theta_i)``, ``s_i = sin(theta_i)``.  Tangents and second
derivatives are central differences in ``(t, theta)``; the normal spans the
orthogonal complement of the tangents and is oriented along
``(psi' e, -phi')``.  The shape operator is ``A = -II I^-1``; its eigenvalues
are the principal curvatures and their product the Gauss-Kronecker curvature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .curvature import CurveParams, PqParams, validate_params
from .errors import HeightOutOfRange, ParameterError, RankDeficiency, SingularFirstForm, StepOutOfRange

# (n, |K|) x (sign of K, C_K): every regime with a finite or truncated profile
FIXTURE_GRID = [CurveParams(n, s * k, ck)
                for n, k in ((3, 1.0), (5, 2.0))
                for s, ck in ((1, -0.5), (1, 0.0), (1, 2.0), (-1, -2.0), (-1, -1.0), (-1, -0.5))]


@dataclass(frozen=True)
class EmbeddingPoint:
    phi: float
    psi: float
    angles: tuple

    def __post_init__(self):
        if self.phi < 0:
            raise ParameterError("phi must be non-negative")
        if self.angles and abs(self.angles[0]) > math.pi / 2 + 1e-12:
            raise ParameterError("the first angle must lie in [-pi/2, pi/2]")


@dataclass
class FundamentalForms:
    first: np.ndarray
    second: np.ndarray
    normal: np.ndarray
    step: float
    tangents: np.ndarray = field(repr=False, default=None)

    def offdiagonal(self) -> tuple[float, float]:
        """Largest off-diagonal magnitude of ``I`` and of ``II``."""
        mask = ~np.eye(len(self.first), dtype=bool)
        return float(np.max(np.abs(self.first[mask]), initial=0.0)), \
            float(np.max(np.abs(self.second[mask]), initial=0.0))

    def determinant_ratio(self) -> float:
        """``(-1)^(n-1) det(II) / det(I)``, which equals ``det(-II I^-1)``."""
        d = len(self.first)
        return (-1) ** d * float(np.linalg.det(self.second) / np.linalg.det(self.first))


def sphere_direction(angles) -> np.ndarray:
    """Unit vector ``e(theta)`` of the hypersphere chart (length ``len(angles) + 1``)."""
    angles = np.asarray(angles, dtype=float)
    k = len(angles)
    out = np.empty(k + 1)
    prod = 1.0
    # coordinate k - i (0-based from the end) picks up sin(theta_{i+1}) after i cosines
    for i in range(k):
        out[k - i] = prod * math.sin(angles[i])
        prod *= math.cos(angles[i])
    out[0] = prod
    return out


def embed_point(p: EmbeddingPoint, n: int) -> np.ndarray:
    """Point of the rotational hypersurface in R^n."""
    if len(p.angles) != n - 2:
        raise ParameterError(f"need {n - 2} angles for n={n}, got {len(p.angles)}")
    return np.append(p.phi * sphere_direction(p.angles), p.psi)


def embed_pq(phi: float, psi: float, alphas, betas, pq: PqParams) -> np.ndarray:
    """Point ``(phi e_p(alpha), psi e_q(beta))`` of the SO(p) x SO(q)-invariant hypersurface."""
    if len(alphas) != pq.p - 1 or len(betas) != pq.q - 1:
        raise ParameterError("need p-1 and q-1 angles")
    return np.concatenate([phi * sphere_direction(alphas), psi * sphere_direction(betas)])


def analytic_first_form(phi: float, angles) -> np.ndarray:
    """``diag(1, phi^2, phi^2 c1^2, phi^2 c1^2 c2^2, ...)`` in the ``(t, theta)`` chart."""
    diag = [1.0]
    w = phi * phi
    for a in angles:
        diag.append(w)
        w *= math.cos(a) ** 2
    return np.diag(diag)


def _profile_function(curve) -> Callable:
    if callable(curve) and not hasattr(curve, "evaluate"):
        return curve
    if getattr(curve, "profile", None) is None:
        raise ParameterError("the oracle needs a curve with an exact representation")
    return lambda t: tuple(np.ravel(v) for v in curve.evaluate(t)[:2])


def _forms(points: Callable, d: int, h: float, ref_normal: np.ndarray) -> FundamentalForms:
    """Forms from ``points(offsets)``: positions at chart offsets (rows), chart dimension ``d``."""
    E = np.eye(d) * h
    offs = [np.zeros(d)]
    for i in range(d):
        offs += [E[i], -E[i]]
    for i in range(d):
        for j in range(i + 1, d):
            offs += [E[i] + E[j], E[i] - E[j], -E[i] + E[j], -E[i] - E[j]]
    P = points(np.array(offs))
    r0 = P[0]
    T = np.empty((d, len(r0)))
    D2 = np.empty((d, d, len(r0)))
    for i in range(d):
        rp, rm = P[1 + 2 * i], P[2 + 2 * i]
        T[i] = (rp - rm) / (2 * h)
        D2[i, i] = (rp - 2 * r0 + rm) / (h * h)
    k = 1 + 2 * d
    for i in range(d):
        for j in range(i + 1, d):
            pp, pm, mp, mm = P[k:k + 4]
            D2[i, j] = D2[j, i] = (pp - pm - mp + mm) / (4 * h * h)
            k += 4
    _, sv, vt = np.linalg.svd(T)
    if sv[-1] <= 1e-8 * sv[0]:
        raise RankDeficiency("tangent vectors are numerically dependent")
    normal = vt[-1]
    normal = normal / np.linalg.norm(normal)
    if normal @ ref_normal < 0:
        normal = -normal
    first = T @ T.T
    second = D2 @ normal
    return FundamentalForms(first, 0.5 * (second + second.T), normal, h, T)


def _check_step(h):
    if not 1e-6 <= h <= 1e-2:
        raise StepOutOfRange(f"step h={h} outside [1e-6, 1e-2]")


def numeric_forms(curve, t: float, angles, h: float = 1e-3) -> FundamentalForms:
    """Fundamental forms at ``(t, angles)`` by central differences.

    ``curve`` is a :class:`GeneratingCurve` with an exact representation, or
    a function ``t -> (phi, psi)`` accepting arrays.
    """
    _check_step(h)
    f = _profile_function(curve)
    angles = np.asarray(angles, dtype=float)
    d = len(angles) + 1
    ts = t + np.array([-h, 0.0, h])
    phis, psis = (np.asarray(v, dtype=float) for v in f(ts))
    ref = np.append((psis[2] - psis[0]) * sphere_direction(angles), -(phis[2] - phis[0]))

    def points(offs):
        out = []
        for o in offs:
            k = int(round(o[0] / h)) + 1
            out.append(np.append(phis[k] * sphere_direction(angles + o[1:]), psis[k]))
        return np.array(out)

    return _forms(points, d, h, ref)


def numeric_forms_pq(profile: Callable, t: float, alphas, betas, pq: PqParams,
                     h: float = 1e-3) -> FundamentalForms:
    """Fundamental forms of the doubly rotational embedding by central differences."""
    _check_step(h)
    alphas, betas = np.asarray(alphas, dtype=float), np.asarray(betas, dtype=float)
    ts = t + np.array([-h, 0.0, h])
    phis, psis = (np.asarray(v, dtype=float) for v in profile(ts))
    ref = np.concatenate([(psis[2] - psis[0]) * sphere_direction(alphas),
                          -(phis[2] - phis[0]) * sphere_direction(betas)])
    na = len(alphas)

    def points(offs):
        out = []
        for o in offs:
            k = int(round(o[0] / h)) + 1
            out.append(embed_pq(phis[k], psis[k], alphas + o[1:1 + na], betas + o[1 + na:], pq))
        return np.array(out)

    return _forms(points, pq.n - 1, h, ref)


def numeric_curvatures(forms: FundamentalForms) -> tuple[np.ndarray, float]:
    """Sorted eigenvalues of ``-II I^-1`` and their product."""
    I, II = forms.first, forms.second
    if not np.all(np.isfinite(I)) or np.linalg.cond(I) > 1e12 or np.linalg.det(I) <= 0:
        raise SingularFirstForm("first fundamental form is singular")
    A = -II @ np.linalg.inv(I)
    ev = np.sort(np.real(np.linalg.eigvals(A)))
    return ev, float(np.prod(ev))


# ---------------------------------------------------------------------------
# comparison of profiles with a shared extremum


@dataclass
class ComparisonReport:
    a: float
    b: float
    C: float
    n: int
    heights: np.ndarray
    differences: np.ndarray
    tolerance: float = 1e-8

    @property
    def max_difference(self) -> float:
        return float(np.max(self.differences))

    @property
    def passed(self) -> bool:
        return bool(self.max_difference <= self.tolerance)

    def as_dict(self) -> dict:
        return {"name": f"comparison a={self.a} b={self.b} C={self.C} n={self.n}",
                "max_error": self.max_difference, "threshold": self.tolerance, "pass": self.passed}


def check_comparison(a: float, b: float, C: float, n: int, heights=None, count: int = 20) -> ComparisonReport:
    """Compare two profiles with a shared extremum radius ``C`` at equal heights.

    For ``a > b > 0`` both profiles share the maximum ``C``; for
    ``0 > a > b`` the minimum.  ``C_K = C^(n-1) K - 1`` for each curve.  The
    report holds ``phi_a - phi_b`` at each height on the branch leaving the
    extremum; the comparison passes when all are ``<= 1e-8``.
    """
    from .curves import solve_constant_K

    if not ((a >= b > 0) or (0 > a >= b)):
        raise ParameterError("need a >= b > 0 or 0 > a >= b")
    curves, tops = [], []
    for K in (a, b):
        p = validate_params(CurveParams(n, K, C ** (n - 1) * K - 1.0))
        c = solve_constant_K(p, count=3)
        prof = c.profile
        curves.append(c)
        tops.append((prof.L, prof.height))
    hmax = min(h for _, h in tops)
    if heights is None:
        heights = np.linspace(0.0, hmax, count + 1)[1:]
    heights = np.asarray(heights, dtype=float)
    if np.any(heights < 0) or np.any(heights > hmax * (1 + 1e-12)):
        raise HeightOutOfRange(f"heights must lie in [0, {hmax}]")
    # the branch leaving the extremum is the half-branch itself, so equal
    # heights are found by inverting its cumulative height integral
    phis = [c.profile.branch.at_height(np.minimum(heights, c.profile.height))[1] for c in curves]
    return ComparisonReport(a, b, C, n, heights, phis[0] - phis[1])


COMPARISON_GRID_POS = [(2.0, 1.0), (3.0, 1.0), (1.5, 1.2)]
COMPARISON_GRID_NEG = [(-1.0, -2.0), (-1.0, -3.0), (-1.2, -1.5)]


# ---------------------------------------------------------------------------
# sampling helpers and the verification suite


def interior_times(curve, count: int, rng: np.random.Generator) -> np.ndarray:
    """Random times away from rims, poles and the truncated end of a constant-K curve."""
    prof = curve.profile
    t0, L = prof.params.t0, prof.L
    if prof.arch:
        return t0 + rng.uniform(-0.8, 0.8, count) * L
    span = 5.0 if not math.isfinite(L) else 0.8 * L
    lo = 0.2 if not math.isfinite(L) else 0.1 * L
    sigma = rng.uniform(lo, span, count)
    return t0 - sigma if prof.params.orientation > 0 else t0 + sigma


def random_angles(n: int, rng: np.random.Generator) -> np.ndarray:
    first = rng.uniform(-math.pi / 2 + 0.1, math.pi / 2 - 0.1)
    rest = rng.uniform(0, 2 * math.pi, n - 3)
    return np.concatenate([[first], rest])


def _record(name, err, thr):
    return {"name": name, "max_error": float(err), "threshold": float(thr), "pass": bool(err <= thr)}


def forms_checks(points_per_curve: int = 50, h: float = 1e-3, seed: int = 0) -> list[dict]:
    """Gauss curvature and diagonality at random points of every fixture curve."""
    from .curves import solve_constant_K

    rng = np.random.default_rng(seed)
    out = []
    for p in FIXTURE_GRID:
        c = solve_constant_K(p, count=3)
        gerr = offd = 0.0
        for t in interior_times(c, points_per_curve, rng):
            forms = numeric_forms(c, float(t), random_angles(p.n, rng), h)
            _, g = numeric_curvatures(forms)
            gerr = max(gerr, abs(g - p.K))
            offd = max(offd, *forms.offdiagonal())
        tag = f"n={p.n} K={p.K} C_K={p.ck}"
        out.append(_record(f"gauss {tag}", gerr, max(1e-4, 100 * h * h)))
        out.append(_record(f"diagonal {tag}", offd, 1e-6))
    return out


def comparison_checks() -> list[dict]:
    out = []
    for n in (3, 4, 5):
        for a, b in COMPARISON_GRID_POS:
            out.append(check_comparison(a, b, 0.8, n).as_dict())
        for a, b in COMPARISON_GRID_NEG:
            out.append(check_comparison(a, b, 1.2, n).as_dict())
    return out


def equivalence_checks(step: float = 2e-3) -> list[dict]:
    """Quadrature-built curves against direct integration seeded from an interior state."""
    out = []
    for p in FIXTURE_GRID:
        err = equivalence_error(p, step)
        out.append(_record(f"equivalence n={p.n} K={p.K} C_K={p.ck}", err, 1e-6))
    return out


def equivalence_window(curve) -> tuple[float, float, float]:
    """``(t_start, t_seed, t_end)``: a window clear of rims and axis points."""
    prof = curve.profile
    t0, L = prof.params.t0, prof.L
    if prof.arch:
        return t0 - 0.9 * L, t0 + 0.2 * L, t0 + 0.9 * L
    if not math.isfinite(L):
        return t0 - 8.0, t0 - 1.0, t0 - 0.05
    return t0 - 0.95 * L, t0 - 0.5 * L, t0 - 0.05 * L


def equivalence_error(p: CurveParams, step: float = 2e-3) -> float:
    from .curves import solve_constant_K
    from .prescribed import solve_prescribed_K

    c = solve_constant_K(p, count=3)
    ta, ts, tb = equivalence_window(c)
    init = c.state(ts)
    direct = solve_prescribed_K(p.K, init, step, (ta, tb), n=p.n)
    exact = c.evaluate(direct.t)[0]
    return float(np.max(np.abs(direct.phi - exact)))


def riccati_checks() -> list[dict]:
    from .prescribed import riccati_closed_form

    out = []
    for case, t_hi in RICCATI_FIXTURES:
        ts = np.geomspace(1.0, t_hi, 100)
        res = max(abs(riccati_closed_form(case, float(t))[3]) for t in ts)
        out.append(_record(f"riccati case {case.case_id} residual", res, 1e-9))
    return out


def _riccati_fixtures():
    from .prescribed import RiccatiCase

    return [(RiccatiCase(-3 / 16), 100.0), (RiccatiCase(-0.25, c=-1.0, scale=0.5), 100.0),
            (RiccatiCase(-1.25), 4.5)]


RICCATI_FIXTURES = _riccati_fixtures()

SUITES = {
    "forms": forms_checks,
    "comparison": comparison_checks,
    "equivalence": equivalence_checks,
    "riccati": riccati_checks,
}


def run_suite(suite: str = "all", seed: int = 0) -> dict:
    """Run verification checks; returns ``{"checks": [...], "pass": bool}``."""
    names = list(SUITES) if suite == "all" else [suite]
    checks = []
    for name in names:
        if name not in SUITES:
            raise ParameterError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
        fn = SUITES[name]
        checks += fn(seed=seed) if name == "forms" else fn()
    return {"checks": checks, "pass": all(c["pass"] for c in checks)}
