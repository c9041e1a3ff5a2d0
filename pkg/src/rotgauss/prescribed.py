"""Profiles with a prescribed curvature function ``K(t)``.

The curvature equation is integrated directly as the first-order system

    phi' = p,    p' = -K(t) phi^(n-2) / (1 - p^2)^((n-3)/2),    psi' = sqrt(1 - p^2)

with classical fourth-order Runge-Kutta.  Each step is also taken as two half
steps; the difference of the two results, divided by 15, estimates the local
error and must stay below ``error_bound``.

For ``n = 3`` and ``K(t) = -a / t^2`` (``a < 0``) the equation is of Euler type
and has closed-form solutions, see :func:`riccati_closed_form`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .curvature import CurveState
from .curves import EndpointKind, GeneratingCurve
from .errors import DegenerateTangent, DomainError, ParameterError, StepTooLarge

TANGENT_LIMIT = 1.0 - 1e-9
# psi' below which a failed step is read as arrival at a vertical tangent
RIM_ZONE = 0.25


@dataclass(frozen=True)
class PrescribedK:
    """Curvature given as a function of arclength."""

    n: int
    K: Callable[[float], float]
    label: str = "K(t)"


class _Singular(Exception):
    pass


def _as_function(curvature) -> tuple[Callable[[float], float], str]:
    if callable(curvature):
        return curvature, getattr(curvature, "__name__", "K(t)")
    value = float(curvature)
    return (lambda t: value), f"constant {value!r}"


def _rhs(t, y, Kf, n):
    phi, p, _ = y
    one = 1.0 - p * p
    if one <= 0.0:
        raise _Singular
    if n == 3:
        acc = -Kf(t) * phi
    else:
        acc = -Kf(t) * phi ** (n - 2) / one ** ((n - 3) / 2)
    return (p, acc, math.sqrt(one))


def _rk4(t, y, h, Kf, n):
    k1 = _rhs(t, y, Kf, n)
    k2 = _rhs(t + h / 2, tuple(a + h / 2 * b for a, b in zip(y, k1)), Kf, n)
    k3 = _rhs(t + h / 2, tuple(a + h / 2 * b for a, b in zip(y, k2)), Kf, n)
    k4 = _rhs(t + h, tuple(a + h * b for a, b in zip(y, k3)), Kf, n)
    return tuple(a + h / 6 * (b + 2 * c + 2 * d + e) for a, b, c, d, e in zip(y, k1, k2, k3, k4))


def _march(Kf, n, t_start, y, t_end, step, error_bound, on_degenerate):
    """Integrate from ``t_start`` to ``t_end``; returns times, states and the halt reason."""
    count = max(1, int(math.ceil(abs(t_end - t_start) / step - 1e-9)))
    h = (t_end - t_start) / count
    ts, ys = [t_start], [y]
    t = t_start
    for i in range(count):
        try:
            full = _rk4(t, y, h, Kf, n)
            half = _rk4(t, y, h / 2, Kf, n)
            two = _rk4(t + h / 2, half, h / 2, Kf, n)
        except _Singular:
            reason = "tangent"
            break
        err = max(abs(a - b) for a, b in zip(two, full)) / 15.0
        if not math.isfinite(err) or err > error_bound:
            if 1.0 - y[1] * y[1] < RIM_ZONE ** 2:
                # phi'' blows up at a vertical tangent when n > 3; a fixed step
                # cannot follow it further, so this counts as reaching the rim
                reason = "tangent"
                break
            raise StepTooLarge(f"local error estimate {err:.3g} exceeds {error_bound:.3g} at t={t:.6g}")
        y = two
        t = t_start + (i + 1) * h
        ts.append(t)
        ys.append(y)
        if y[0] <= 0.0:
            reason = "axis"
            break
        if abs(y[1]) >= TANGENT_LIMIT:
            reason = "tangent"
            break
    else:
        return ts, ys, None
    if reason == "tangent" and on_degenerate == "raise":
        raise DegenerateTangent(f"|phi'| reached 1 near t={t:.6g}")
    return ts, ys, reason


def solve_prescribed_K(curvature, init: CurveState, step: float, t_range: tuple[float, float],
                       n: int = 3, error_bound: float = 1e-8,
                       on_degenerate: str = "halt") -> GeneratingCurve:
    """Integrate the curvature equation for ``K(t)`` through ``init``.

    Parameters
    ----------
    curvature : callable or float
        ``K(t)``; a number means constant curvature.
    init : CurveState
        Initial state; ``init.t`` may lie anywhere in ``t_range`` and the
        solution is continued in both directions.
    step : float
        Nominal step size (adjusted down so the range is covered exactly).
    on_degenerate : {'halt', 'raise'}
        Whether reaching ``|phi'| = 1`` ends the curve with a flag in
        ``metadata['halted']`` or raises :class:`DegenerateTangent`.
    """
    if n < 3:
        raise ParameterError(f"n must be at least 3, got {n}")
    if step <= 0:
        raise ParameterError("step must be positive")
    if on_degenerate not in ("halt", "raise"):
        raise ParameterError("on_degenerate must be 'halt' or 'raise'")
    if abs(init.dphi) >= 1.0:
        raise DegenerateTangent("initial slope must satisfy |phi'| < 1")
    ta, tb = t_range
    if not ta <= init.t <= tb:
        raise ParameterError("init.t must lie inside t_range")
    Kf, label = _as_function(curvature)
    y0 = (init.phi, init.dphi, init.psi)
    halted = {}
    left_t, left_y = [init.t], [y0]
    if ta < init.t:
        left_t, left_y, why = _march(Kf, n, init.t, y0, ta, step, error_bound, on_degenerate)
        if why:
            halted["start"] = why
    right_t, right_y = [init.t], [y0]
    if tb > init.t:
        right_t, right_y, why = _march(Kf, n, init.t, y0, tb, step, error_bound, on_degenerate)
        if why:
            halted["end"] = why
    t = np.array(left_t[::-1] + right_t[1:])
    ys = np.array(left_y[::-1] + right_y[1:])
    phi, dphi, psi = ys[:, 0], ys[:, 1], ys[:, 2]
    dpsi = np.sqrt(np.clip(1.0 - dphi ** 2, 0.0, None))
    Kt = np.array([Kf(tt) for tt in t])
    with np.errstate(divide="ignore", invalid="ignore"):
        if n == 3:
            ddphi = -Kt * phi
        else:
            ddphi = np.where(dpsi > 0, -Kt * phi ** (n - 2) / dpsi ** (n - 3), np.nan)
    ends = []
    for side in ("start", "end"):
        why = halted.get(side)
        ends.append(EndpointKind.VERTICAL_RIM if why == "tangent" else
                    EndpointKind.CONE_POINT if why == "axis" else EndpointKind.OPEN_CUT)
    meta = {"solver": "rk4", "step": step, "error_bound": error_bound, "curvature": label,
            "halted": halted, "junctions": []}
    # a zero slope joins the running branch; a branch ends where the sign flips
    cut, last = [0], 0.0
    for i, sg in enumerate(np.sign(dphi)):
        if sg != 0 and last != 0 and sg != last:
            cut.append(i)
        last = sg or last
    cut.append(len(t))
    branches = [(a, b, int(np.sign(np.sum(dphi[a:b])))) for a, b in zip(cut[:-1], cut[1:]) if b > a]
    return GeneratingCurve(PrescribedK(n, Kf, label), t, phi, psi, dphi, dpsi, ddphi,
                           branches, tuple(ends), meta)


# ---------------------------------------------------------------------------
# K(t) = -a / t^2 in dimension three


@dataclass(frozen=True)
class RiccatiCase:
    """Curvature ``K(t) = -a t^-2`` with ``a < 0`` and the data of its solutions.

    ``c`` is the integration constant of the exact solution and ``scale`` an
    overall factor (any multiple of a solution is a solution when ``n = 3``;
    it is used to keep ``|phi'| < 1``).  ``c0`` is the lower limit used to
    normalise the case 1 form printed with the reduction.
    """

    a: float
    c: float = 0.0
    scale: float = 1.0
    c0: float = 2.0

    def __post_init__(self):
        if not self.a < 0:
            raise ParameterError(f"a must be negative, got {self.a}")
        if self.scale == 0:
            raise ParameterError("scale must be nonzero")

    @property
    def case_id(self) -> int:
        if abs(self.a + 0.25) <= 1e-15:
            return 2
        return 1 if self.a > -0.25 else 3

    @property
    def D(self) -> float | None:
        return math.sqrt(4 * self.a + 1) if self.case_id == 1 else None

    @property
    def A(self) -> float | None:
        return math.sqrt(-self.a - 0.25) if self.case_id == 3 else None

    def K(self, t):
        return -self.a / (t * t)


def _terms(case: RiccatiCase):
    """Corrected solution as a sum ``Re(sum coef t^r)`` plus a log term for case 2."""
    s, c = case.scale, case.c
    if case.case_id == 1:
        D = case.D
        return [(s, (1 + D) / 2), (-s * c, (1 - D) / 2)]
    if case.case_id == 3:
        return [(s * complex(math.cos(c), math.sin(c)), complex(0.5, -case.A))]
    return None


def _corrected(case: RiccatiCase, t: float):
    """``phi, phi', phi''`` of the exact solution."""
    terms = _terms(case)
    if terms is None:
        s, L = case.scale, math.log(t) - case.c
        rt = math.sqrt(t)
        return s * rt * L, s * (L / 2 + 1) / rt, -s * L / (4 * t * rt)
    phi = d1 = d2 = 0.0
    for coef, r in terms:
        tr = coef * t ** r
        phi += (tr).real
        d1 += (tr * r / t).real
        d2 += (tr * r * (r - 1) / (t * t)).real
    return phi, d1, d2


def _printed(case: RiccatiCase, t: float):
    """``phi, phi''`` of the form printed with the reduction."""
    s = case.scale
    if case.case_id == 1:
        D = case.D
        norm = abs(case.c0 ** D - 1.0)
        u = t ** D - 1.0
        sg = math.copysign(1.0, u)
        return s * abs(u) / norm, s * sg * D * (D - 1) * t ** (D - 2) / norm
    if case.case_id == 2:
        return s * math.log(t), -s / (t * t)
    cl, sl = math.cos(math.log(t)), math.sin(math.log(t))
    sg = math.copysign(1.0, cl)
    return s * abs(cl), s * sg * (sl - cl) / (t * t)


def riccati_closed_form(case: RiccatiCase, t: float) -> tuple[float, float, float, float]:
    """Printed and exact closed forms at ``t`` with their residuals ``-phi''/phi - K(t)``.

    Returns
    -------
    phi_paper, phi_corrected, residual_paper, residual_corrected
        ``phi_paper`` is the form obtained by the reduction to
        ``f' + f^2 = -K`` as printed (case 1 normalised at ``c0``, case 2
        ``scale * ln t``, case 3 ``scale * |cos(ln t)|``); ``phi_corrected``
        the exact Euler-equation solution
        ``scale * (t^((1+D)/2) - c t^((1-D)/2))``,
        ``scale * sqrt(t) (ln t - c)`` or ``scale * sqrt(t) cos(A ln t - c)``.
        Residuals use exact derivatives; a residual is ``nan`` where its form
        vanishes.
    """
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    if case.case_id == 3:
        if abs(math.cos(case.A * math.log(t) - case.c)) < 1e-14 or abs(math.cos(math.log(t))) < 1e-14:
            raise DomainError(f"t={t} is a zero of the cosine factor")
    K = case.K(t)
    pp, pdd = _printed(case, t)
    cp, _, cdd = _corrected(case, t)
    res_p = -pdd / pp - K if pp != 0 else math.nan
    res_c = -cdd / cp - K if cp != 0 else math.nan
    return pp, cp, res_p, res_c


def riccati_state(case: RiccatiCase, t: float) -> CurveState:
    """Exact solution state at ``t`` (``psi`` set to 0), for seeding the integrator."""
    phi, d1, d2 = _corrected(case, t)
    if abs(d1) >= 1.0:
        raise DomainError(f"|phi'| = {abs(d1):.3g} >= 1 at t={t}; reduce the scale")
    return CurveState(t, phi, 0.0, d1, math.sqrt(1 - d1 * d1), d2)


# ---------------------------------------------------------------------------
# the bump experiment


@dataclass(frozen=True)
class BumpSpec:
    """Curvature ramp ``K_eps``: 0 up to ``t = -1``, smooth step, ``amplitude`` after ``-eps``.

    The step is ``h(x) / (h(x) + h(1 - x))`` with ``h(x) = exp(-1/x)`` on
    ``x = (t + 1) / (1 - eps)``; it is C-infinity and monotone.
    """

    n: int
    r0: float
    epsilon: float
    amplitude: float = 1.0

    def __post_init__(self):
        if self.n < 3:
            raise ParameterError("n must be at least 3")
        if not self.r0 > 0:
            raise ParameterError("r0 must be positive")
        if not 0 < self.epsilon < 1:
            raise ParameterError("epsilon must lie in (0, 1)")
        if self.amplitude < 0:
            raise ParameterError("amplitude must be non-negative")

    def with_epsilon(self, eps: float) -> "BumpSpec":
        return BumpSpec(self.n, self.r0, eps, self.amplitude)

    def K(self, t: float) -> float:
        if t <= -1.0:
            return 0.0
        x = (t + 1.0) / (1.0 - self.epsilon)
        if x >= 1.0:
            return self.amplitude
        h0 = math.exp(-1.0 / x)
        h1 = math.exp(-1.0 / (1.0 - x))
        return self.amplitude * h0 / (h0 + h1)


@dataclass
class BumpReport:
    eps: list[float]
    dphi0: list[float]
    argmin: float
    feasible: bool
    halted: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"eps": self.eps, "dphi0": self.dphi0, "argmin": self.argmin,
                "feasible": self.feasible, "halted": self.halted}


def bump_shooting(spec: BumpSpec, eps_grid, step: float = 1e-3) -> BumpReport:
    """Shoot from the cylinder ``phi = r0`` at ``t = -1`` to ``t = 0`` for each ``eps``.

    Records ``phi'(0)``; the ramp is feasible if some ``|phi'(0)| < 1e-6``.
    """
    eps_list, values, halts = [], [], []
    for eps in eps_grid:
        sp = spec.with_epsilon(float(eps))
        init = CurveState(-1.0, sp.r0, 0.0, 0.0, 1.0, 0.0)
        curve = solve_prescribed_K(sp.K, init, step, (-1.0, 0.0), n=sp.n)
        eps_list.append(float(eps))
        values.append(float(curve.dphi[-1]) if curve.t[-1] == 0.0 else math.nan)
        halts.append(curve.metadata["halted"])
    finite = [(abs(v), e) for v, e in zip(values, eps_list) if math.isfinite(v)]
    best = min(finite)[1] if finite else math.nan
    feasible = any(a < 1e-6 for a, _ in finite)
    return BumpReport(eps_list, values, best, feasible, halts)
