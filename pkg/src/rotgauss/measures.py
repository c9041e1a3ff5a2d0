"""Areas and enclosed volumes of rotational hypersurfaces.

Two conventions are supported.  The *geometric* one integrates the area of
the meridian sphere against arclength and the volume of the meridian ball
against height,

    area = int S_{n-1}(phi) dt,        volume = int V_{n-1}(phi) dpsi.

The ``"paper"`` convention swaps the measures and doubles the result,

    area = 2 int S_{n-1}(phi) dpsi,    volume = 2 int V_{n-1}(phi) dt.

Here ``S_k(r)`` is the area of the sphere bounding the k-ball of radius r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .curves import EndpointKind, GeneratingCurve
from .errors import ParameterError, UnboundedDomain

CONVENTIONS = ("geometric", "paper")


def ball_volume(n: int, r: float) -> float:
    """Volume ``pi^(n/2) / Gamma(n/2 + 1) r^n`` of the n-ball."""
    if n < 1 or r < 0:
        raise ParameterError("ball_volume needs n >= 1 and r >= 0")
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1) * r ** n


def sphere_area(n: int, r: float) -> float:
    """Area ``2 pi^(n/2) / Gamma(n/2) r^(n-1)`` of the sphere bounding the n-ball."""
    if n < 1 or r < 0:
        raise ParameterError("sphere_area needs n >= 1 and r >= 0")
    return 2 * math.pi ** (n / 2) / math.gamma(n / 2) * r ** (n - 1)


@dataclass(frozen=True)
class MeasureResult:
    value: float
    convention: str
    truncation_tail_bound: float
    n: int

    def as_dict(self) -> dict:
        return {"value": self.value, "convention": self.convention,
                "tail_bound": self.truncation_tail_bound, "n": self.n}


def _weight(kind: str, n: int):
    k = n - 1
    if kind == "area":
        c = 2 * math.pi ** (k / 2) / math.gamma(k / 2)
        return (lambda r: c * np.asarray(r) ** (k - 1)), k - 1
    c = math.pi ** (k / 2) / math.gamma(k / 2 + 1)
    return (lambda r: c * np.asarray(r) ** k), k


def _infinite_ends(curve: GeneratingCurve) -> list[int]:
    return [i for i, e in enumerate(curve.endpoints) if e is EndpointKind.PSEUDOSPHERE_END]


def _sampled_tail(curve, weight, power, side, n):
    """Tail beyond a truncated pseudosphere end from its decay law (sample-only curves)."""
    i = 0 if side == 0 else -1
    phi_c = float(curve.phi[i])
    if n == 3:
        # phi decays exponentially in arclength; weight ~ phi^power
        return float(weight(phi_c)) / power
    # phi ~ f |t|^(2/(3-n)) so weight(phi) ~ |t|^(2 power/(3-n)), integrable for power >= 1
    from .series import pseudosphere_time_shift

    p = curve.params
    tau = pseudosphere_time_shift(n, p.K, p.t0)
    tc = abs(float(curve.t[i]) - tau)
    e = 2.0 * power / (3 - n)
    return float(weight(phi_c)) * tc / (-e - 1.0)


def _measure(curve: GeneratingCurve, n: int | None, convention: str, kind: str,
             include_tail: bool, t_range, both_halves: bool) -> MeasureResult:
    if convention not in CONVENTIONS:
        raise ParameterError(f"convention must be one of {CONVENTIONS}")
    n = n if n is not None else curve.n
    if n is None or n < 3:
        raise ParameterError("the ambient dimension n (>= 3) is required")
    weight, power = _weight(kind, n)
    geometric = convention == "geometric"
    # area: dt (geometric) or dpsi (paper); volume: the other way round
    measure = ("t" if geometric else "psi") if kind == "area" else ("psi" if geometric else "t")
    factor = 1.0 if geometric else 2.0
    if both_halves:
        factor *= 2.0
    ta, tb = (float(curve.t[0]), float(curve.t[-1])) if t_range is None else map(float, t_range)
    ends = _infinite_ends(curve)
    if ends and "t_min" not in curve.metadata:
        raise UnboundedDomain("an infinite end needs truncation metadata")
    cfg = getattr(curve.profile, "cfg", None)
    tol = cfg.abs_tol if cfg is not None else 1e-10
    value, bound = 0.0, 0.0
    if curve.profile is not None:
        value = curve.profile.integrate(weight, ta, tb, measure)
        bound += getattr(curve.profile, "last_dropped", 0.0)
    else:
        if not (math.isfinite(ta) and math.isfinite(tb)):
            raise UnboundedDomain("sample-only curves are integrated over their samples")
        sel = (curve.t >= ta) & (curve.t <= tb)
        y = weight(curve.phi[sel]) * (curve.dpsi[sel] if measure == "psi" else 1.0)
        value = float(simpson(y, x=curve.t[sel]))
    for side in ends:
        t_end = ta if side == 0 else tb
        # the tail belongs to the truncation end only, not to an interior window
        if not math.isfinite(t_end) or t_end != float(curve.t[0 if side == 0 else -1]):
            continue
        if curve.profile is not None:
            lo, hi = (-math.inf, t_end) if side == 0 else (t_end, math.inf)
            tail = curve.profile.integrate(weight, lo, hi, measure)
            dropped = getattr(curve.profile, "last_dropped", 0.0)
        else:
            tail = _sampled_tail(curve, weight, power, side, n)
            dropped = abs(tail)
        if include_tail:
            value += tail
            bound += dropped
        else:
            bound += abs(tail) + dropped
    if ends:
        bound += tol * max(1.0, abs(value))
    value *= factor
    return MeasureResult(float(value), convention, float(factor * bound), int(n))


def surface_area(curve: GeneratingCurve, n: int | None = None, convention: str = "geometric",
                 include_tail: bool = True, t_range=None, both_halves: bool = False) -> MeasureResult:
    """Area of the hypersurface generated by ``curve``.

    For a truncated pseudosphere the part beyond the truncation time is added
    (``include_tail``) and the bound reports what remains unaccounted for;
    with ``include_tail=False`` the bound is the size of the omitted tail.
    ``t_range`` restricts the integral to a time window (``-inf`` allowed on
    exact pseudosphere curves); the tail is only added when the window ends
    at the truncation time.  ``both_halves`` doubles the result, counting
    the mirror image across the rim.
    """
    return _measure(curve, n, convention, "area", include_tail, t_range, both_halves)


def enclosed_volume(curve: GeneratingCurve, n: int | None = None, convention: str = "geometric",
                    include_tail: bool = True, t_range=None, both_halves: bool = False) -> MeasureResult:
    """Volume enclosed by the hypersurface and the flat disks at its ends; see :func:`surface_area`."""
    return _measure(curve, n, convention, "volume", include_tail, t_range, both_halves)
