"""Generating curves of constant Gauss-Kronecker curvature.

Every nonzero-K profile is assembled from a single monotone half-branch
``H(sigma)``, where ``sigma`` is arclength measured from an anchor point at
``t0``:

* profiles with a smooth extremum (``K > 0``, or ``K < 0`` with ``C_K < -1``)
  are anchored at the extremum and are symmetric arches
  ``phi(t) = H(|t - t0|)``, continued periodically across vertical rims;
* the remaining ``K < 0`` profiles are a single branch anchored at the rim,
  running down to a cone point (``-1 < C_K < 0``) or out to the infinite
  pseudosphere end (``C_K = -1``).

``H`` is evaluated exactly by inverting the cumulative arclength integral, so
curves can be sampled anywhere without interpolation.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .curvature import CurveParams, CurveState, phi_bounds, validate_params
from .errors import OutOfBounds, ParameterError, TruncationRequired, ZeroCurvature
from .quadrature import DEFAULT_CONFIG, Branch, QuadratureConfig, _Panels, period_data

DEFAULT_TRUNCATION = 25.0


class EndpointKind(str, enum.Enum):
    SMOOTH_EXTREMUM = "SmoothExtremum"
    VERTICAL_RIM = "VerticalRim"
    SMOOTH_POLE = "SmoothPole"
    CONE_POINT = "ConePoint"
    PSEUDOSPHERE_END = "PseudosphereEnd"
    OPEN_CUT = "OpenCut"


# ---------------------------------------------------------------------------
# exact profiles


class _ConstantKProfile:
    """Exact evaluation and integration of a constant-K profile."""

    def __init__(self, params: CurveParams, periods: int, cfg: QuadratureConfig):
        self.params, self.cfg = params, cfg
        lo, hi = phi_bounds(params)
        K, c = params.K, params.ck
        self.arch = K > 0 or c < -1.0
        if self.arch:
            anchor, far = (hi, lo) if K > 0 else (lo, hi)
            self.rising = K < 0  # phi increases away from a minimum
            far_kind = (EndpointKind.VERTICAL_RIM if (K < 0 or c > 0) else
                        EndpointKind.SMOOTH_POLE if c == 0 else EndpointKind.CONE_POINT)
            if far_kind is not EndpointKind.VERTICAL_RIM and periods != 1:
                raise ParameterError("only profiles ending at vertical rims can be continued periodically")
        else:
            anchor, far = hi, (0.0 if params.is_pseudosphere else lo)
            self.rising = False
            far_kind = EndpointKind.PSEUDOSPHERE_END if params.is_pseudosphere else EndpointKind.CONE_POINT
            if periods not in (1, 2):
                raise ParameterError("a single-branch profile allows periods 1 or 2 (reflected at the rim)")
        self.periods = periods
        self.far_kind = far_kind
        self.branch = Branch(params, anchor, far, cfg)
        self.L = self.branch.length
        self.height = self.branch.height
        t0 = params.t0
        if self.arch:
            self.domain = (t0 - self.L, t0 - self.L + 2 * periods * self.L)
        elif periods == 2:
            self.domain = (t0 - self.L, t0 + self.L)
        elif params.orientation > 0:
            self.domain = (t0 - self.L, t0)
        else:
            self.domain = (t0, t0 + self.L)

    def _local(self, t):
        """Arch index and signed offset from the nearest anchor."""
        tau = np.asarray(t, dtype=float) - self.params.t0
        if self.arch:
            k = np.clip(np.round(tau / (2 * self.L)), 0, self.periods - 1)
            return k, tau - 2 * self.L * k
        return np.zeros_like(tau), tau

    def junctions(self):
        """Times of interior anchors and rims, with their kinds."""
        t0, L = self.params.t0, self.L
        out = []
        if self.arch:
            for k in range(self.periods):
                out.append((t0 + 2 * k * L, EndpointKind.SMOOTH_EXTREMUM))
                if k + 1 < self.periods:
                    out.append((t0 + (2 * k + 1) * L, EndpointKind.VERTICAL_RIM))
        elif self.periods == 2:
            out.append((t0, EndpointKind.VERTICAL_RIM))
        return out

    def end_kind(self, t: float, is_start: bool) -> EndpointKind:
        lo, hi = self.domain
        tol = 1e-12 * max(1.0, abs(t))
        if abs(t - (lo if is_start else hi)) <= tol:
            if self.arch or self.periods == 2:
                return self.far_kind
            at_anchor = (self.params.orientation > 0) != is_start
            return EndpointKind.VERTICAL_RIM if at_anchor else self.far_kind
        for tj, kind in self.junctions():
            if abs(t - tj) <= tol:
                return kind
        if self.arch and abs(t - self.params.t0) <= tol:
            return EndpointKind.SMOOTH_EXTREMUM
        return EndpointKind.OPEN_CUT

    def evaluate(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        lo, hi = self.domain
        span = max(1.0, abs(lo) if math.isfinite(lo) else 1.0, abs(hi))
        if np.any(t < lo - 1e-12 * span) or np.any(t > hi + 1e-12 * span):
            raise OutOfBounds(f"t outside the profile domain [{lo}, {hi}]")
        k, local = self._local(t)
        sigma = np.minimum(np.abs(local), self.L)
        phi, aphi, y, h = self.branch.at(sigma)
        s = np.sign(local)
        if not self.arch:
            s = np.where(local == 0, -float(self.params.orientation), s)
        dphi = (s if self.rising else -s) * aphi
        psi = np.sign(local) * h
        if self.arch:
            psi = psi + 2 * self.height * k
        p = self.params
        with np.errstate(divide="ignore", invalid="ignore"):
            if p.n == 3:
                ddphi = -p.K * phi
            else:
                ddphi = np.where(y > 0, -p.K * phi ** (p.m - 1) / y ** (p.m - 2), np.nan)
        return phi, psi, dphi, y, ddphi

    def integrate(self, weight, ta: float, tb: float, measure: str = "t") -> float:
        """``int weight(phi) dt`` (or ``dpsi``) between two times; ``ta`` may be ``-inf``."""
        t0, L = self.params.t0, self.L
        cuts = [ta, tb] + [tj for tj, _ in self.junctions() if ta < tj < tb]
        if self.arch and ta < t0 < tb:
            cuts.append(t0)
        cuts = sorted(set(cuts))
        total = 0.0
        self.last_dropped = 0.0
        for a, b in zip(cuts[:-1], cuts[1:]):
            if math.isfinite(a) and math.isfinite(b):
                mid = 0.5 * (a + b)
            else:
                mid = b - 1.0 if math.isfinite(b) else a + 1.0
            k, _ = self._local(np.array([mid]))
            base = t0 + 2 * L * float(k[0]) if self.arch else t0
            sa, sb = abs(a - base), abs(b - base)
            total += abs(self.branch.integrate(weight, min(sa, sb), max(sa, sb), measure))
            self.last_dropped += self.branch.last_dropped
        return total


class _ClosedFormProfile:
    """Profile given by explicit functions of ``t``; integrals by adaptive panels."""

    def __init__(self, funcs, domain, cfg: QuadratureConfig = DEFAULT_CONFIG, junctions=()):
        self.funcs, self.domain, self.cfg = funcs, domain, cfg
        self._junctions = list(junctions)

    def junctions(self):
        return self._junctions

    def evaluate(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return tuple(np.asarray(f(t), dtype=float) * np.ones_like(t) for f in self.funcs)

    def integrate(self, weight, ta: float, tb: float, measure: str = "t") -> float:
        if not (math.isfinite(ta) and math.isfinite(tb)):
            raise OutOfBounds("closed-form profiles are integrated over finite windows")
        phi_f, dpsi_f = self.funcs[0], self.funcs[3]

        def fn(s):
            t = ta + s
            w = weight(np.asarray(phi_f(t)) * np.ones_like(t))
            return w * (np.asarray(dpsi_f(t)) if measure == "psi" else 1.0)

        return float(_Panels(fn, tb - ta, self.cfg).total[0]) if tb > ta else 0.0

    def end_kind(self, t, is_start):
        return None


# ---------------------------------------------------------------------------
# the curve record


@dataclass
class GeneratingCurve:
    """Arclength-sampled generating curve ``(t, phi, psi, phi', psi')``.

    ``branches`` lists ``(start, stop, sign)`` index ranges (``stop``
    exclusive) on which ``phi`` is strictly monotone with the sign of
    ``phi'``; ``endpoints`` classifies the two ends.  Curves built from an
    exact representation keep it in ``profile`` so they can be re-evaluated
    and integrated without going through the samples.
    """

    params: object
    t: np.ndarray
    phi: np.ndarray
    psi: np.ndarray
    dphi: np.ndarray
    dpsi: np.ndarray
    ddphi: np.ndarray
    branches: list
    endpoints: tuple
    metadata: dict = field(default_factory=dict)
    profile: object = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.t)

    @property
    def n(self) -> int | None:
        return getattr(self.params, "n", None)

    @property
    def samples(self) -> list[CurveState]:
        return [CurveState(float(t), float(p), float(s), float(dp), float(ds),
                           None if not math.isfinite(dd) else float(dd))
                for t, p, s, dp, ds, dd in zip(self.t, self.phi, self.psi, self.dphi, self.dpsi, self.ddphi)]

    def state(self, t: float) -> CurveState:
        """Exact state at time ``t`` (needs ``profile``)."""
        if self.profile is None:
            raise ParameterError("this curve has no exact representation")
        phi, psi, dphi, dpsi, ddphi = (float(np.ravel(v)[0]) for v in self.profile.evaluate(t))
        return CurveState(float(t), phi, psi, dphi, dpsi, ddphi if math.isfinite(ddphi) else None)

    def evaluate(self, t):
        """Arrays ``phi, psi, dphi, dpsi, ddphi`` at the times ``t`` (needs ``profile``)."""
        if self.profile is None:
            raise ParameterError("this curve has no exact representation")
        return self.profile.evaluate(t)

    def flags(self) -> list[str]:
        """Per-sample endpoint/junction labels used in the CSV dump."""
        out = [""] * len(self.t)
        for tj, kind in self.metadata.get("junctions", []):
            i = int(np.argmin(np.abs(self.t - tj)))
            if abs(self.t[i] - tj) <= 1e-12 * max(1.0, abs(tj)):
                out[i] = kind
        if len(out):
            out[0] = self.endpoints[0].value
            out[-1] = self.endpoints[1].value
        return out

    def branch_index(self) -> np.ndarray:
        idx = np.zeros(len(self.t), dtype=int)
        for j, (a, b, _) in enumerate(self.branches):
            idx[a:b] = j
        return idx

    def to_csv(self, fh=None) -> str:
        """Write the samples as CSV (CRLF line endings, 17 significant digits)."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(["t", "phi", "psi", "dphi", "dpsi", "branch", "endpoint_flags"])
        for row in zip(self.t, self.phi, self.psi, self.dphi, self.dpsi, self.branch_index(), self.flags()):
            w.writerow([f"{v:.17g}" for v in row[:5]] + [str(row[5]), row[6]])
        text = buf.getvalue()
        if fh is not None:
            fh.write(text)
        return text


def read_curve_csv(text: str) -> dict[str, np.ndarray]:
    """Columns of a curve CSV dump as arrays (flags stay strings)."""
    rows = list(csv.DictReader(io.StringIO(text)))
    out = {k: np.array([float(r[k]) for r in rows]) for k in ("t", "phi", "psi", "dphi", "dpsi")}
    out["branch"] = np.array([int(r["branch"]) for r in rows])
    out["endpoint_flags"] = [r["endpoint_flags"] for r in rows]
    return out


def _branches_from(t, profile, junctions) -> list:
    cuts = sorted(tj for tj, _ in junctions)
    seg = np.searchsorted(cuts, t, side="right") if cuts else np.zeros(len(t), dtype=int)
    bounds = [t[0]] + cuts + [t[-1]]
    out = []
    for s in np.unique(seg):
        idx = np.flatnonzero(seg == s)
        # the sign is read off the middle of the segment, away from junction limits
        mid = 0.5 * (bounds[s] + bounds[s + 1])
        sign = int(np.sign(np.ravel(profile.evaluate(mid)[2])[0]))
        out.append((int(idx[0]), int(idx[-1]) + 1, sign))
    return out


def _grid(ta: float, tb: float, count: int | None, step: float | None) -> np.ndarray:
    if step is not None:
        if step <= 0:
            raise ParameterError("step must be positive")
        count = int(math.ceil((tb - ta) / step - 1e-9)) + 1
    count = 401 if count is None else count
    if count < 2:
        raise ParameterError("need at least two samples")
    return np.linspace(ta, tb, count)


def _assemble(params, profile, t, metadata) -> GeneratingCurve:
    phi, psi, dphi, dpsi, ddphi = profile.evaluate(t)
    junctions = [(tj, k.value) for tj, k in getattr(profile, "junctions", lambda: [])()
                 if t[0] < tj < t[-1]]
    metadata["junctions"] = junctions
    ends = (profile.end_kind(float(t[0]), True), profile.end_kind(float(t[-1]), False))
    curve = GeneratingCurve(params, t, phi, psi, dphi, dpsi, ddphi,
                            _branches_from(t, profile, junctions), ends, metadata, profile)
    return curve


def solve_constant_K(params: CurveParams, count: int | None = None, step: float | None = None,
                     periods: int = 1, t_range: tuple[float, float] | None = None,
                     t_min: float | None = None, line: tuple[float, float] = (0.0, 1.0),
                     cfg: QuadratureConfig = DEFAULT_CONFIG) -> GeneratingCurve:
    """Sample the constant-K profile on a uniform arclength grid.

    Parameters
    ----------
    params : CurveParams
    count, step : optional
        Number of samples (default 401) or sample spacing.
    periods : int
        Number of arches for profiles that end in vertical rims; 2 reflects a
        single-branch profile across its rim.
    t_range : (float, float), optional
        Sub-window of the profile's domain to sample.
    t_min : float, optional
        Truncation time of the infinite pseudosphere end (default ``t0 - 25``).
    line : (float, float)
        ``(c1, c2)`` of the straight profile ``phi = c1 (t - t0) + c2`` when
        ``K == 0`` (cylinder for ``c1 == 0``, cone otherwise).
    """
    validate_params(params)
    meta = {"solver": "quadrature", "abs_tol": cfg.abs_tol, "rel_tol": cfg.rel_tol}
    if params.K == 0:
        return _straight_line(params, line, count, step, t_range, meta)
    profile = _ConstantKProfile(params, periods, cfg)
    lo, hi = profile.domain
    if params.is_pseudosphere:
        if t_range is not None and not all(map(math.isfinite, t_range)):
            raise TruncationRequired("the pseudosphere end is infinite; give a finite truncation time")
        if t_min is None:
            t_min = (params.t0 - DEFAULT_TRUNCATION if params.orientation > 0 or periods == 2
                     else params.t0 + DEFAULT_TRUNCATION)
        if not math.isfinite(t_min):
            raise TruncationRequired("the pseudosphere end is infinite; give a finite truncation time")
        if params.orientation > 0 or periods == 2:
            lo = t_min
        if params.orientation < 0 or periods == 2:
            hi = 2 * params.t0 - t_min if periods == 2 else t_min
        meta["t_min"] = t_min
    if t_range is not None:
        ta, tb = t_range
        if ta < lo - 1e-12 or tb > hi + 1e-12 or tb <= ta:
            raise OutOfBounds(f"t_range {t_range} outside the profile domain [{lo}, {hi}]")
        lo, hi = max(ta, lo), min(tb, hi)
    if params.K != 0:
        pdata = period_data(params, cfg)
        meta.update(half_period=pdata.half_period, full_period=pdata.full_period,
                    branch_gap=pdata.branch_gap, divergent=pdata.divergent)
    t = _grid(lo, hi, count, step)
    curve = _assemble(params, profile, t, meta)
    if params.is_pseudosphere:
        ends = list(curve.endpoints)
        for i, tt in enumerate((t[0], t[-1])):
            if tt == t_min or (periods == 2 and abs(tt - params.t0) == abs(t_min - params.t0)):
                ends[i] = EndpointKind.PSEUDOSPHERE_END
        curve.endpoints = tuple(ends)
    return curve


def _straight_line(params, line, count, step, t_range, meta) -> GeneratingCurve:
    c1, c2 = map(float, line)
    if abs(c1) >= 1.0:
        raise ParameterError("a straight profile needs |c1| < 1 to be a graph over the axis")
    t0 = params.t0
    ta, tb = t_range if t_range is not None else (t0 - 1.0, t0 + 1.0)
    s = math.sqrt(1.0 - c1 * c1)
    funcs = (lambda t: c1 * (t - t0) + c2, lambda t: s * (t - t0), lambda t: c1 + 0 * t,
             lambda t: s + 0 * t, lambda t: 0 * t)
    if min(funcs[0](np.array([ta, tb]))) < -1e-14:
        raise OutOfBounds("the straight profile crosses the axis inside t_range")
    profile = _ClosedFormProfile(funcs, (ta, tb))
    meta.update(solver="closed_form", shape="cylinder" if c1 == 0 else "cone", line=[c1, c2])
    t = _grid(ta, tb, count, step)
    curve = _assemble(params, profile, t, meta)
    ends = []
    for tt in (t[0], t[-1]):
        ends.append(EndpointKind.CONE_POINT if abs(funcs[0](tt)) < 1e-14 else EndpointKind.OPEN_CUT)
    curve.endpoints = tuple(ends)
    return curve


def sphere_from_constant_principal(c: float, which: str = "k1", n: int = 3,
                                   count: int | None = None) -> GeneratingCurve:
    """Round sphere of radius ``1/|c|`` obtained from one constant principal curvature.

    ``which='k1'`` gives ``phi = cos(|c| t)/|c|`` on ``|t| <= pi/(2|c|)``;
    ``which='k_rest'`` gives ``phi = sin(|c| t)/|c|`` on ``[0, pi/|c|]``.
    """
    if c == 0:
        raise ZeroCurvature("a constant principal curvature of zero does not close up into a sphere")
    if which not in ("k1", "k_rest"):
        raise ParameterError("which must be 'k1' or 'k_rest'")
    a = abs(c)
    if which == "k1":
        funcs = (lambda t: np.cos(a * t) / a, lambda t: np.sin(a * t) / a, lambda t: -np.sin(a * t),
                 lambda t: np.cos(a * t), lambda t: -a * np.cos(a * t))
        domain = (-math.pi / (2 * a), math.pi / (2 * a))
        top = 0.0
    else:
        funcs = (lambda t: np.sin(a * t) / a, lambda t: -np.cos(a * t) / a, lambda t: np.cos(a * t),
                 lambda t: np.sin(a * t), lambda t: -a * np.sin(a * t))
        domain = (0.0, math.pi / a)
        top = math.pi / (2 * a)
    params = CurveParams(n, a ** (n - 1), 0.0)
    profile = _ClosedFormProfile(funcs, domain, junctions=[(top, EndpointKind.SMOOTH_EXTREMUM)])
    t = _grid(*domain, count, None)
    meta = {"solver": "closed_form", "shape": "sphere", "radius": 1.0 / a, "which": which}
    curve = _assemble(params, profile, t, meta)
    curve.endpoints = (EndpointKind.SMOOTH_POLE, EndpointKind.SMOOTH_POLE)
    curve.phi[[0, -1]] = 0.0
    return curve
