"""Closed-form curvature algebra of rotational hypersurfaces.

A rotational hypersurface in R^n is swept out by rotating a planar profile
``(phi(t), psi(t))`` about the x_n axis, where ``phi`` is the radius of the
meridian (n-2)-sphere, ``psi`` the height and ``t`` arclength.  Its principal
curvatures are ``-phi''/psi'`` (once) and ``psi'/phi`` (n-2 times), so the
Gauss-Kronecker curvature is

    K = -phi'' psi'^(n-3) / phi^(n-2).

Holding K constant and multiplying by phi' integrates once to

    K phi^(n-1) = (1 - phi'^2)^((n-1)/2) + C_K,

which is the relation everything else in the package is built on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ConstantOutOfRange, DegeneratePoint, DimensionTooSmall, OutOfBounds, ParameterError

# radicands this close below zero are endpoint roundoff, not a real violation
RADICAND_CLAMP = 1e-12
PSEUDOSPHERE_TOL = 1e-14


@dataclass(frozen=True)
class CurveParams:
    """Parameters of a constant-curvature generating curve.

    Attributes
    ----------
    n : int
        Dimension of the ambient space, ``n >= 3``.
    K : float
        Constant Gauss-Kronecker curvature.
    ck : float
        Constant of the first integral (``C_K``).  Unused when ``K == 0``.
    orientation : int
        Sign of ``phi'`` on the initial branch, ``+1`` or ``-1``.
    t0 : float
        Anchor time: the smooth extremum of the profile if it has one,
        otherwise its vertical-tangent rim.
    """

    n: int
    K: float
    ck: float = 0.0
    orientation: int = 1
    t0: float = 0.0

    @property
    def m(self) -> int:
        """Exponent ``n - 1`` appearing in the first integral."""
        return self.n - 1

    @property
    def is_pseudosphere(self) -> bool:
        return self.K < 0 and abs(self.ck + 1.0) <= PSEUDOSPHERE_TOL

    def with_(self, **changes) -> "CurveParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class CurveState:
    """One point of an arclength-parametrized profile.

    ``ddphi`` is ``None`` where the ODE is singular (vertical-tangent rims in
    dimension four and up).
    """

    t: float
    phi: float
    psi: float
    dphi: float
    dpsi: float
    ddphi: float | None = None


@dataclass(frozen=True)
class PqParams:
    """Split ``n = p + q`` for hypersurfaces invariant under SO(p) x SO(q)."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ParameterError(f"p and q must be positive, got p={self.p}, q={self.q}")

    @property
    def n(self) -> int:
        return self.p + self.q


def frac_power(x: float, e: float) -> float:
    """Real power ``x**e`` for ``x >= 0`` evaluated as ``exp(e ln x)``.

    Zero maps to zero.  A negative base is an error rather than a complex
    branch.
    """
    if x < 0.0:
        raise OutOfBounds(f"negative base {x!r} for fractional power {e!r}")
    if x == 0.0:
        return 0.0
    return math.exp(e * math.log(x))


def admissible_interval(K: float) -> tuple[float, float]:
    """Open interval of admissible ``C_K`` values for a curvature of this sign."""
    if K > 0:
        return (-1.0, math.inf)
    if K < 0:
        return (-math.inf, 0.0)
    return (-math.inf, math.inf)


def validate_params(params: CurveParams) -> CurveParams:
    """Return ``params`` unchanged if it describes a real profile.

    Raises
    ------
    DimensionTooSmall
        ``n < 3``.
    ConstantOutOfRange
        ``C_K <= -1`` with ``K > 0`` or ``C_K >= 0`` with ``K < 0``; the bound
        ``C_K <= K phi^(n-1) <= C_K + 1`` then leaves no room for ``phi > 0``.
    """
    if params.n < 3:
        raise DimensionTooSmall(f"ambient dimension must be at least 3, got n={params.n}")
    if params.orientation not in (1, -1):
        raise ParameterError(f"orientation must be +1 or -1, got {params.orientation!r}")
    if not (math.isfinite(params.K) and math.isfinite(params.ck)):
        raise ParameterError("K and C_K must be finite")
    lo, hi = admissible_interval(params.K)
    if params.K > 0 and not params.ck > lo:
        raise ConstantOutOfRange(
            f"bound constraint: C_K must exceed -1 when K > 0 (got C_K={params.ck})", (lo, hi))
    if params.K < 0 and not params.ck < hi:
        raise ConstantOutOfRange(
            f"bound constraint: C_K must be negative when K < 0 (got C_K={params.ck})", (lo, hi))
    return params


def _require_regular(state: CurveState):
    if state.phi <= 0.0:
        raise DegeneratePoint(f"curvature is singular on the axis (phi={state.phi})")
    if state.dpsi <= 0.0:
        raise DegeneratePoint(f"curvature is singular where psi' = {state.dpsi} <= 0")
    if state.ddphi is None:
        raise DegeneratePoint("phi'' is unset at this state")


def principal_curvatures(state: CurveState, n: int) -> tuple[float, float]:
    """Return ``(k1, k_rest)``; ``k_rest`` has multiplicity ``n - 2``."""
    if n < 3:
        raise DimensionTooSmall(f"n must be at least 3, got {n}")
    _require_regular(state)
    return -state.ddphi / state.dpsi, state.dpsi / state.phi


def gauss_curvature(state: CurveState, n: int) -> float:
    """Gauss-Kronecker curvature ``-phi'' psi'^(n-3) / phi^(n-2)``."""
    if n < 3:
        raise DimensionTooSmall(f"n must be at least 3, got {n}")
    _require_regular(state)
    return -state.ddphi * state.dpsi ** (n - 3) / state.phi ** (n - 2)


def pq_gauss_curvature(phi: float, psi: float, dphi: float, dpsi: float, ddphi: float,
                       pq: PqParams) -> float:
    """Gauss-Kronecker curvature of the SO(p) x SO(q)-invariant hypersurface.

    The profile ``(phi, psi)`` lives in the open quadrant; ``phi`` scales the
    (p-1)-sphere and ``psi`` the (q-1)-sphere.  The principal curvatures are
    ``-phi''/psi'`` once, ``psi'/phi`` with multiplicity ``p - 1`` and
    ``-phi'/psi`` with multiplicity ``q - 1``.  With ``q == 1`` this reduces to
    :func:`gauss_curvature` in dimension ``p + 1``.
    """
    p, q = pq.p, pq.q
    if phi <= 0.0 or psi <= 0.0:
        raise DegeneratePoint(f"phi and psi must be positive, got phi={phi}, psi={psi}")
    if p > 2 and dpsi == 0.0:
        raise DegeneratePoint("psi' = 0 with p > 2")
    sign = -1.0 if q % 2 else 1.0
    return sign * ddphi * dphi ** (q - 1) * dpsi ** (p - 2) / (phi ** (p - 1) * psi ** (q - 1))


def first_integral_residual(state: CurveState, params: CurveParams) -> float:
    """``K phi^(n-1) - (1 - phi'^2)^((n-1)/2) - C_K``; zero on exact solutions."""
    m = params.m
    if abs(state.dphi) > 1.0:
        raise OutOfBounds(f"|phi'| = {abs(state.dphi)} exceeds 1")
    return params.K * state.phi ** m - frac_power(1.0 - state.dphi ** 2, m / 2) - params.ck


def phi_prime_from_first_integral(phi: float, params: CurveParams, sign: int = 1) -> float:
    """Slope ``phi'`` recovered from the first integral at radius ``phi``.

    ``sign`` selects the branch (the sign of ``dt`` agrees with that of ``phi'``).
    """
    m = params.m
    base = params.K * phi ** m - params.ck
    if base < -RADICAND_CLAMP or base > 1.0 + RADICAND_CLAMP:
        raise OutOfBounds(
            f"phi={phi} is outside the bounds: K phi^(n-1) - C_K = {base} not in [0, 1]")
    base = min(max(base, 0.0), 1.0)
    radicand = 1.0 - frac_power(base, 2.0 / m)
    if radicand < 0.0:
        if radicand < -RADICAND_CLAMP:
            raise OutOfBounds(f"negative radicand {radicand} at phi={phi}")
        radicand = 0.0
    return math.copysign(math.sqrt(radicand), sign)


def phi_bounds(params: CurveParams) -> tuple[float, float]:
    """Range ``(phi_min, phi_max)`` permitted by the first integral.

    For ``K > 0``: ``max(0, C_K/K) <= phi^(n-1) <= (C_K+1)/K``; for ``K < 0``
    the roles of ``C_K`` and ``C_K + 1`` swap.
    """
    validate_params(params)
    K, c, m = params.K, params.ck, params.m
    if K == 0:
        raise ParameterError("phi is unbounded when K = 0")
    if K > 0:
        lo, hi = max(0.0, c / K), (c + 1.0) / K
    else:
        lo, hi = max(0.0, (c + 1.0) / K), c / K
    return frac_power(lo, 1.0 / m), frac_power(hi, 1.0 / m)


def ode_ddphi(phi: float, dphi: float, K: float, n: int) -> float:
    """``phi''`` from the curvature ODE ``K phi^(n-2) = -phi'' (1-phi'^2)^((n-3)/2)``."""
    if n == 3:
        return -K * phi
    one_minus = 1.0 - dphi * dphi
    if one_minus <= 0.0:
        raise DegeneratePoint("the curvature ODE is singular where |phi'| = 1")
    return -K * phi ** (n - 2) / one_minus ** ((n - 3) / 2)
