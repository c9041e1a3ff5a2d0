"""Local expansions of constant-K profiles.

Near a smooth extremum ``L = ((C_K + 1)/K)^(1/(n-1))`` the profile is even in
``dt = t - t0`` with

    phi = L - (K/2) L^(n-2) dt^2 + (K^2/24) L^(2n-5) [(n-2) - (n-3)(C_K+1)] dt^4 + O(dt^6),

obtained by differentiating the curvature equation at ``phi' = 0``.  The
pseudosphere (``K < 0``, ``C_K = -1``, ``n > 3``) decays algebraically at its
infinite end,

    phi ~ f |t|^(2/(3-n)) + g |t|^(2n/(3-n)).
"""

from __future__ import annotations

import math

import numpy as np

from .curvature import CurveParams, validate_params
from .errors import DimensionTooSmall, ParameterError, WrongRegime
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, _Panels, _Piece, phi_bounds


def taylor_coefficients(params: CurveParams, form: str = "exact") -> tuple[float, float, float]:
    """``(c0, c2, c4)`` with ``phi ~ c0 + c2 dt^2 + c4 dt^4`` at the extremum.

    ``form='printed'`` returns the coefficients in the form usually quoted for
    this expansion, in which the quartic bracket carries ``(C_K+1)/K`` instead
    of ``C_K+1`` and the quadratic term of the minimum case has the opposite
    sign; the two agree for ``K = 1`` at a maximum.
    """
    validate_params(params)
    K, c, n = params.K, params.ck, params.n
    if not (K > 0 or (K < 0 and c < -1)):
        raise WrongRegime("a smooth extremum needs K > 0, or K < 0 with C_K < -1")
    q = (c + 1.0) / K
    L = q ** (1.0 / (n - 1))
    if form == "exact":
        c2 = -0.5 * K * L ** (n - 2)
        c4 = K * K / 24.0 * L ** (2 * n - 5) * ((n - 2) - (n - 3) * (c + 1.0))
    elif form == "printed":
        e = q ** ((n - 3) / (n - 1))
        bracket = (n - 3) * q - (n - 2)
        s = -1.0 if K > 0 else 1.0
        c2 = s * L * K / 2 * e
        c4 = s * L * K * K / 24 * e * e * bracket
    else:
        raise ParameterError("form must be 'exact' or 'printed'")
    return L, c2, c4


def taylor_extremum(params: CurveParams, dt, form: str = "exact"):
    """Quartic Taylor polynomial of ``phi`` at ``t0 + dt`` about its extremum."""
    c0, c2, c4 = taylor_coefficients(params, form)
    d2 = np.asarray(dt, dtype=float) ** 2
    out = c0 + d2 * (c2 + c4 * d2)
    return float(out) if np.ndim(out) == 0 else out


def _pseudosphere_constants(n: int, K: float):
    if n <= 3:
        raise DimensionTooSmall("the algebraic decay needs n > 3")
    if not K < 0:
        raise ParameterError("the pseudosphere needs K < 0")
    A = math.sqrt((n - 1) / 2)
    B = 2.0 / (3 - n) * abs(K) ** -0.5
    C = (n - 3) / (2.0 * (n * n - 1)) * abs(K) ** 0.5
    return A, B, C


def pseudosphere_coefficients(n: int, K: float) -> tuple[float, float]:
    """``(f, g)`` of the two-term decay at the infinite end."""
    A, B, C = _pseudosphere_constants(n, K)
    # A*B < 0 and t -> -inf, so the base of the power is |A*B|
    f = abs(A * B) ** (-2.0 / (3 - n))
    g = C / B * 2.0 / (3 - n) * f ** n
    return f, g


def asymptotic_pseudosphere(t, n: int, K: float):
    """Two-term approximation ``f |t|^(2/(3-n)) + g |t|^(2n/(3-n))`` of the pseudosphere.

    ``t`` is measured from the time origin fixed by the leading term, see
    :func:`pseudosphere_time_shift`.
    """
    f, g = pseudosphere_coefficients(n, K)
    at = np.abs(np.asarray(t, dtype=float))
    out = f * at ** (2.0 / (3 - n)) + g * at ** (2.0 * n / (3 - n))
    return float(out) if np.ndim(out) == 0 else out


def pseudosphere_time_shift(n: int, K: float, t0: float = 0.0,
                            cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Time origin of the asymptotic expansion on the curve whose rim sits at ``t0``.

    The profile ``t(phi)`` on the increasing branch differs from its leading
    behaviour ``A B phi^((3-n)/2)`` by a constant in the limit ``phi -> 0``;
    that constant is returned, so ``asymptotic_pseudosphere(t - shift, n, K)``
    approximates the solved curve.
    """
    A, B, _ = _pseudosphere_constants(n, K)
    params = CurveParams(n, K, -1.0)
    _, r = phi_bounds(params)
    al = (3 - n) / 2
    lead = A * B * al
    m = n - 1
    # in s = log(phi) the remainder decays like phi^((n+1)/2)
    s_lo = math.log(r) - 80.0 / ((n + 1) / 2)
    piece = _Piece(params, "log", 0.0, r, math.exp(s_lo))

    a = 2.0 / m

    def fn(w):
        phi = np.exp(piece.u_from + piece.e * w)
        delta = abs(K) * phi ** m
        # g = R / (a delta) and the integrand is lead phi^al (g^-1/2 - 1); the
        # difference is formed from a series in delta to avoid cancellation
        gm1 = np.zeros_like(delta)
        term = np.ones_like(delta)
        for k in range(1, 12):
            term = term * (-(a - k)) * delta / (k + 1)
            gm1 = gm1 + term
        small = delta < 1e-2
        with np.errstate(divide="ignore", invalid="ignore"):
            direct = -np.expm1(a * np.log1p(-delta)) / (a * delta) - 1.0
        gm1 = np.where(small, gm1, direct)
        g = 1.0 + gm1
        return lead * phi ** al * (-gm1 / (np.sqrt(g) * (1.0 + np.sqrt(g))))

    excess = float(_Panels(fn, piece.length, cfg).total[0])
    # t(phi) = t0 - int_phi^r dphi/sqrt(R); subtract A B phi^al and let phi -> 0
    return t0 - excess - A * B * r ** al
