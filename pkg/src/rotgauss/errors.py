"""Exception hierarchy for rotgauss.

Every error raised by the library derives from :class:`RotGaussError`, so
callers (and the command line front end) can catch the whole family at once.
Parameter problems additionally derive from :class:`ValueError`.
"""

from __future__ import annotations


class RotGaussError(Exception):
    """Base class of all library errors."""


class ParameterError(RotGaussError, ValueError):
    """An input violates a documented constraint."""


class DimensionTooSmall(ParameterError):
    pass


class ConstantOutOfRange(ParameterError):
    """The first-integral constant is incompatible with the sign of K.

    ``interval`` holds the admissible open interval ``(lo, hi)``.
    """

    def __init__(self, message: str, interval: tuple[float, float]):
        super().__init__(message)
        self.interval = interval


class ZeroCurvature(ParameterError):
    pass


class ResolutionTooLow(ParameterError):
    pass


class StepOutOfRange(ParameterError):
    pass


class DegeneratePoint(RotGaussError, ValueError):
    """A curvature formula is singular at the requested point."""


class OutOfBounds(RotGaussError, ValueError):
    """A radius lies outside the range allowed by the first integral."""


class DomainError(RotGaussError, ValueError):
    pass


class DivergentEnd(RotGaussError):
    """An integral runs into the non-integrable end of the pseudosphere."""


class TruncationRequired(RotGaussError):
    pass


class UnboundedDomain(RotGaussError):
    pass


class WrongRegime(RotGaussError):
    pass


class StepTooLarge(RotGaussError):
    pass


class DegenerateTangent(RotGaussError):
    pass


class RankDeficiency(RotGaussError):
    pass


class SingularFirstForm(RotGaussError):
    pass


class HeightOutOfRange(RotGaussError, ValueError):
    pass


class QuadratureError(RotGaussError):
    """Adaptive quadrature failed to reach the requested tolerance."""
