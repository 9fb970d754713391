"""Exception hierarchy.

Errors fall in three families that the command line maps onto exit codes:
input problems (``InputError``), broken theorems (``FormulaMismatch``) and
numerical failures (``NumericError``).
"""


class KPError(Exception):
    """Base class of every error raised by the package."""


class InputError(KPError, ValueError):
    """Invalid user input: malformed curve, point or divisor."""


class InvalidCurve(InputError):
    pass


class PointNotOnCurve(InputError):
    pass


class UnsupportedPoint(InputError):
    """Divisor support outside the rational points of the model."""


class DegreeMismatch(InputError):
    pass


class ImproperIntersection(InputError):
    """The twisted curve is contained in the theta divisor for this n."""


class ZeroFunction(InputError):
    pass


class SeriesError(KPError, ArithmeticError):
    pass


class LeadingNotSquare(SeriesError):
    pass


class OddValuation(SeriesError):
    pass


class PrecisionTooSmall(SeriesError):
    pass


class PrecisionExhausted(SeriesError):
    """Escalation cap reached before a leading term was resolved."""


class FormulaMismatch(KPError):
    """Two order formulas disagree. This is always an implementation bug."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or {}


class NumericError(KPError):
    pass


class BranchPointsTooClose(NumericError):
    pass


class NotConverged(NumericError):
    pass


class PathNearBranchCut(NumericError):
    pass


class RadiusOverflow(NumericError):
    pass


class CalibrationFailed(NumericError):
    pass


class ZeroOnContour(NumericError):
    pass


class WindingAmbiguous(NumericError):
    pass


class DegenerateLine(NumericError):
    """Theta vanishes at every sample of the line (possibly contained in Theta)."""
