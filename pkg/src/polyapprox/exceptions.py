"""Exception types raised across the package.

Parsing errors identify the offending line or digit so callers can point
users at the exact spot in an input file.  Numeric errors carry enough
context to distinguish bad inputs from degenerate geometry.
"""


class PolyApproxError(Exception):
    """Base class for all package errors."""


class MalformedLine(PolyApproxError):
    """A point-list line is not a pair of integers."""


class TooFewPoints(PolyApproxError):
    """A closed curve needs at least 3 points."""


class DuplicateConsecutive(PolyApproxError):
    """Two consecutive curve points (including the wrap pair) coincide."""


class InvalidDigit(PolyApproxError):
    """A chain-code character is outside 0..7."""


class NotClosed(PolyApproxError):
    """A chain-code trace does not return to its start point."""


class DegenerateSegment(PolyApproxError):
    """Segment endpoints coincide, so no line is defined."""


class InvalidCounts(PolyApproxError):
    """A vertex or size argument is out of its allowed range."""


class ZeroError(PolyApproxError):
    """A ratio against a zero approximation error is undefined."""


class OutOfRange(PolyApproxError):
    """A query error lies outside the range spanned by a profile."""

    def __init__(self, message, side):
        super().__init__(message)
        # side is "low" when the query error exceeds the m=3 value
        # (fewer than 3 vertices would be needed) and "high" when it
        # falls below the m_max value (more than m_max needed).
        self.side = side


class ConstantSeries(PolyApproxError):
    """Correlation of a zero-variance series is undefined."""


class LengthMismatch(PolyApproxError):
    """Paired series must have equal length (and enough points)."""


class AllZero(PolyApproxError):
    """A series of all zeros cannot be rescaled."""


class InvalidGeometry(PolyApproxError):
    """A geometric normalizer (extent, denominator) is not positive."""
