class SimuorbError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(SimuorbError, ValueError):
    pass


class ParallelLinesError(SimuorbError, ValueError):
    """The two lines of a quadruplet or triplet do not meet."""


class NotCocyclicError(SimuorbError, ValueError):
    """Two triplets do not share a radius, so no arc length exists."""


class UnsupportedError(SimuorbError, ValueError):
    pass


class AmbiguousGroupingError(SimuorbError, RuntimeError):
    """Two radii are too close to be told apart from rounding noise."""

    def __init__(self, message, radius_pair=None):
        super().__init__(message)
        self.radius_pair = radius_pair


class InvariantViolationError(SimuorbError, RuntimeError):
    pass


class OracleRangeError(SimuorbError, ValueError):
    pass
