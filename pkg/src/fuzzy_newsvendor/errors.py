"""Shared exception types."""


class NumericalError(RuntimeError):
    """Quadrature or root finding could not reach its tolerance."""


class WeightRangeError(ValueError):
    """Derived fuzzy-weight legs left the unit interval.

    Carries the offending legs so callers can report them instead of
    silently clamping.
    """

    def __init__(self, message: str, legs: tuple[float, float, float, float]):
        super().__init__(message)
        self.legs = legs
