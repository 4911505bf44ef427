"""Exception types raised by wicklab."""


class WickLabError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(WickLabError, ValueError):
    pass


class ExponentError(WickLabError, ValueError):
    """An exponent tuple violates its admissibility conditions."""


class BoundaryDecayError(WickLabError, ValueError):
    """A grid integrand has not decayed at the edge of the box.

    Raised when the truncated box is too small for the integrand; enlarge
    ``extent`` or loosen ``decay_tol``.
    """


class ConvergenceError(WickLabError, RuntimeError):
    pass


class ZeroNormError(WickLabError, ZeroDivisionError):
    pass
