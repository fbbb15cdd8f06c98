"""Exception types raised by the numerical core.

The CLI maps these onto exit codes, so the grouping matters: everything
under :class:`NumericalError` exits with 3, :class:`NoBlowupError` and
:class:`DegenerateError` with 4, and :class:`WindowError` with 5.
"""


class BlowupError(Exception):
    """Base class for all library errors."""


class DomainError(BlowupError, ValueError):
    """Argument outside the domain where the quantity is defined."""


class NumericalError(BlowupError, ArithmeticError):
    """An iterative method failed to reach its tolerance."""


class ConvergenceError(NumericalError):
    pass


class BracketError(NumericalError):
    pass


class PostBlowupError(NumericalError):
    """Requested time is at or past the first crossing of characteristics."""


class FlatFieldError(NumericalError):
    """Spectral maximum sits on the boundary of the wavenumber grid."""


class RankError(NumericalError):
    """Least-squares problem is rank deficient (e.g. repeated tau values)."""


class NoBlowupError(BlowupError):
    """Initial data never produces a gradient catastrophe."""


class DegenerateError(BlowupError):
    """Blow-up is not of the generic cubic (cusp) type."""


class WindowError(BlowupError):
    """Sampled field is not small at the window edges; leakage risk."""
