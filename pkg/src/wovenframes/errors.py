"""Exception hierarchy.

Numerical failures derive from :class:`NumericalError`; everything a caller
can fix by changing its input derives from :class:`InputError`. The CLI maps
the two families to distinct exit codes.
"""


class FrameError(Exception):
    """Base class for all errors raised by this package."""


class InputError(FrameError):
    pass


class NumericalError(FrameError):
    pass


class NonSymmetric(InputError):
    pass


class NoConvergence(NumericalError):
    pass


class NotPositiveDefinite(NumericalError):
    pass


class DimensionMismatch(InputError):
    pass


class ShapeError(InputError):
    pass


ShapeMismatch = ShapeError


class ParseError(InputError):
    pass


class NonFiniteValue(InputError, ValueError):
    pass


class NotAFrame(InputError):
    pass


class TooLarge(InputError):
    pass


class NotWoven(InputError):
    pass


class NotParseval(InputError):
    pass


class NotDual(InputError):
    pass


class NoRedundancy(InputError):
    pass


class ZeroScalar(InputError):
    pass
