"""Exception types raised by :mod:`weakmeas`."""


class WeakMeasError(Exception):
    """Base class for all library errors."""


class InvalidDistribution(WeakMeasError, ValueError):
    """A signed distribution violates its construction invariants."""


class InvalidState(WeakMeasError, ValueError):
    """A qubit state is not normalized."""


class SingularPostselection(WeakMeasError, ArithmeticError):
    """Pre- and post-selected states are (nearly) orthogonal.

    Raised when both route amplitudes vanish, or when their sum is so small
    that the weak value diverges.
    """


class GridTooCoarse(WeakMeasError, ValueError):
    """The pointer grid does not resolve the density or cannot be sized."""


class NullDensity(WeakMeasError, ArithmeticError):
    """The unnormalized reading density integrates to zero on the grid."""


class InvalidParams(WeakMeasError, ValueError):
    """Classical model parameters outside ``0 < lam < 1``, ``0 < delta < 1 - lam``."""
