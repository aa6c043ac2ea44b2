"""Exception types raised across the package."""


class Su3SqueezeError(Exception):
    """Base class for all package errors."""


class NonOrthogonalBasis(Su3SqueezeError):
    pass


class DegenerateCartan(Su3SqueezeError):
    pass


class NotClosed(Su3SqueezeError):
    """A candidate triad does not close under commutation."""


class UnexpectedSolution(Su3SqueezeError):
    """The su(2) raising-operator search converged somewhere it should not."""


class SizeLimit(Su3SqueezeError):
    pass


class NotHermitian(Su3SqueezeError):
    pass


class ImaginaryResidual(Su3SqueezeError):
    pass


class NoConvergence(Su3SqueezeError):
    pass


class KernelNotDiagonal(Su3SqueezeError):
    pass


class ScheduleMiss(Su3SqueezeError):
    """The discrete variance minimum sits on an end of the time window."""
