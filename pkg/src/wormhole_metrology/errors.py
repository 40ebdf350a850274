"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`WormholeMetrologyError`, so the CLI can map them onto exit codes.
"""


class WormholeMetrologyError(Exception):
    """Base class for all package errors."""


class InvalidArgument(WormholeMetrologyError, ValueError):
    """A parameter violates a documented precondition."""


class DomainError(WormholeMetrologyError, ValueError):
    """A radial coordinate lies inside the wormhole throat."""


class RegimeError(WormholeMetrologyError):
    """The scenario leaves the quasiflat validity regime.

    The offending :class:`~wormhole_metrology.spacetime.RegimeReport` is kept
    on ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NoSignalError(WormholeMetrologyError):
    """The phase carries no first-order information about the throat radius."""


class NumericError(WormholeMetrologyError, ArithmeticError):
    """A computation produced a degenerate or non-finite intermediate."""


class TruncationError(WormholeMetrologyError):
    """The Fock truncation is too small for the requested state."""

    def __init__(self, message, tail_mass, dim):
        super().__init__(message)
        self.tail_mass = tail_mass
        self.dim = dim
