# -*- coding: utf-8 -*-


from typing import Optional


class RMTError(Exception):
    """Base class for all errors raised by ``rmtk``.

    .. versionadded:: 0.1

    """


class PreconditionError(RMTError, ValueError):
    pass


class ShapeMismatch(PreconditionError):
    pass


class InsufficientTrials(PreconditionError):
    pass


class UnsupportedMoment(RMTError):
    pass


class TruncationError(RMTError):
    pass


class PoolClosed(RMTError):
    pass


class MatchingError(RMTError):
    """No law matching the requested moments could be constructed.

    :param residual: Best moment discrepancy achieved before giving up.

    """

    def __init__(self, message: str, residual: float=float('inf')) -> None:
        super().__init__(message)
        self.residual = residual


class SolverError(RMTError):
    """A LAPACK driver failed or returned a decomposition with bad residuals.

    :param residual: Largest relative residual observed (``inf`` if the driver
     did not converge at all).

    """

    def __init__(self, message: str, residual: float=float('inf')) -> None:
        super().__init__(message)
        self.residual = residual


class ConfigError(RMTError):
    """An experiment config is invalid.

    :param field: Dotted path of the offending field, e.g.
     ``experiment.trials``.

    """

    def __init__(self, field: str, message: str) -> None:
        super().__init__('%s: %s' % (field, message))
        self.field = field


class TrialError(RMTError):
    """A Monte Carlo trial crashed.

    The original exception is chained as ``__cause__``.

    """

    def __init__(self, index: int,
                 cause: Optional[BaseException]=None) -> None:
        super().__init__('Trial %d failed: %r' % (index, cause))
        self.index = index
