"""Exception hierarchy shared across the library.

The CLI maps these onto exit codes (see liftlab.cli), so new error kinds
should subclass one of the groups below rather than raising bare built-ins.
"""


class LiftLabError(Exception):
    """Base class for all liftlab errors."""


class InvalidParameterError(LiftLabError, ValueError):
    """A caller-supplied argument violates a documented precondition."""


class SizeLimitError(InvalidParameterError):
    """An exhaustive computation was requested beyond its documented size cap."""


class FormatError(InvalidParameterError):
    """A text artifact could not be parsed; message carries the line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class GenerationError(LiftLabError, RuntimeError):
    """Randomized construction exhausted its retry budget."""


class NumericalError(LiftLabError, RuntimeError):
    """An eigensolver or downstream numerical contract failed."""


class MatchingError(NumericalError):
    """Old/new eigenvalue matching failed; the input is likely not a lift
    spectrum of the given base, or the eigensolver misbehaved."""


class CharacterizationError(LiftLabError, RuntimeError):
    """An exact spectral identity that must hold was violated numerically.

    This signals an implementation bug, never a refutation of the identity;
    the message carries the worst offending quantity.
    """


class SearchError(LiftLabError, RuntimeError):
    """A randomized search exhausted max_tries; carries the best candidate."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
