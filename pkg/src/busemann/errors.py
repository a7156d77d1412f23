"""Exception types shared by the geometry engine and the checkers."""


class BusemannError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BusemannError, ValueError):
    """Input outside the domain of an operation (non-finite values, y <= 0, ...)."""


class ParameterError(BusemannError, ValueError):
    """A numeric parameter violates its documented range."""


class DegenerateInputError(BusemannError, ValueError):
    """Two points that must be distinct coincide."""


class PreconditionError(BusemannError, ValueError):
    """A point that must lie on a curve does not (within tolerance)."""


class RangeError(BusemannError, ValueError):
    """A requested arc parameter runs off the end of a curve."""


class ConvergenceError(BusemannError, ArithmeticError):
    """A root finder or solver failed; carries the residuals seen."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class StageError(BusemannError, ArithmeticError):
    """A multi-stage construction failed; `stage` names the failing step."""

    def __init__(self, stage, cause):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause
