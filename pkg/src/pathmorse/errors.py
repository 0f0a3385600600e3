"""Exception hierarchy shared by all modules."""


class PathMorseError(Exception):
    """Base class for every error raised by this package."""


class InputError(PathMorseError, ValueError):
    """Malformed digraph or Morse-function input."""


class SelfLoop(InputError):
    pass


class BadToken(InputError):
    pass


class EmptyGraph(InputError):
    pass


class UnknownVertex(InputError, KeyError):
    pass


class DimensionBoundExceeded(PathMorseError):
    def __init__(self, requested: int, bound: int):
        super().__init__(f"dimension {requested} exceeds the configured bound {bound}")
        self.requested = requested
        self.bound = bound


class IndexOutOfRange(PathMorseError, IndexError):
    pass


class DimensionMismatch(PathMorseError, ValueError):
    pass


class ConvergenceFailure(PathMorseError, ArithmeticError):
    def __init__(self, sweeps: int, off_norm: float):
        super().__init__(f"Jacobi iteration did not converge after {sweeps} sweeps "
                         f"(off-diagonal norm {off_norm:.3e})")
        self.sweeps = sweeps
        self.off_norm = off_norm


class BasisExpressionFailure(PathMorseError, ArithmeticError):
    pass


class TruncationUnsound(PathMorseError):
    pass


class ValidationFailure(PathMorseError):
    """A mathematical precondition of the requested analysis does not hold."""


class NotMorse(ValidationFailure):
    def __init__(self, message: str, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class ExtensionNotMorse(NotMorse):
    pass


class NotTransitive(ValidationFailure):
    pass


class NonUniqueTarget(PathMorseError):
    pass


class StabilizationDiverged(PathMorseError):
    pass


class ScaleOverflow(PathMorseError, OverflowError):
    pass
