"""Exception hierarchy. Each class carries the CLI exit status it maps to."""


class PathLapError(Exception):
    exit_code = 1


class ParseError(PathLapError, ValueError):
    exit_code = 2

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)


class GuardrailError(PathLapError):
    """Raised when a computation would exceed the configured size limits."""

    exit_code = 3


class NonTerminatingError(GuardrailError):
    def __init__(self, degree):
        self.degree = degree
        super().__init__(f"Omega sequence still nonzero at degree {degree}")


class HypothesisError(PathLapError):
    """A theorem was applied to a digraph outside its hypotheses."""

    exit_code = 4


class SpectralIdentityError(PathLapError):
    """A multiset identity that must hold exactly was violated."""

    exit_code = 5
