"""Exception types shared across the package."""


class HafsError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(HafsError):
    """Syntax error in framework text, with 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class ValidationError(HafsError):
    """A structural invariant is violated (duplicate names, dangling
    references, definitional cycles, non-total labellings, ...)."""


class SizeBoundError(HafsError):
    """An exhaustive enumeration was requested above its size bound."""


class EvaluationError(HafsError):
    """A formula cannot be evaluated under the given logic/assignment."""


class InfeasibleParametersError(HafsError):
    """Random generation parameters cannot be satisfied."""


class PreconditionError(HafsError):
    """An operation's precondition is not met (wrong logic flags,
    support-cyclic input to an acyclic-only check, ...)."""
