"""
Exception hierarchy for the engine package.

DomainError and UsageError also derive from ValueError so callers that only
know the standard library can still catch them.
"""


class EngineError(Exception):
    """Base class for every error raised by the engine."""


class UsageError(EngineError, ValueError):
    """An argument is outside its documented range (axis, grade, particle label...)."""


class ParseError(UsageError):
    """A state specification document or inline amplitude list is malformed."""


class DomainError(EngineError, ValueError):
    """The input is well-formed but mathematically unusable (zero state, unnormalized...)."""


class ConvergenceError(EngineError, RuntimeError):
    """The iterative Schmidt route did not converge on a non-degenerate spectrum."""
