class ParameterError(ValueError):
    """Raised when an input violates the preconditions of an operation."""


class InconsistencyError(RuntimeError):
    """Raised when two independent computations of the same quantity disagree."""
