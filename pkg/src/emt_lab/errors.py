"""Shared exception types."""


class EmtLabError(Exception):
    """Base class for toolkit errors."""


class DomainError(EmtLabError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class InputError(EmtLabError, ValueError):
    """Malformed structured input (bad shapes, unsorted series, ...)."""


class NumericError(EmtLabError, ArithmeticError):
    """Non-finite intermediate values or singular systems."""


class ConvergenceError(EmtLabError, RuntimeError):
    """An iterative solver exhausted its iteration budget."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class ConfigError(EmtLabError, ValueError):
    """Scenario configuration failed validation.

    `problems` collects every validation failure, not just the first.
    """

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))
