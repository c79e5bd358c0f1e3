from typing import Optional


class CasimirError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CasimirError, ValueError):
    """A physical input lies outside the domain of the model."""


class ConvergenceFailure(CasimirError):
    """
    A quadrature or series did not reach its tolerance within the allowed budget.

    Args:
        message: Human readable description
        partial_value: Best estimate available when the budget ran out
        error_estimate: Error estimate attached to partial_value
        evaluations: Number of integrand/term evaluations spent
        truncation_index: Last harmonic index reached (series only)
    """

    def __init__(
        self,
        message: str,
        partial_value: float = float("nan"),
        error_estimate: float = float("inf"),
        evaluations: int = 0,
        truncation_index: Optional[int] = None,
    ):
        super().__init__(message)
        self.partial_value = partial_value
        self.error_estimate = error_estimate
        self.evaluations = evaluations
        self.truncation_index = truncation_index


class ConfigError(CasimirError, ValueError):
    """Invalid sweep configuration."""


class ConfigParseError(ConfigError):
    def __init__(self, message: str, line_number: Optional[int] = None):
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line_number = line_number


class ConfigValidationError(ConfigError):
    def __init__(self, key: str, message: str):
        super().__init__(f"invalid value for '{key}': {message}")
        self.key = key
