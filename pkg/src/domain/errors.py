"""Domain error hierarchy

Every failure raised by the numerical core carries a stable ``code`` so use
cases can translate it into a ``libs.result.Error`` and the CLI into an exit code.
"""

from typing import Any, Optional


class GaseousStarError(Exception):
    code = "GASEOUS_STAR_ERROR"

    def __init__(self, message: str, reason: Optional[str] = None):
        super().__init__(message)
        self.reason = reason


class DomainViolation(GaseousStarError, ValueError):
    """A parameter or state lies outside the range where the model is defined."""

    code = "DOMAIN_VIOLATION"


class SupportNotFoundError(GaseousStarError):
    """No first zero of the Lane-Emden function was bracketed before xi_max."""

    code = "SUPPORT_NOT_FOUND"

    def __init__(self, message: str, reached_xi: float):
        super().__init__(message, reason=f"reached_xi={reached_xi!r}")
        self.reached_xi = reached_xi


class NumericalFailure(GaseousStarError):
    code = "NUMERICAL_FAILURE"


class ShellCrossingError(NumericalFailure):
    """A cell volume became non-positive during a trial step."""

    code = "SHELL_CROSSING"


class TimeStepUnderflowError(NumericalFailure):
    code = "TIME_STEP_UNDERFLOW"

    def __init__(self, message: str, dump: dict[str, Any]):
        super().__init__(message, reason=", ".join(f"{k}={v!r}" for k, v in dump.items()))
        self.dump = dump


class ConfigurationError(GaseousStarError):
    code = "CONFIGURATION_ERROR"

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}", reason=f"key={key}")
        self.key = key


class RunDataError(GaseousStarError):
    """A run directory or profile file is missing or malformed."""

    code = "RUN_DATA_ERROR"
