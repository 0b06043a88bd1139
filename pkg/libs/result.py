"""Outcome types shared by use cases and the command-line surface.

Use cases never raise numerical or validation failures to their callers; they
return a ``Result`` carrying either the response DTO or an ``Error`` whose
``code`` is stable enough to map onto process exit codes.
"""

from dataclasses import dataclass
from typing import Generic, Optional, TypeVar

T = TypeVar("T")


@dataclass(frozen=True)
class Error:
    code: str
    message: str
    reason: Optional[str] = None

    @classmethod
    def from_exception(cls, exc: Exception, default_code: str = "UNEXPECTED_ERROR") -> "Error":
        """Build an error from a domain exception, keeping its ``code`` when it has one."""
        code = getattr(exc, "code", None) or default_code
        reason = getattr(exc, "reason", None) or type(exc).__name__
        return cls(code=code, message=str(exc), reason=reason)

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message}


class Result(Generic[T]):
    __slots__ = ("_value", "_error")

    def __init__(self, value: Optional[T] = None, error: Optional[Error] = None):
        self._value = value
        self._error = error

    def is_ok(self) -> bool:
        return self._error is None

    def is_err(self) -> bool:
        return self._error is not None

    @property
    def value(self) -> T:
        return self._value

    @property
    def error(self) -> Error:
        return self._error


class Return:
    @staticmethod
    def ok(value) -> Result:
        return Result(value=value)

    @staticmethod
    def err(error: Error) -> Result:
        return Result(error=error)
