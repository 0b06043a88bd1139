"""Verification Domain Entities"""

from enum import Enum
from typing import Optional

from pydantic import Field

from src.domain.base import DomainModel


class VerdictKind(str, Enum):
    HARD = "hard"  # must hold for every run
    CONDITIONAL = "conditional"  # holds when the mass verdict places the run under the theorem
    INFORMATIONAL = "informational"  # constants are not computable; value is reported only


class Verdict(DomainModel):
    name: str
    kind: VerdictKind
    applicable: bool = True
    passed: Optional[bool] = Field(default=None, description="None for informational entries")
    value: Optional[float] = Field(default=None, description="Worst observed quantity")
    threshold: Optional[float] = None
    detail: str = ""


class VerificationReport(DomainModel):
    """
    Verification Report - every inequality evaluated on one run directory

    Domain Rules:
    - ``passed`` is True iff every applicable hard and conditional verdict passed
    """

    run_dir: str
    mass_verdict: Optional[str] = None
    verdicts: list[Verdict]

    @property
    def passed(self) -> bool:
        return all(
            verdict.passed
            for verdict in self.verdicts
            if verdict.applicable and verdict.kind is not VerdictKind.INFORMATIONAL
        )

    @property
    def failures(self) -> list[str]:
        return [
            verdict.name
            for verdict in self.verdicts
            if verdict.applicable
            and verdict.kind is not VerdictKind.INFORMATIONAL
            and not verdict.passed
        ]
