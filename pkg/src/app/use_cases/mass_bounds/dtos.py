"""Data Transfer Objects for Critical-Mass Use Cases"""

from typing import Optional

from pydantic import BaseModel, Field


class CriticalMassCommandDTO(BaseModel):
    """
    Command DTO for evaluating the critical-mass thresholds

    Used as input to EvaluateCriticalMass use case.
    """

    gamma: float = Field(..., description="Adiabatic exponent in (6/5, 4/3]")
    E0: float = Field(..., gt=0.0, description="Initial kinetic plus internal energy")
    A_gamma: float = Field(..., ge=0.0, description="Hardy-Littlewood-Sobolev constant")
    M: Optional[float] = Field(default=None, gt=0.0, description="Total mass to classify")
    l: Optional[float] = Field(default=None, description="Energy multiplier for M_bar (> 1)")
    alpha: Optional[float] = Field(default=None, description="Concavity factor in (0, 1)")

    class Config:
        json_schema_extra = {"example": {"gamma": 1.25, "E0": 1.0, "A_gamma": 1.0, "l": 2.0}}
