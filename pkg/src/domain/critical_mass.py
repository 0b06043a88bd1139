"""Critical Mass Domain Entities"""

from enum import Enum
from typing import Optional

from pydantic import Field

from src.domain.base import DomainModel


class MassVerdict(str, Enum):
    STRICTLY_SUBCRITICAL = "strictly-subcritical"
    SUBCRITICAL = "subcritical"
    SUPERCRITICAL = "supercritical"

    @property
    def is_subcritical(self) -> bool:
        return self is not MassVerdict.SUPERCRITICAL


class CriticalMassReport(DomainModel):
    """
    Critical Mass Report - closed-form mass thresholds for one (gamma, M, E0)

    Domain Rules:
    - B > 0, M_c > 0, and s_star > 0 whenever gamma < 4/3
    - M_bar < M_c
    - verdict: strictly-subcritical iff M < M_bar, subcritical iff M_bar <= M < M_c,
      supercritical otherwise; no verdict without a mass
    - every report echoes the A_gamma it was computed with
    """

    gamma: float
    A_gamma: float = Field(..., description="Hardy-Littlewood-Sobolev constant used")
    B: float = Field(..., gt=0.0)
    E0: float = Field(..., gt=0.0)
    M: Optional[float] = Field(default=None, description="Total mass, when known")
    C_gamma: Optional[float] = Field(default=None, description="Coercivity constant (may be <= 0)")
    s_star: Optional[float] = Field(default=None, description="Maximiser of f; None at gamma=4/3")
    f_at_s_star: Optional[float] = Field(default=None)
    M_c: float = Field(..., gt=0.0)
    M_bar: float = Field(..., gt=0.0)
    l: Optional[float] = Field(default=None, description="Energy multiplier in M_bar")
    alpha: Optional[float] = Field(default=None, description="Concavity factor paired with l")
    verdict: Optional[MassVerdict] = Field(default=None)


class EnergyPartition(DomainModel):
    """Split of a density profile's energy into internal and gravitational parts."""

    pressure_integral: float = Field(..., description="int rho^gamma r^2 dr")
    internal_energy: float = Field(..., description="int kappa rho^gamma/(gamma-1) r^2 dr")
    gravitational_energy: float = Field(..., description="4 pi int rho r int rho s^2 ds dr")
    C_gamma: Optional[float] = None
    subcritical_holds: Optional[bool] = Field(
        default=None, description="internal - gravitational >= C_gamma * pressure_integral"
    )
    strictly_subcritical_holds: bool = Field(
        ..., description="internal - gravitational >= pressure_integral / (2(gamma-1))"
    )
