"""Diagnostics Domain Entities

Per-output-time scalars, the time series they form, and the expansion fit.
"""

from typing import Optional

import numpy as np
from pydantic import Field, model_validator

from src.domain.base import DomainModel
from src.domain.lagrangian_state import LagrangianState

TIMESERIES_COLUMNS = (
    "t",
    "a",
    "a1",
    "mass",
    "E_total",
    "E_kin",
    "E_int",
    "E_grav",
    "dissipation_cum",
    "H",
    "Y",
    "mean_pressure",
    "weighted_pressure_cum",
    "pressure_integral",
    "pressure_time_integral",
    "dissipation_rate",
    "envelope_violations",
    "path_violations",
    "boundary_gap",
    "boundary_stress",
    "C_gamma_bound",
    "strict_bound",
)


class EnergyBreakdown(DomainModel):
    mass: float
    kinetic: float = Field(..., ge=0.0)
    internal: float = Field(..., ge=0.0)
    gravitational: float = Field(..., ge=0.0)
    pressure_integral: float = Field(..., ge=0.0, description="int rho^gamma r^2 dr")

    @property
    def total(self) -> float:
        return self.kinetic + self.internal - self.gravitational


class DiagnosticsRecord(DomainModel):
    """
    Diagnostics Record - monitored functionals at one output time

    Domain Rules:
    - E_kin, E_int, E_grav and dissipation_cum are nonnegative
    - E_total = E_kin + E_int - E_grav
    - violation counts are None when the matching inequality does not apply
    """

    t: float = Field(..., ge=0.0)
    a: float = Field(..., gt=0.0)
    a1: float = Field(..., gt=0.0, description="Running maximum of the boundary radius")
    mass: float
    E_total: float
    E_kin: float = Field(..., ge=0.0)
    E_int: float = Field(..., ge=0.0)
    E_grav: float = Field(..., ge=0.0)
    dissipation_cum: float = Field(..., ge=0.0)
    H: float
    Y: float
    mean_pressure: float = Field(..., ge=0.0)
    weighted_pressure_cum: float = Field(..., ge=0.0)
    pressure_integral: float = Field(..., ge=0.0)
    pressure_time_integral: float = Field(..., ge=0.0)
    dissipation_rate: float = Field(..., ge=0.0)
    envelope_violations: Optional[int] = None
    path_violations: Optional[int] = None
    boundary_gap: float = Field(..., ge=0.0)
    boundary_stress: float
    C_gamma_bound: Optional[float] = Field(
        default=None, description="E_kin + C_gamma * pressure_integral + dissipation_cum"
    )
    strict_bound: float = Field(
        ..., description="E_kin + pressure_integral/(2(gamma-1)) + dissipation_cum"
    )


class TimeSeries(DomainModel):
    """
    Time Series - records at strictly increasing output times

    Domain Rules:
    - times strictly increase
    - a1 is the running maximum of a over every accepted step, hence nondecreasing
    """

    records: list[DiagnosticsRecord]
    initial_state: LagrangianState
    final_state: LagrangianState
    steps: int = Field(default=0, ge=0)
    rejected_steps: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_monotone(self) -> "TimeSeries":
        if not self.records:
            raise ValueError("time series needs at least one record")
        times = np.array([record.t for record in self.records])
        if np.any(np.diff(times) <= 0.0):
            raise ValueError("output times must increase strictly")
        running = np.array([record.a1 for record in self.records])
        if np.any(np.diff(running) < 0.0):
            raise ValueError("a1 must be nondecreasing")
        return self

    @property
    def times(self) -> np.ndarray:
        return np.array([record.t for record in self.records])

    @property
    def boundary_radius(self) -> np.ndarray:
        return np.array([record.a for record in self.records])

    @property
    def running_max(self) -> np.ndarray:
        return np.array([record.a1 for record in self.records])


class ExpansionFit(DomainModel):
    """
    Expansion Fit - log-log slope of a1(t) against (1 + t)

    Domain Rules:
    - t_lo < t_hi and the window holds at least ten samples
    - beta_target = (6 gamma - 7) / (3 gamma), which is 1/4 at gamma = 4/3
    """

    t_lo: float
    t_hi: float
    samples: int = Field(..., ge=2)
    beta_hat: float
    beta_target: Optional[float] = None
    residual: float = Field(..., ge=0.0, description="RMS of the log-log fit")
    beta_band: Optional[tuple[float, float]] = Field(
        default=None, description="Open interval of subsequence exponents for gamma < 4/3"
    )
