"""Initial Data Domain Entity

Eulerian density/velocity profile on [eps, a0] with a vacuum boundary.
"""

from typing import Optional

import numpy as np
from pydantic import Field, model_validator

from src.domain.base import DomainModel, FloatArray


class InitialData(DomainModel):
    """
    Initial Data - admissible starting profile for the free-boundary problem

    Domain Rules:
    - r is a strictly increasing grid from eps to a0
    - rho0 > 0 on the open interval, rho0(a0) = 0 (vacuum at the free boundary)
    - u0(eps) = 0
    - compatibility u0'(a0) + 2 u0(a0)/a0 = 0 within ``compatibility_tolerance``
    - M = 4 pi int rho0 r^2 dr and E0 = int (rho0 u0^2 / 2 + kappa rho0^gamma/(gamma-1)) r^2 dr
    """

    r: FloatArray = Field(..., description="Radial sample grid on [eps, a0]")
    rho0: FloatArray = Field(..., description="Initial density samples")
    u0: FloatArray = Field(..., description="Initial velocity samples")
    boundary_slope: float = Field(..., description="u0'(a0)")
    M: float = Field(..., gt=0.0, description="Total mass")
    E0: float = Field(..., gt=0.0, description="Initial kinetic plus internal energy")
    compatibility_tolerance: float = Field(default=1e-10, gt=0.0)
    label: str = Field(default="custom", description="Constructor that produced the data")
    mass_defect: float = Field(default=0.0, ge=0.0, description="Mass of the parent profile inside eps")
    truncated_mass: float = Field(default=0.0, ge=0.0, description="Mass removed by a density floor")
    hydrostatic_residual: Optional[float] = Field(default=None, description="Max stationary-balance residual")

    @model_validator(mode="after")
    def _check_admissible(self) -> "InitialData":
        if not (self.r.size == self.rho0.size == self.u0.size) or self.r.size < 3:
            raise ValueError("r, rho0 and u0 must share one grid of at least three points")
        if np.any(np.diff(self.r) <= 0.0) or self.r[0] < 0.0:
            raise ValueError("radial grid must be nonnegative and strictly increasing")
        if self.rho0[-1] != 0.0:
            raise ValueError(f"rho0(a0) must vanish, got {self.rho0[-1]!r}")
        if np.any(self.rho0[:-1] <= 0.0):
            raise ValueError("rho0 must be positive inside (eps, a0)")
        if self.u0[0] != 0.0:
            raise ValueError(f"u0(eps) must vanish, got {self.u0[0]!r}")
        residual = self.compatibility_residual
        if abs(residual) > self.compatibility_tolerance:
            raise ValueError(f"compatibility residual {residual!r} exceeds {self.compatibility_tolerance!r}")
        return self

    @property
    def a0(self) -> float:
        return float(self.r[-1])

    @property
    def eps(self) -> float:
        return float(self.r[0])

    @property
    def compatibility_residual(self) -> float:
        return self.boundary_slope + 2.0 * float(self.u0[-1]) / self.a0
