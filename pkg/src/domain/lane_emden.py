"""Lane-Emden Profile Domain Entity"""

from typing import Optional

import numpy as np
from pydantic import Field, model_validator

from src.domain.base import DomainModel, FloatArray


class LaneEmdenProfile(DomainModel):
    """
    Lane-Emden Profile - dimensionless polytrope and its physical rescaling

    Domain Rules:
    - theta(0) = 1 and theta'(0) = 0
    - theta decreases on the sampled range
    - xi1 is the first zero when n < 5; otherwise support is infinite and xi1 is None
    - physical radius alpha*xi1 and mass 4 pi alpha^3 rho_c xi_s^2 |theta'(xi_s)| use
      alpha^2 = (n+1) kappa rho_c^((1-n)/n) / (4 pi)
    """

    n: float = Field(..., gt=0.0, description="Polytropic index 1/(gamma-1)")
    xi: FloatArray = Field(..., description="Dimensionless radii, starting at 0")
    theta: FloatArray = Field(..., description="theta(xi)")
    dtheta: FloatArray = Field(..., description="theta'(xi)")
    xi1: Optional[float] = Field(default=None, description="First zero, None for infinite support")
    xi_end: float = Field(..., gt=0.0, description="Outermost integrated radius")
    surface_slope: float = Field(..., description="theta' at xi1, or at xi_end without a zero")
    rho_c: float = Field(default=1.0, gt=0.0, description="Central density")
    kappa: float = Field(default=1.0, gt=0.0, description="Pressure constant")
    max_residual: float = Field(default=0.0, ge=0.0, description="Sup of the ODE residual on the grid")

    @model_validator(mode="after")
    def _check_shape(self) -> "LaneEmdenProfile":
        if not (self.xi.size == self.theta.size == self.dtheta.size):
            raise ValueError("xi, theta and dtheta must have equal length")
        if self.xi[0] != 0.0 or self.theta[0] != 1.0 or self.dtheta[0] != 0.0:
            raise ValueError("profile must start at xi=0 with theta=1, theta'=0")
        return self

    @property
    def gamma(self) -> float:
        return 1.0 + 1.0 / self.n

    @property
    def infinite_support(self) -> bool:
        return self.xi1 is None

    @property
    def alpha(self) -> float:
        scale = self.rho_c ** ((1.0 - self.n) / self.n)
        return float(np.sqrt((self.n + 1.0) * self.kappa * scale / (4.0 * np.pi)))

    @property
    def physical_radius(self) -> Optional[float]:
        return None if self.xi1 is None else self.alpha * self.xi1

    @property
    def physical_mass(self) -> float:
        """Total mass; for infinite support the asymptotic value at xi_end."""
        xi_s = self.xi_end if self.xi1 is None else self.xi1
        return float(4.0 * np.pi * self.alpha**3 * self.rho_c * xi_s**2 * abs(self.surface_slope))

    def with_central_density(
        self, rho_c: float, kappa: Optional[float] = None
    ) -> "LaneEmdenProfile":
        return self.model_copy(
            update={"rho_c": rho_c, "kappa": self.kappa if kappa is None else kappa}
        )
