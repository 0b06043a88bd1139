"""Gas Model Domain Entity

Physical parameters of a barotropic, viscous, self-gravitating gas with
pressure law P = kappa * rho**gamma.
"""

from pydantic import Field, computed_field, model_validator

from src.domain.base import DomainModel

THEOREM_GAMMA_LOW = 6.0 / 5.0
THEOREM_GAMMA_HIGH = 4.0 / 3.0


class GasModel(DomainModel):
    """
    Gas Model - physical constants shared by every solver stage

    Domain Rules:
    - mu > 0 and 2*mu + 3*lambda >= 0
    - kappa > 0
    - 1 < gamma <= 2 for construction; the critical-mass theory needs 6/5 < gamma <= 4/3
    - nu = lambda + 2*mu is the only viscosity combination entering the radial equations
    """

    gamma: float = Field(..., gt=1.0, le=2.0, description="Adiabatic exponent")
    kappa: float = Field(default=1.0, gt=0.0, description="Pressure constant in P = kappa rho^gamma")
    mu: float = Field(..., gt=0.0, description="Shear viscosity")
    lambda_: float = Field(..., alias="lambda", description="Second (bulk) viscosity coefficient")
    gravity_enabled: bool = Field(default=True, description="Self-gravity switch for isolated tests")

    @model_validator(mode="after")
    def _check_viscosity(self) -> "GasModel":
        if 2.0 * self.mu + 3.0 * self.lambda_ < 0.0:
            raise ValueError(
                f"viscosity admissibility violated: 2*mu + 3*lambda = "
                f"{2.0 * self.mu + 3.0 * self.lambda_!r} < 0"
            )
        return self

    @computed_field
    @property
    def nu(self) -> float:
        return self.lambda_ + 2.0 * self.mu

    @property
    def polytropic_index(self) -> float:
        return 1.0 / (self.gamma - 1.0)

    @property
    def in_theorem_range(self) -> bool:
        return THEOREM_GAMMA_LOW < self.gamma <= THEOREM_GAMMA_HIGH + 1e-12

    def sound_speed(self, rho):
        return (self.gamma * self.kappa * rho ** (self.gamma - 1.0)) ** 0.5
