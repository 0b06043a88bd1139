from typing import Any, Optional

from pydantic import Field

from src.domain.base import DomainModel
from src.domain.critical_mass import CriticalMassReport


class RunMetadata(DomainModel):
    """
    Run Metadata - everything ``verify`` needs besides the CSV files

    Domain Rules:
    - E0 is the discrete kinetic plus internal energy of the Lagrangian state at t = 0
    - E0_continuum is the quadrature value of the Eulerian initial data
    - critical is None when gamma lies outside the critical-mass range
    """

    seed_label: str
    config: dict[str, Any] = Field(default_factory=dict, description="Echo of the run configuration")
    gamma: float
    kappa: float
    mu: float
    lambda_: float = Field(..., alias="lambda")
    nu: float
    gravity_enabled: bool
    N: int
    eps_radius: float
    t_end: float
    output_interval: float
    M: float
    E0: float
    E0_continuum: float
    E_total0: float
    energy_scale: float = Field(..., gt=0.0, description="E_kin + E_int + E_grav at t = 0")
    rho0_max: float
    x_min: float = Field(..., description="Smallest tracked mass coordinate for envelope checks")
    initial_label: str
    mass_defect: float = 0.0
    truncated_mass: float = 0.0
    hydrostatic_residual: Optional[float] = None
    critical: Optional[CriticalMassReport] = None
    steps: int = 0
    rejected_steps: int = 0
    snapshots: list[str] = Field(default_factory=list)
