from typing import Optional

from pydantic import Field, model_validator

from src.domain.base import DomainModel


class SolverConfig(DomainModel):
    """
    Solver Config - discretisation and time-control parameters

    Domain Rules:
    - N >= 8 cells
    - 0 < cfl_acoustic <= 1 and 1/2 <= viscous_theta <= 1
    - dt_min < dt_max
    - eps_radius None means "a0 / N", resolved when the grid is built
    - density_floor None means 1e-14 times the initial central density
    """

    N: int = Field(..., ge=8, description="Cell count")
    eps_radius: Optional[float] = Field(default=None, ge=0.0, description="Inner cutoff radius")
    cfl_acoustic: float = Field(default=0.5, gt=0.0, le=1.0)
    viscous_theta: float = Field(default=1.0, ge=0.5, le=1.0)
    t_end: float = Field(..., ge=0.0)
    output_interval: float = Field(..., gt=0.0)
    dt_max: float = Field(..., gt=0.0)
    dt_min: float = Field(default=1e-12, gt=0.0)
    density_floor: Optional[float] = Field(default=None, gt=0.0)

    @model_validator(mode="after")
    def _check_dt_range(self) -> "SolverConfig":
        if self.dt_min >= self.dt_max:
            raise ValueError(f"dt_min={self.dt_min!r} must be below dt_max={self.dt_max!r}")
        return self

    @classmethod
    def for_run(cls, N: int, t_end: float, **overrides) -> "SolverConfig":
        """Fill the interval-derived defaults: output every t_end/100, dt_max = output_interval."""
        default_interval = t_end / 100.0 if t_end > 0 else 1.0
        output_interval = overrides.pop("output_interval", None) or default_interval
        dt_max = overrides.pop("dt_max", None) or output_interval
        return cls(N=N, t_end=t_end, output_interval=output_interval, dt_max=dt_max, **overrides)
