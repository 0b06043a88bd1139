"""Run configuration schema

Flat ``key = value`` text, one pair per line, ``#`` starts a comment. Unknown
keys, duplicates and invalid values are rejected with the offending key named.
"""

from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, ValidationInfo, field_validator

from config import ApplicationConfig
from src.app.services.initial_data_builder import PerturbationMode
from src.app.use_cases.simulation.dtos import SimulationCommandDTO
from src.app.use_cases.stationary.dtos import InitialDataCommandDTO, InitialKind
from src.domain.errors import ConfigurationError
from src.domain.gas_model import THEOREM_GAMMA_HIGH, THEOREM_GAMMA_LOW, GasModel
from src.domain.solver_config import SolverConfig

AUTO = "auto"


class RunConfig(BaseModel):
    """
    Request schema for ``simulate``

    Union of the gas, solver, initial-data, critical-mass and output settings.
    """

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    # Gas
    gamma: float = Field(..., description="Adiabatic exponent in (6/5, 4/3]")
    kappa: float = Field(default=1.0, gt=0.0)
    mu: float = Field(..., gt=0.0)
    lambda_: float = Field(..., alias="lambda")
    gravity: bool = Field(default=True)

    # Solver
    N: int = Field(..., ge=8)
    eps_radius: Optional[float] = Field(default=None, ge=0.0, description="'auto' selects a0/N")
    cfl_acoustic: float = Field(default=0.5, gt=0.0, le=1.0)
    viscous_theta: float = Field(default=1.0, ge=0.5, le=1.0)
    t_end: float = Field(..., ge=0.0)
    output_interval: Optional[float] = Field(default=None, gt=0.0)
    dt_max: Optional[float] = Field(default=None, gt=0.0)
    dt_min: float = Field(default=1e-12, gt=0.0)
    density_floor: Optional[float] = Field(default=None, gt=0.0)

    # Initial data
    initial: InitialKind = Field(default=InitialKind.LANE_EMDEN)
    rho_c: float = Field(default=1.0, gt=0.0)
    rho_bar: float = Field(default=1.0, gt=0.0)
    a0: float = Field(default=1.0, gt=0.0)
    initial_file: Optional[str] = Field(default=None, validate_default=True)
    truncation_floor: Optional[float] = Field(default=None, gt=0.0)
    mass_fraction: Optional[float] = Field(default=None, gt=0.0)
    perturbation_amplitude: float = Field(default=0.0)
    perturbation_mode: PerturbationMode = Field(default=PerturbationMode.CUBIC)

    # Critical mass
    A_gamma: float = Field(default=ApplicationConfig.A_GAMMA, ge=0.0)
    l: Optional[float] = Field(default=None, gt=1.0)
    alpha: Optional[float] = Field(default=None, gt=0.0, lt=1.0)

    # Output
    output_dir: str = Field(default=ApplicationConfig.DEFAULT_OUTPUT_DIR)
    seed_label: str = Field(default="run")
    snapshot_every: int = Field(default=ApplicationConfig.SNAPSHOT_EVERY, ge=1)
    envelope_x_min: float = Field(default=ApplicationConfig.ENVELOPE_X_MIN_FRACTION, ge=0.0, le=1.0)

    @field_validator("gamma")
    @classmethod
    def validate_gamma(cls, v):
        """Simulation mode is restricted to the critical-mass range."""
        if abs(v - THEOREM_GAMMA_HIGH) <= ApplicationConfig.GAMMA_SNAP_TOLERANCE:
            return THEOREM_GAMMA_HIGH
        if not (THEOREM_GAMMA_LOW < v < THEOREM_GAMMA_HIGH):
            raise ValueError(f"gamma={v!r} outside (6/5, 4/3] for simulation mode")
        return v

    @field_validator("lambda_")
    @classmethod
    def validate_viscosity(cls, v, info: ValidationInfo):
        mu = info.data.get("mu")
        if mu is not None and 2.0 * mu + 3.0 * v < 0.0:
            raise ValueError(f"2*mu + 3*lambda = {2.0 * mu + 3.0 * v!r} < 0")
        return v

    @field_validator("eps_radius", mode="before")
    @classmethod
    def parse_auto(cls, v):
        if isinstance(v, str) and v.strip().lower() == AUTO:
            return None
        return v

    @field_validator("initial_file")
    @classmethod
    def validate_initial_file(cls, v, info: ValidationInfo):
        if info.data.get("initial") is InitialKind.FILE and not v:
            raise ValueError("required when initial = file")
        return v

    def to_gas_model(self) -> GasModel:
        return GasModel(
            gamma=self.gamma,
            kappa=self.kappa,
            mu=self.mu,
            lambda_=self.lambda_,
            gravity_enabled=self.gravity,
        )

    def to_solver_config(self) -> SolverConfig:
        return SolverConfig.for_run(
            self.N,
            self.t_end,
            output_interval=self.output_interval,
            dt_max=self.dt_max,
            eps_radius=self.eps_radius,
            cfl_acoustic=self.cfl_acoustic,
            viscous_theta=self.viscous_theta,
            dt_min=self.dt_min,
            density_floor=self.density_floor,
        )

    def to_command(self) -> SimulationCommandDTO:
        # Convert request schema to command DTO
        return SimulationCommandDTO(
            model=self.to_gas_model(),
            solver=self.to_solver_config(),
            initial=InitialDataCommandDTO(
                kind=self.initial,
                N=self.N,
                eps_radius=self.eps_radius,
                rho_c=self.rho_c,
                rho_bar=self.rho_bar,
                a0=self.a0,
                initial_file=self.initial_file,
                truncation_floor=self.truncation_floor,
                mass_fraction=self.mass_fraction,
                A_gamma=self.A_gamma,
                perturbation_amplitude=self.perturbation_amplitude,
                perturbation_mode=self.perturbation_mode,
            ),
            A_gamma=self.A_gamma,
            l=self.l,
            alpha=self.alpha,
            seed_label=self.seed_label,
            snapshot_every=self.snapshot_every,
            envelope_x_min=self.envelope_x_min,
            config_echo=self.model_dump(mode="json", by_alias=True),
        )


def read_pairs(text: str) -> dict[str, Any]:
    pairs: dict[str, Any] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigurationError(f"line {number}", f"expected 'key = value', got {raw.strip()!r}")
        if key in pairs:
            raise ConfigurationError(key, "duplicate key")
        pairs[key] = value.strip()
    return pairs


def _first_error(exc: ValidationError) -> ConfigurationError:
    error = exc.errors()[0]
    key = str(error["loc"][0]) if error["loc"] else "config"
    message = error["msg"].removeprefix("Value error, ")
    return ConfigurationError(key, message)


def parse_config(text: str) -> RunConfig:
    """Validate flat config text into a RunConfig; component invariants are checked too."""
    pairs = read_pairs(text)
    try:
        config = RunConfig.model_validate(pairs)
    except ValidationError as exc:
        raise _first_error(exc) from exc
    try:
        config.to_gas_model()
        config.to_solver_config()
    except ValidationError as exc:
        raise _first_error(exc) from exc
    return config
