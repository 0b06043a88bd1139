"""Data Transfer Objects for Simulation Use Cases"""

from typing import Any, Dict, Optional

from pydantic import BaseModel, Field

from src.app.use_cases.stationary.dtos import InitialDataCommandDTO
from src.domain.gas_model import GasModel
from src.domain.solver_config import SolverConfig


class SimulationCommandDTO(BaseModel):
    """
    Command DTO for a full simulation run

    Used as input to RunSimulation use case.
    """

    model: GasModel
    solver: SolverConfig
    initial: InitialDataCommandDTO
    A_gamma: float = Field(default=1.0, ge=0.0)
    l: Optional[float] = None
    alpha: Optional[float] = None
    seed_label: str = Field(default="run")
    snapshot_every: int = Field(default=10, ge=1, description="Snapshot every k-th output time")
    envelope_x_min: float = Field(
        default=0.2, ge=0.0, le=1.0, description="Tracked mass fraction for envelope checks"
    )
    config_echo: Dict[str, Any] = Field(default_factory=dict)


class SimulationResponseDTO(BaseModel):
    run_dir: str
    steps: int
    rejected_steps: int
    t_final: float
    a_final: float
    a1_final: float
    M: float
    E0: float
    mass_verdict: Optional[str] = None
    snapshots: int


class FitExpansionCommandDTO(BaseModel):
    t_lo: float = Field(..., ge=0.0)
    t_hi: float = Field(..., gt=0.0)
