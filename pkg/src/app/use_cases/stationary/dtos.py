"""Data Transfer Objects for Stationary-Profile Use Cases"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field

from src.app.services.initial_data_builder import PerturbationMode


class InitialKind(str, Enum):
    LANE_EMDEN = "lane-emden"
    UNIFORM = "uniform"
    FILE = "file"


class LaneEmdenCommandDTO(BaseModel):
    """
    Command DTO for solving the Lane-Emden equation

    Used as input to SolveLaneEmden use case.
    """

    gamma: float = Field(..., description="Adiabatic exponent in (1, 2]")
    rho_c: float = Field(default=1.0, gt=0.0, description="Central density for the physical rescaling")
    kappa: float = Field(default=1.0, gt=0.0, description="Pressure constant")
    tol: Optional[float] = Field(default=None, gt=0.0, description="Relative integration tolerance")
    output_path: Optional[str] = Field(default=None, description="Where to export the profile CSV")


class LaneEmdenResponseDTO(BaseModel):
    n: float
    gamma: float
    xi1: Optional[float] = Field(default=None, description="First zero; None for infinite support")
    infinite_support: bool
    surface_slope: float
    physical_radius: Optional[float] = None
    physical_mass: float
    max_residual: float
    profile_path: Optional[str] = None


class InitialDataCommandDTO(BaseModel):
    """
    Command DTO for building admissible initial data

    eps_radius None selects a0 / N, resolved once the support radius is known.
    """

    kind: InitialKind = Field(default=InitialKind.LANE_EMDEN)
    N: int = Field(..., ge=8, description="Cell count, used for the default inner radius")
    eps_radius: Optional[float] = Field(default=None, ge=0.0)
    rho_c: float = Field(default=1.0, gt=0.0)
    rho_bar: float = Field(default=1.0, gt=0.0)
    a0: float = Field(default=1.0, gt=0.0)
    initial_file: Optional[str] = None
    truncation_floor: Optional[float] = Field(default=None, gt=0.0)
    mass_fraction: Optional[float] = Field(default=None, gt=0.0, description="Target M / M_c")
    A_gamma: float = Field(default=1.0, ge=0.0)
    perturbation_amplitude: float = Field(default=0.0)
    perturbation_mode: PerturbationMode = Field(default=PerturbationMode.CUBIC)
