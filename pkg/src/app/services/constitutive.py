"""Equation of state and effective viscous flux on the staggered grid."""

import numpy as np

from src.domain.errors import DomainViolation
from src.domain.gas_model import GasModel
from src.domain.lagrangian_state import LagrangianState
from src.domain.stress_field import StressField


def pressure(rho_val, model: GasModel):
    """P = kappa * rho**gamma; accepts scalars or arrays, zero at vacuum."""
    rho_arr = np.asarray(rho_val, dtype=float)
    if np.any(rho_arr < 0.0):
        raise DomainViolation(f"density must be nonnegative, got min {rho_arr.min()!r}")
    result = model.kappa * rho_arr**model.gamma
    return float(result) if result.ndim == 0 else result


def velocity_divergence(state: LagrangianState, u: np.ndarray | None = None) -> np.ndarray:
    """Cell values of (u r^2)_x; times rho this is u_r + 2u/r."""
    velocities = state.u if u is None else u
    flux = velocities * state.r**2
    return np.diff(flux) / state.cell_mass


def stress(state: LagrangianState, model: GasModel) -> StressField:
    F = model.kappa * state.rho**model.gamma - model.nu * state.rho * velocity_divergence(state)
    return StressField(F=F, ghost=0.0)
