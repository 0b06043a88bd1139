"""Eulerian <-> Lagrangian mass-coordinate transform

Nodes carry equal mass per cell; cell densities are cell mass over cell volume,
so the cumulative volume relation reproduces the node radii exactly.
"""

import logging
from typing import Optional

import numpy as np

from src.app.services.initial_data_builder import enclosed_mass_coordinate
from src.domain.errors import DomainViolation
from src.domain.initial_data import InitialData
from src.domain.lagrangian_state import LagrangianState

logger = logging.getLogger(__name__)


def eulerian_to_lagrangian(
    r: np.ndarray,
    rho: np.ndarray,
    u: np.ndarray,
    N: int,
    density_floor: Optional[float] = None,
) -> LagrangianState:
    r = np.asarray(r, dtype=float)
    rho = np.asarray(rho, dtype=float)
    u = np.asarray(u, dtype=float)
    if N < 1:
        raise DomainViolation(f"cell count must be positive, got {N!r}")
    if np.any(rho[:-1] <= 0.0):
        logger.warning(
            f"{int(np.sum(rho[:-1] <= 0.0))} interior density samples are not positive; "
            f"cells straddling them are averaged over their volume"
        )
    eps = float(r[0])

    # Step 1: mass coordinate of every sample and the equal-mass node grid
    x_of_r = enclosed_mass_coordinate(r, rho)
    X = float(x_of_r[-1])
    if X <= 0.0:
        raise DomainViolation("profile carries no mass")
    x = np.linspace(0.0, X, N + 1)

    # Step 2: node volumes by inverting x(r), then cell density = mass / volume
    cubes = np.interp(x, x_of_r, r**3)
    cubes[0], cubes[-1] = eps**3, r[-1] ** 3
    volumes = np.diff(cubes)
    if np.any(volumes <= 0.0):
        raise DomainViolation("mass coordinate is not invertible on the supplied grid")
    cell_rho = 3.0 * np.diff(x) / volumes
    if density_floor is not None and cell_rho[-1] < density_floor:
        logger.debug(f"outer cell density {cell_rho[-1]:.3e} raised to floor {density_floor:.3e}")
        cell_rho[-1] = density_floor

    # Step 3: node velocities
    node_u = np.interp(np.cbrt(cubes), r, u)
    node_u[0] = 0.0

    state = LagrangianState.from_density(x, cell_rho, node_u, eps_radius=eps)
    logger.debug(
        f"Lagrangian grid: N={N}, X={X:.6g}, a={state.boundary_radius:.6g}, "
        f"outer rho={cell_rho[-1]:.3e}"
    )
    return state


def initial_state(
    data: InitialData, N: int, density_floor: Optional[float] = None
) -> LagrangianState:
    return eulerian_to_lagrangian(data.r, data.rho0, data.u0, N, density_floor)


def lagrangian_to_eulerian(state: LagrangianState) -> tuple[np.ndarray, np.ndarray]:
    """Cell-centre radii and cell densities of a Lagrangian state."""
    centres = np.cbrt(0.5 * (state.r[:-1] ** 3 + state.r[1:] ** 3))
    return centres, np.array(state.rho)


def mass_coordinates(r: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Inverse of the volume relation: node x from node radii and cell densities."""
    r = np.asarray(r, dtype=float)
    return np.concatenate(([0.0], np.cumsum(np.asarray(rho, dtype=float) * np.diff(r**3) / 3.0)))
