"""Lagrangian State Domain Entity

Staggered mass-coordinate grid: node quantities (x, u, r) and cell densities.
"""

from typing import Optional

import numpy as np
from pydantic import Field, model_validator

from src.domain.base import DomainModel, FloatArray


class LagrangianState(DomainModel):
    """
    Lagrangian State - one time level of the free-boundary flow

    Domain Rules:
    - x has N+1 strictly increasing nodes with x[0] = 0 and x[N] = M/(4 pi)
    - r has N+1 strictly increasing node radii with r[0] = eps_radius
    - u has N+1 node velocities with u[0] = 0 (inner Dirichlet condition)
    - rho has N positive cell densities (cell mass over cell volume)
    - a is the boundary radius integrated by da/dt = u[N]; it agrees with r[N]
      up to the reported consistency gap
    """

    x: FloatArray = Field(..., description="Node mass coordinates")
    rho: FloatArray = Field(..., description="Cell densities")
    u: FloatArray = Field(..., description="Node velocities")
    r: FloatArray = Field(..., description="Node radii")
    time: float = Field(default=0.0, ge=0.0, description="Current time")
    eps_radius: float = Field(default=0.0, ge=0.0, description="Inner cutoff radius")
    a: float = Field(..., gt=0.0, description="Independently integrated boundary radius")

    @model_validator(mode="after")
    def _check_layout(self) -> "LagrangianState":
        n_cells = self.rho.size
        if n_cells < 1:
            raise ValueError("state needs at least one cell")
        for name in ("x", "u", "r"):
            if getattr(self, name).size != n_cells + 1:
                raise ValueError(f"{name} must have {n_cells + 1} nodes, got {getattr(self, name).size}")
        if self.x[0] != 0.0 or np.any(np.diff(self.x) <= 0.0):
            raise ValueError("mass coordinates must start at 0 and increase strictly")
        if np.any(np.diff(self.r) <= 0.0):
            raise ValueError("node radii must increase strictly")
        if abs(self.r[0] - self.eps_radius) > 1e-14 * max(1.0, self.eps_radius):
            raise ValueError(f"r[0]={self.r[0]!r} differs from eps_radius={self.eps_radius!r}")
        if self.u[0] != 0.0:
            raise ValueError(f"inner node velocity must vanish, got {self.u[0]!r}")
        if np.any(self.rho <= 0.0) or not np.all(np.isfinite(self.rho)):
            raise ValueError("cell densities must be positive and finite")
        return self

    @classmethod
    def from_density(
        cls,
        x: np.ndarray,
        rho: np.ndarray,
        u: np.ndarray,
        eps_radius: float = 0.0,
        time: float = 0.0,
        a: Optional[float] = None,
    ) -> "LagrangianState":
        """Reconstruct node radii from the cumulative volume relation r^3 = eps^3 + 3 * sum(dx / rho)."""
        r = reconstruct_radii(np.asarray(x, dtype=float), np.asarray(rho, dtype=float), eps_radius)
        return cls(
            x=x, rho=rho, u=u, r=r, time=time, eps_radius=eps_radius, a=r[-1] if a is None else a
        )

    @property
    def n_cells(self) -> int:
        return self.rho.size

    @property
    def cell_mass(self) -> np.ndarray:
        """Mass-coordinate width of every cell (cell mass divided by 4 pi)."""
        return np.diff(self.x)

    @property
    def node_mass(self) -> np.ndarray:
        """Dual-cell widths for nodes 1..N; the boundary node carries half a cell."""
        dx = self.cell_mass
        weights = np.empty_like(dx)
        weights[:-1] = 0.5 * (dx[:-1] + dx[1:])
        weights[-1] = 0.5 * dx[-1]
        return weights

    @property
    def total_mass(self) -> float:
        return 4.0 * np.pi * float(self.x[-1])

    @property
    def boundary_radius(self) -> float:
        return float(self.r[-1])

    @property
    def cell_volume_factor(self) -> np.ndarray:
        """r[i+1]^3 - r[i]^3 for every cell."""
        return np.diff(self.r**3)

    def geometry_residual(self) -> float:
        """Largest per-cell relative mismatch of r[i+1]^3 - r[i]^3 = 3 dx / rho."""
        expected = 3.0 * self.cell_mass / self.rho
        return float(np.max(np.abs(self.cell_volume_factor - expected) / expected))

    def boundary_gap(self) -> float:
        return abs(self.boundary_radius - self.a)


def reconstruct_radii(x: np.ndarray, rho: np.ndarray, eps_radius: float) -> np.ndarray:
    cubes = eps_radius**3 + np.concatenate(([0.0], np.cumsum(3.0 * np.diff(x) / rho)))
    radii = np.cbrt(cubes)
    radii[0] = eps_radius
    return radii
