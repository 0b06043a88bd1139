from pydantic import Field

from src.domain.base import DomainModel, FloatArray
from src.domain.lagrangian_state import LagrangianState


class Snapshot(DomainModel):
    """A persisted state: node columns x, r, u and cell columns rho, F."""

    index: int = Field(..., ge=0)
    t: float
    gamma: float
    M: float
    x: FloatArray
    r: FloatArray
    u: FloatArray
    rho: FloatArray
    F: FloatArray

    def geometry_residual(self) -> float:
        expected = 3.0 * (self.x[1:] - self.x[:-1]) / self.rho
        actual = self.r[1:] ** 3 - self.r[:-1] ** 3
        return float(abs((actual - expected) / expected).max())

    @classmethod
    def from_state(cls, index: int, state: LagrangianState, F, gamma: float) -> "Snapshot":
        return cls(
            index=index,
            t=state.time,
            gamma=gamma,
            M=state.total_mass,
            x=state.x,
            r=state.r,
            u=state.u,
            rho=state.rho,
            F=F,
        )
