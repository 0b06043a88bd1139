from pydantic import Field

from src.domain.base import DomainModel, FloatArray


class StressField(DomainModel):
    """
    Effective viscous flux F = kappa rho^gamma - nu rho (u r^2)_x on every cell.

    The stress-free boundary is imposed through a ghost value beyond the last
    cell; ``boundary_residual`` records how far the last physical cell is from it.
    """

    F: FloatArray = Field(..., description="Cell stress values")
    ghost: float = Field(default=0.0, description="Ghost stress beyond the free boundary")

    @property
    def boundary_residual(self) -> float:
        return abs(float(self.F[-1]) - self.ghost)
