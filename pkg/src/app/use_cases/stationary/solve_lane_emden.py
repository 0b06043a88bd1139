"""Solve Lane-Emden Use Case

Integrates the Lane-Emden equation and optionally exports the profile.
"""

import logging
from typing import Optional

from libs.result import Error, Result, Return
from src.app.repositories.profile_repository import ProfileRepository
from src.app.services.lane_emden_solver import solve_lane_emden
from src.app.use_cases.stationary.dtos import LaneEmdenCommandDTO, LaneEmdenResponseDTO
from src.domain.errors import GaseousStarError

logger = logging.getLogger(__name__)


class SolveLaneEmden:
    """
    Solve Lane-Emden Use Case

    Produces the dimensionless polytrope for gamma, its first zero and the
    physical radius and mass at the requested central density.
    """

    def __init__(self, profile_repo: Optional[ProfileRepository] = None):
        self.profile_repo = profile_repo

    def execute(self, command: LaneEmdenCommandDTO) -> Result[LaneEmdenResponseDTO]:
        try:
            # Step 1: integrate
            profile = solve_lane_emden(
                command.gamma, tol=command.tol, rho_c=command.rho_c, kappa=command.kappa
            )

            # Step 2: export
            path = None
            if command.output_path and self.profile_repo is not None:
                path = self.profile_repo.save_lane_emden(profile, command.output_path)
        except GaseousStarError as exc:
            logger.error(f"Lane-Emden solve failed for gamma={command.gamma!r}: {exc}")
            return Return.err(Error.from_exception(exc))

        return Return.ok(
            LaneEmdenResponseDTO(
                n=profile.n,
                gamma=profile.gamma,
                xi1=profile.xi1,
                infinite_support=profile.infinite_support,
                surface_slope=profile.surface_slope,
                physical_radius=profile.physical_radius,
                physical_mass=profile.physical_mass,
                max_residual=profile.max_residual,
                profile_path=path,
            )
        )
