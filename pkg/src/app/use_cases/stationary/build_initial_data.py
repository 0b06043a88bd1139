"""Build Initial Data Use Case

Selects an initial-data constructor, resolves the inner radius, and applies the
optional velocity perturbation and mass rescaling.
"""

import logging
from typing import Optional

from libs.result import Error, Result, Return
from src.app.repositories.profile_repository import ProfileRepository
from src.app.services import initial_data_builder as builder
from src.app.services.lane_emden_solver import solve_lane_emden
from src.app.use_cases.stationary.dtos import InitialDataCommandDTO, InitialKind
from src.domain.errors import ConfigurationError, GaseousStarError
from src.domain.gas_model import GasModel
from src.domain.initial_data import InitialData

logger = logging.getLogger(__name__)


class BuildInitialData:
    """
    Build Initial Data Use Case

    Order of operations: base profile, velocity perturbation, then mass
    rescaling, so a requested fraction of M_c refers to the final E0.
    """

    def __init__(self, profile_repo: Optional[ProfileRepository] = None):
        self.profile_repo = profile_repo

    def execute(self, command: InitialDataCommandDTO, model: GasModel) -> Result[InitialData]:
        try:
            data = self.build(command, model)
        except GaseousStarError as exc:
            logger.error(f"Initial data ({command.kind.value}) rejected: {exc}")
            return Return.err(Error.from_exception(exc))
        return Return.ok(data)

    def build(self, command: InitialDataCommandDTO, model: GasModel) -> InitialData:
        # Step 1: base profile
        data = self._base(command, model)

        # Step 2: velocity perturbation
        if command.perturbation_amplitude != 0.0:
            data = builder.perturbed_initial_data(
                data, command.perturbation_amplitude, command.perturbation_mode, model
            )

        # Step 3: mass rescaling
        if command.mass_fraction is not None:
            data = builder.mass_for_critical_fraction(
                data, model, command.A_gamma, command.mass_fraction
            )
            logger.info(f"Rescaled to M={data.M:.6g} ({command.mass_fraction:g} of M_c)")
        return data

    def _base(self, command: InitialDataCommandDTO, model: GasModel) -> InitialData:
        if command.kind is InitialKind.LANE_EMDEN:
            profile = solve_lane_emden(model.gamma, kappa=model.kappa)
            eps = command.eps_radius
            if eps is None:
                support = builder.hydrostatic_initial_data(
                    profile, command.rho_c, 0.0, model, command.truncation_floor
                )
                eps = support.a0 / command.N
            return builder.hydrostatic_initial_data(
                profile, command.rho_c, eps, model, command.truncation_floor
            )

        if command.kind is InitialKind.UNIFORM:
            eps = command.a0 / command.N if command.eps_radius is None else command.eps_radius
            return builder.uniform_initial_data(command.rho_bar, command.a0, eps, model)

        if command.initial_file is None:
            raise ConfigurationError("initial_file", "required when initial = file")
        if self.profile_repo is None:
            raise ConfigurationError("initial_file", "no profile repository configured")
        r, rho, u = self.profile_repo.load_initial_profile(command.initial_file)
        requested = command.eps_radius
        if requested is not None and abs(requested - r[0]) > 1e-12 * max(1.0, r[0]):
            logger.warning(
                f"eps_radius={command.eps_radius!r} ignored; the file starts at r={r[0]!r}"
            )
        return builder.profile_initial_data(r, rho, u, model)
