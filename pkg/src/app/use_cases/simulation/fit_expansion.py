"""Fit Expansion Use Case"""

import logging

from libs.result import Error, Result, Return
from src.app.repositories.run_repository import RunRepository
from src.app.services.expansion_fit import fit_expansion
from src.app.use_cases.simulation.dtos import FitExpansionCommandDTO
from src.domain.diagnostics_record import ExpansionFit
from src.domain.errors import GaseousStarError

logger = logging.getLogger(__name__)


class FitExpansion:
    """
    Fit Expansion Use Case

    Fits a1(t) ~ (1+t)^beta over a window of a persisted run. The exponent
    target is attached when the run metadata names gamma.
    """

    def __init__(self, run_repo: RunRepository):
        self.run_repo = run_repo

    def execute(self, command: FitExpansionCommandDTO) -> Result[ExpansionFit]:
        try:
            records = self.run_repo.load_timeseries()
            gamma = self._gamma()
            fit = fit_expansion(records, command.t_lo, command.t_hi, gamma)
        except GaseousStarError as exc:
            logger.error(f"Expansion fit failed on {self.run_repo.location}: {exc}")
            return Return.err(Error.from_exception(exc))
        return Return.ok(fit)

    def _gamma(self):
        try:
            return self.run_repo.load_metadata().gamma
        except GaseousStarError:
            logger.warning(f"No run metadata in {self.run_repo.location}; beta target omitted")
            return None
