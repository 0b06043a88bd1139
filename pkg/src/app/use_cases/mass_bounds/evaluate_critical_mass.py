"""Evaluate Critical Mass Use Case"""

import logging

from libs.result import Error, Result, Return
from src.app.services.mass_bounds import critical_mass_report
from src.app.use_cases.mass_bounds.dtos import CriticalMassCommandDTO
from src.domain.critical_mass import CriticalMassReport
from src.domain.errors import GaseousStarError

logger = logging.getLogger(__name__)


class EvaluateCriticalMass:
    """
    Evaluate Critical Mass Use Case

    Computes B, M_c, M_bar and, when a mass is supplied, C_gamma and the mass verdict.
    """

    def execute(self, command: CriticalMassCommandDTO) -> Result[CriticalMassReport]:
        try:
            report = critical_mass_report(
                command.gamma,
                command.E0,
                command.A_gamma,
                M=command.M,
                l=command.l,
                alpha=command.alpha,
            )
        except GaseousStarError as exc:
            logger.error(f"Critical-mass evaluation failed: {exc}")
            return Return.err(Error.from_exception(exc))

        logger.info(
            f"gamma={report.gamma:.6g}: B={report.B:.6g}, M_c={report.M_c:.6g}, "
            f"M_bar={report.M_bar:.6g}"
        )
        return Return.ok(report)
