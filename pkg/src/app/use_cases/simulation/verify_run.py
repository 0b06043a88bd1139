"""Verify Run Use Case

Re-reads a run directory and evaluates the full inequality suite on it.
"""

import logging

from libs.result import Error, Result, Return
from src.app.repositories.run_repository import RunRepository
from src.app.services.verification import verify_run
from src.domain.errors import GaseousStarError
from src.domain.gas_model import GasModel
from src.domain.verification import VerificationReport

logger = logging.getLogger(__name__)


class VerifyRun:
    """
    Verify Run Use Case

    A report whose hard or conditional verdicts fail is still a successful
    result; callers decide how to surface ``report.passed``.

    Errors:
        RUN_DATA_ERROR: run directory missing or malformed
    """

    def __init__(self, run_repo: RunRepository):
        self.run_repo = run_repo

    def execute(self) -> Result[VerificationReport]:
        try:
            # Step 1: load everything the simulation wrote
            metadata = self.run_repo.load_metadata()
            records = self.run_repo.load_timeseries()
            snapshots = self.run_repo.load_snapshots()
            model = GasModel(
                gamma=metadata.gamma,
                kappa=metadata.kappa,
                mu=metadata.mu,
                lambda_=metadata.lambda_,
                gravity_enabled=metadata.gravity_enabled,
            )

            # Step 2: evaluate
            report = verify_run(self.run_repo.location, metadata, records, snapshots, model)
        except GaseousStarError as exc:
            logger.error(f"Cannot verify {self.run_repo.location}: {exc}")
            return Return.err(Error.from_exception(exc))
        return Return.ok(report)
