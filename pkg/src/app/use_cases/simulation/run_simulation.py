"""Run Simulation Use Case

Builds initial data, integrates the Lagrangian system to t_end and writes the
run directory: metadata, diagnostics time series and snapshots.
"""

import logging
from typing import Optional

from config import ApplicationConfig
from libs.result import Error, Result, Return
from src.app.repositories.run_repository import RunRepository
from src.app.services import diagnostics, lagrangian_integrator, mass_bounds
from src.app.services.constitutive import stress
from src.app.services.lagrangian_transform import initial_state
from src.app.use_cases.simulation.dtos import SimulationCommandDTO, SimulationResponseDTO
from src.app.use_cases.stationary.build_initial_data import BuildInitialData
from src.domain.critical_mass import CriticalMassReport
from src.domain.errors import GaseousStarError
from src.domain.gas_model import GasModel
from src.domain.lagrangian_state import LagrangianState
from src.domain.run_metadata import RunMetadata
from src.domain.snapshot import Snapshot

logger = logging.getLogger(__name__)


class SnapshotWriter:
    """Observer persisting every k-th output state; the final state is always written."""

    def __init__(self, run_repo: RunRepository, model: GasModel, every: int):
        self.run_repo = run_repo
        self.model = model
        self.every = every
        self.calls = 0
        self.names: list[str] = []
        self._last_written: Optional[float] = None

    def __call__(self, state: LagrangianState) -> None:
        if self.calls % self.every == 0:
            self.write(state)
        self.calls += 1

    def write(self, state: LagrangianState) -> None:
        F = stress(state, self.model).F
        snapshot = Snapshot.from_state(len(self.names), state, F, self.model.gamma)
        self.names.append(self.run_repo.save_snapshot(snapshot))
        self._last_written = state.time

    def finish(self, state: LagrangianState) -> None:
        if self._last_written != state.time:
            self.write(state)


def critical_report_for(
    state: LagrangianState, model: GasModel, E0: float, command: SimulationCommandDTO
) -> Optional[CriticalMassReport]:
    """Critical-mass report when the run lies where the theory applies (gravity on, kappa = 1)."""
    if not (model.gravity_enabled and model.kappa == 1.0 and model.in_theorem_range):
        logger.info("Critical-mass checks not applicable to this run")
        return None
    return mass_bounds.critical_mass_report(
        model.gamma, E0, command.A_gamma, M=state.total_mass, l=command.l, alpha=command.alpha
    )


class RunSimulation:
    """
    Run Simulation Use Case

    Errors:
        DOMAIN_VIOLATION, SUPPORT_NOT_FOUND: initial data could not be built
        CONFIGURATION_ERROR: inconsistent run parameters
        SHELL_CROSSING, TIME_STEP_UNDERFLOW: the integrator gave up
    """

    def __init__(self, run_repo: RunRepository, build_initial_data: BuildInitialData):
        self.run_repo = run_repo
        self.build_initial_data = build_initial_data

    def execute(self, command: SimulationCommandDTO) -> Result[SimulationResponseDTO]:
        model, solver = command.model, command.solver
        try:
            # Step 1: initial data and the Lagrangian grid
            data = self.build_initial_data.build(command.initial, model)
            start = initial_state(data, solver.N)
            breakdown = diagnostics.energies(start, model)
            E0 = breakdown.kinetic + breakdown.internal

            # Step 2: critical-mass regime and the inequality context
            report = critical_report_for(start, model, E0, command)
            bounds_apply = (
                report is not None
                and report.verdict is not None
                and report.verdict.is_subcritical
                and report.C_gamma is not None
                and report.C_gamma > 0.0
            )
            X = float(start.x[-1])
            context = diagnostics.DiagnosticsContext(
                E0=E0,
                rho0=start.rho,
                x_min=command.envelope_x_min * X,
                C_gamma=report.C_gamma if bounds_apply else None,
                check_bounds=bounds_apply,
                path_strides=tuple(int(stride) for stride in ApplicationConfig.PATH_PAIR_STRIDES),
            )
            if report is not None:
                logger.info(
                    f"Mass verdict {report.verdict.value}: M={report.M:.6g}, M_c={report.M_c:.6g}, "
                    f"M_bar={report.M_bar:.6g}"
                )

            # Step 3: integrate, persisting snapshots along the way
            writer = SnapshotWriter(self.run_repo, model, command.snapshot_every)
            series = lagrangian_integrator.run(
                data, model, solver, context=context, observer=writer, start=start
            )
            writer.finish(series.final_state)

            # Step 4: persist diagnostics and metadata
            self.run_repo.save_timeseries(series.records)
            metadata = RunMetadata(
                seed_label=command.seed_label,
                config=command.config_echo,
                gamma=model.gamma,
                kappa=model.kappa,
                mu=model.mu,
                lambda_=model.lambda_,
                nu=model.nu,
                gravity_enabled=model.gravity_enabled,
                N=solver.N,
                eps_radius=start.eps_radius,
                t_end=solver.t_end,
                output_interval=solver.output_interval,
                M=start.total_mass,
                E0=E0,
                E0_continuum=data.E0,
                E_total0=series.records[0].E_total,
                energy_scale=breakdown.kinetic + breakdown.internal + breakdown.gravitational,
                rho0_max=float(start.rho.max()),
                x_min=context.x_min,
                initial_label=data.label,
                mass_defect=data.mass_defect,
                truncated_mass=data.truncated_mass,
                hydrostatic_residual=data.hydrostatic_residual,
                critical=report,
                steps=series.steps,
                rejected_steps=series.rejected_steps,
                snapshots=writer.names,
            )
            self.run_repo.save_metadata(metadata)
        except GaseousStarError as exc:
            logger.error(f"Simulation aborted: {exc}")
            return Return.err(Error.from_exception(exc))

        final = series.records[-1]
        verdict = report.verdict.value if report is not None and report.verdict else None
        return Return.ok(
            SimulationResponseDTO(
                run_dir=self.run_repo.location,
                steps=series.steps,
                rejected_steps=series.rejected_steps,
                t_final=final.t,
                a_final=final.a,
                a1_final=final.a1,
                M=metadata.M,
                E0=E0,
                mass_verdict=verdict,
                snapshots=len(writer.names),
            )
        )
