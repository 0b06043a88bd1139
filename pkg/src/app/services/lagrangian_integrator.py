"""Time integration of the Lagrangian free-boundary system

One step advances node velocities with explicit pressure and gravity and a
theta-implicit viscous operator (symmetric tridiagonal solve), moves the node
radii with the new velocities and rebuilds cell densities from the volume
relation with the cell masses held fixed. The boundary radius is integrated
separately from the outer node velocity.
"""

import logging
from typing import Callable, NamedTuple, Optional

import numpy as np
from scipy.linalg import solve_banded

from src.app.services import diagnostics
from src.app.services.lagrangian_transform import initial_state
from src.domain.diagnostics_record import TimeSeries
from src.domain.errors import ShellCrossingError, TimeStepUnderflowError
from src.domain.gas_model import GasModel
from src.domain.initial_data import InitialData
from src.domain.lagrangian_state import LagrangianState
from src.domain.solver_config import SolverConfig

logger = logging.getLogger(__name__)

FOUR_PI = 4.0 * np.pi
DEFAULT_FLOOR_FRACTION = 1e-14

StateObserver = Callable[[LagrangianState], None]


class StepResult(NamedTuple):
    state: LagrangianState
    dt: float
    rejected: int
    dissipation: float  # nu int_t^{t+dt} int (div u)^2 r^2 dr dtau


def gravity_acceleration(state: LagrangianState, model: GasModel) -> np.ndarray:
    """-4 pi x / r^2 at every node; the pinned inner node gets zero."""
    accel = np.zeros_like(state.r)
    if not model.gravity_enabled:
        return accel
    accel[1:] = -FOUR_PI * state.x[1:] / state.r[1:] ** 2
    return accel


def choose_dt(state: LagrangianState, model: GasModel, config: SolverConfig) -> float:
    """Acoustic CFL step over cells, clamped to [dt_min, dt_max]."""
    widths = np.diff(state.r)
    node_speed = np.abs(state.u)
    speed = model.sound_speed(state.rho) + np.maximum(node_speed[:-1], node_speed[1:])
    moving = speed > 0.0
    if not np.any(moving):
        return config.dt_max
    dt = config.cfl_acoustic * float(np.min(widths[moving] / speed[moving]))
    return float(np.clip(dt, config.dt_min, config.dt_max))


def density_floor(config: SolverConfig, rho0_max: float) -> float:
    if config.density_floor is not None:
        return config.density_floor
    return DEFAULT_FLOOR_FRACTION * rho0_max


def _viscous_coefficients(state: LagrangianState, model: GasModel) -> np.ndarray:
    return model.nu * state.rho / state.cell_mass


def _viscous_force(state: LagrangianState, coefficients: np.ndarray, u: np.ndarray) -> np.ndarray:
    """r_i^2 (V_i - V_{i-1}) for nodes 1..N with V = c (u r^2)_diff and zero flux beyond the boundary."""
    flux = coefficients * np.diff(u * state.r**2)
    flux_ext = np.append(flux, 0.0)
    return state.r[1:] ** 2 * (flux_ext[1:] - flux_ext[:-1])


def _velocity_update(
    state: LagrangianState, model: GasModel, theta: float, dt: float
) -> np.ndarray:
    weights = state.node_mass
    radii = state.r
    coefficients = _viscous_coefficients(state, model)

    # Step 1: explicit forces, stress-free ghost beyond the last cell
    pressure_ext = np.append(model.kappa * state.rho**model.gamma, 0.0)
    pressure_force = -(radii[1:] ** 2) * np.diff(pressure_ext)
    gravity_force = weights * gravity_acceleration(state, model)[1:]
    rhs = weights * state.u[1:] + dt * (pressure_force + gravity_force)
    if theta < 1.0:
        rhs += dt * (1.0 - theta) * _viscous_force(state, coefficients, state.u)

    # Step 2: (diag(m) - dt theta L) u_new = rhs, L symmetric tridiagonal
    coefficients_ext = np.append(coefficients, 0.0)
    diagonal = weights + dt * theta * radii[1:] ** 4 * (coefficients + coefficients_ext[1:])
    off_diagonal = -dt * theta * coefficients[1:] * radii[1:-1] ** 2 * radii[2:] ** 2
    banded = np.zeros((3, weights.size))
    banded[0, 1:] = off_diagonal
    banded[1] = diagonal
    banded[2, :-1] = off_diagonal
    u_new = np.empty_like(state.u)
    u_new[0] = 0.0
    u_new[1:] = solve_banded((1, 1), banded, rhs)
    return u_new


def advance(
    state: LagrangianState, model: GasModel, config: SolverConfig, dt: float, floor: float
) -> StepResult:
    """One accepted step starting from dt, halving on shell crossing."""
    rejected = 0
    while True:
        try:
            return _attempt(state, model, config, dt, floor)._replace(rejected=rejected)
        except ShellCrossingError as exc:
            rejected += 1
            dt *= 0.5
            logger.debug(f"step rejected at t={state.time:.6g} ({exc}); retrying with dt={dt:.3e}")
            if dt < config.dt_min:
                raise TimeStepUnderflowError(
                    f"time step fell below dt_min={config.dt_min!r} at t={state.time!r}",
                    dump={
                        "t": state.time,
                        "dt": dt,
                        "a": state.a,
                        "rejections": rejected,
                        "min_rho": float(np.min(state.rho)),
                        "max_abs_u": float(np.max(np.abs(state.u))),
                    },
                ) from exc


def _attempt(
    state: LagrangianState, model: GasModel, config: SolverConfig, dt: float, floor: float
) -> StepResult:
    theta = config.viscous_theta
    u_new = _velocity_update(state, model, theta, dt)
    if not np.all(np.isfinite(u_new)):
        raise ShellCrossingError("non-finite velocity")

    # Step 3: move nodes, then rebuild densities with cell masses fixed
    r_new = state.r + dt * u_new
    volumes = np.diff(r_new**3)
    if np.any(np.diff(r_new) <= 0.0) or np.any(volumes <= 0.0):
        cells = np.flatnonzero(np.diff(r_new) <= 0.0)
        raise ShellCrossingError(f"cell volume non-positive at cells {cells[:5].tolist()}")
    rho_new = 3.0 * state.cell_mass / volumes
    rho_new[-1] = max(rho_new[-1], floor)

    u_theta = theta * u_new + (1.0 - theta) * state.u
    dissipation = dt * diagnostics.dissipation_rate(state, model, u_theta)

    new_state = LagrangianState.from_density(
        state.x,
        rho_new,
        u_new,
        eps_radius=state.eps_radius,
        time=state.time + dt,
        a=state.a + dt * float(u_new[-1]),
    )
    return StepResult(state=new_state, dt=dt, rejected=0, dissipation=dissipation)


def step(
    state: LagrangianState, model: GasModel, config: SolverConfig, floor: Optional[float] = None
) -> tuple[LagrangianState, float]:
    floor = density_floor(config, float(np.max(state.rho))) if floor is None else floor
    result = advance(state, model, config, choose_dt(state, model, config), floor)
    return result.state, result.dt


def output_times(config: SolverConfig) -> np.ndarray:
    count = int(np.floor(config.t_end / config.output_interval + 1e-9))
    times = config.output_interval * np.arange(1, count + 1)
    if count == 0 or times[-1] < config.t_end * (1.0 - 1e-12):
        times = np.append(times, config.t_end)
    return times[times > 0.0]


def run(
    initial: InitialData,
    model: GasModel,
    config: SolverConfig,
    context: Optional[diagnostics.DiagnosticsContext] = None,
    observer: Optional[StateObserver] = None,
    start: Optional[LagrangianState] = None,
) -> TimeSeries:
    """Integrate to t_end, emitting a record at t = 0 and at every output time."""
    state = start if start is not None else initial_state(initial, config.N)
    floor = density_floor(config, float(np.max(state.rho)))
    if context is None:
        breakdown = diagnostics.energies(state, model)
        context = diagnostics.DiagnosticsContext(
            E0=breakdown.kinetic + breakdown.internal, rho0=state.rho
        )
    totals = diagnostics.RunningTotals(a1=state.a)
    records = [diagnostics.build_record(state, model, context, totals)]
    first = state
    if observer is not None:
        observer(state)

    logger.info(
        f"Run start: N={config.N}, gamma={model.gamma:.6g}, nu={model.nu:.6g}, "
        f"a0={state.a:.6g}, t_end={config.t_end:.6g}"
    )
    for t_out in output_times(config):
        while state.time < t_out:
            dt = choose_dt(state, model, config)
            landing = t_out - state.time <= dt * (1.0 + 1e-12)
            if landing:
                dt = t_out - state.time
            result = advance(state, model, config, dt, floor)
            previous = state
            state = result.state
            if landing and result.dt == dt:
                state = state.model_copy(update={"time": float(t_out)})

            totals.dissipation_cum += result.dissipation
            totals.weighted_pressure_cum = diagnostics.weighted_pressure_integral(
                totals.weighted_pressure_cum, previous, model.gamma, result.dt
            )
            totals.pressure_time_integral += result.dt * diagnostics.pressure_integral(
                previous, model.gamma
            )
            totals.a1 = max(totals.a1, state.a)
            totals.steps += 1
            totals.rejected_steps += result.rejected

        records.append(diagnostics.build_record(state, model, context, totals))
        if observer is not None:
            observer(state)
        logger.debug(
            f"t={state.time:.6g}: a={state.a:.6g}, E_total={records[-1].E_total:.6g}, "
            f"steps={totals.steps}"
        )

    logger.info(
        f"Run finished: t={state.time:.6g}, steps={totals.steps}, rejected={totals.rejected_steps}, "
        f"a1={totals.a1:.6g}"
    )
    return TimeSeries(
        records=records,
        initial_state=first,
        final_state=state,
        steps=totals.steps,
        rejected_steps=totals.rejected_steps,
    )
