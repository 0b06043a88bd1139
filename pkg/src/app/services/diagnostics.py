"""Monitored functionals of a Lagrangian state

Integrals against r^2 dr are evaluated in mass coordinates where r^2 dr = dx / rho.
Kinetic and gravitational energies use the dual-cell node weights so the
semi-discrete energy identity of the integrator holds exactly; every cell
quantity uses the midpoint rule.
"""

import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np
from pydantic import Field

from src.app.services.constitutive import stress, velocity_divergence
from src.domain.base import DomainModel, FloatArray
from src.domain.diagnostics_record import DiagnosticsRecord, EnergyBreakdown
from src.domain.errors import DomainViolation
from src.domain.gas_model import GasModel
from src.domain.lagrangian_state import LagrangianState

logger = logging.getLogger(__name__)

FOUR_PI = 4.0 * np.pi


def _coupling(model: GasModel) -> float:
    """Gravity terms drop out of every functional when self-gravity is switched off."""
    return 1.0 if model.gravity_enabled else 0.0


# Energies and integrals


def pressure_integral(state: LagrangianState, gamma: float) -> float:
    """int rho^gamma r^2 dr (no kappa)."""
    return float(np.sum(state.rho ** (gamma - 1.0) * state.cell_mass))


def total_mass(state: LagrangianState) -> float:
    """4 pi int rho r^2 dr rebuilt from densities and radii, not from x."""
    return float(FOUR_PI * np.sum(state.rho * state.cell_volume_factor) / 3.0)


def energies(state: LagrangianState, model: GasModel) -> EnergyBreakdown:
    weights = state.node_mass
    kinetic = 0.5 * float(np.sum(weights * state.u[1:] ** 2))
    p_int = pressure_integral(state, model.gamma)
    internal = model.kappa * p_int / (model.gamma - 1.0)
    gravitational = _coupling(model) * FOUR_PI * float(np.sum(weights * state.x[1:] / state.r[1:]))
    return EnergyBreakdown(
        mass=total_mass(state),
        kinetic=kinetic,
        internal=internal,
        gravitational=gravitational,
        pressure_integral=p_int,
    )


def dissipation_rate(
    state: LagrangianState, model: GasModel, u: Optional[np.ndarray] = None
) -> float:
    """nu int (u_r + 2u/r)^2 r^2 dr = nu sum rho ((u r^2)_x)^2 dx."""
    divergence = velocity_divergence(state, u)
    return model.nu * float(np.sum(state.rho * divergence**2 * state.cell_mass))


def dissipation_split(state: LagrangianState, model: GasModel) -> tuple[float, float]:
    """(nu int (u_r^2 + 2u^2/r^2) r^2 dr, 2 nu a u(a)^2) with Eulerian midpoint differences."""
    dr = np.diff(state.r)
    u_r = np.diff(state.u) / dr
    r_c = 0.5 * (state.r[:-1] + state.r[1:])
    u_c = 0.5 * (state.u[:-1] + state.u[1:])
    bulk = model.nu * float(np.sum((u_r**2 * r_c**2 + 2.0 * u_c**2) * dr))
    boundary = 2.0 * model.nu * state.boundary_radius * float(state.u[-1]) ** 2
    return bulk, boundary


def field_integral(state: LagrangianState) -> float:
    """int x^2 / r^2 dr over the support, midpoint rule per cell."""
    dr = np.diff(state.r)
    x_c = 0.5 * (state.x[:-1] + state.x[1:])
    r_c = 0.5 * (state.r[:-1] + state.r[1:])
    return float(np.sum(x_c**2 / r_c**2 * dr))


def gravitational_energy_split(state: LagrangianState) -> tuple[float, float]:
    """Field energy (1/8pi) int r^2 Phi_r^2 dr and exterior term (2 pi/a)(int rho r^2 dr)^2."""
    X = float(state.x[-1])
    return 2.0 * np.pi * field_integral(state), 2.0 * np.pi * X**2 / state.boundary_radius


def mean_pressure(state: LagrangianState, gamma: float) -> float:
    """(1/a^3) int rho^gamma r^2 dr with the integrated boundary radius a."""
    return pressure_integral(state, gamma) / state.a**3


def weighted_pressure_integral(
    accumulator: float, state: LagrangianState, gamma: float, dt: float
) -> float:
    """accumulator + dt int rho^(2 gamma) r^12 dr, exact in r per cell."""
    radii = state.r**13
    return accumulator + dt * float(np.sum(state.rho ** (2.0 * gamma) * np.diff(radii)) / 13.0)


# Virial functionals


def H_functional(state: LagrangianState, model: GasModel, t: float) -> float:
    """Virial functional

    int (r-(1+t)u)^2 rho r^2 dr + (2/(g-1))(1+t)^2 int P r^2 dr
    - (1+t)^2 int (4 pi/r^2) x^2 dr
    """
    growth = 1.0 + t
    weights = state.node_mass
    virial = float(np.sum(weights * (state.r[1:] - growth * state.u[1:]) ** 2))
    pressure_term = 2.0 * model.kappa * pressure_integral(state, model.gamma) / (model.gamma - 1.0)
    return virial + growth**2 * (pressure_term - _coupling(model) * FOUR_PI * field_integral(state))


def H_expanded(state: LagrangianState, model: GasModel, t: float) -> float:
    """The same functional with the square multiplied out."""
    growth = 1.0 + t
    weights = state.node_mass
    r, u = state.r[1:], state.u[1:]
    moment = float(np.sum(weights * r**2))
    flux = float(np.sum(weights * r * u))
    kinetic = float(np.sum(weights * u**2))
    pressure_term = 2.0 * model.kappa * pressure_integral(state, model.gamma) / (model.gamma - 1.0)
    return moment - 2.0 * growth * flux + growth**2 * (
        kinetic + pressure_term - _coupling(model) * FOUR_PI * field_integral(state)
    )


def Y_functional(
    state: LagrangianState, model: GasModel, t: float, H: Optional[float] = None
) -> float:
    """Y = H - (M^2 / 4 pi)(1+t)^2 / a."""
    H = H_functional(state, model, t) if H is None else H
    X = float(state.x[-1])
    return H - _coupling(model) * FOUR_PI * X**2 * (1.0 + t) ** 2 / state.a


def y_upper_bound(
    Y0: float, t: float, a: float, pressure_time_integral: float, model: GasModel
) -> float:
    growth = 1.0 + t
    return (
        growth * Y0
        + 2.0 * model.nu * growth * a**3
        + 2.0 * (4.0 - 3.0 * model.gamma) / (model.gamma - 1.0) * growth * pressure_time_integral
    )


def compensated_mean_pressure(t, mean_p):
    """(1+t) times the mean pressure; scalars or arrays."""
    return (1.0 + t) * mean_p


def compensated_running_pressure(t, p_int, a1, gamma: float):
    """(1+t)^(6g-7) a1^-3 int rho^gamma r^2 dr."""
    return (1.0 + t) ** (6.0 * gamma - 7.0) * p_int / a1**3


# Transport envelopes and particle-path bounds


def _log_envelope_constants(
    x, T: float, model: GasModel, E0: float, M: float, C_gamma: float, rho0_max: float
):
    g = model.gamma
    x = np.asarray(x, dtype=float)
    ratio = E0 / C_gamma
    C = (
        2.0 * C_gamma ** (-2.0 / (3.0 * (g - 1.0))) * np.sqrt(M / np.pi)
        * E0 ** ((3.0 * g + 1.0) / (6.0 * (g - 1.0))) * x ** (-2.0 * g / (3.0 * (g - 1.0)))
        + 4.0 * T * ratio ** (g / (g - 1.0)) * x ** (-g / (g - 1.0))
        + M**2 / FOUR_PI * T * ratio ** (4.0 / (3.0 * (g - 1.0)))
        * x ** (-4.0 * g / (3.0 * (g - 1.0)))
    )
    with np.errstate(divide="ignore"):
        log_tail = np.log(T) + g * np.log(rho0_max) + g * C / model.nu
    log_c = np.logaddexp(np.log(C), log_tail)
    return C, log_c


def envelope_constants(
    x, T: float, model: GasModel, E0: float, M: float, C_gamma: float, rho0_max: float
):
    """(C_{x,T}, c_{x,T}); c overflows to inf for tiny x."""
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr <= 0.0):
        raise DomainViolation("envelope constants diverge at x <= 0")
    if C_gamma <= 0.0:
        raise DomainViolation(f"envelope needs a positive coercivity constant, got {C_gamma!r}")
    C, log_c = _log_envelope_constants(x_arr, T, model, E0, M, C_gamma, rho0_max)
    with np.errstate(over="ignore"):
        c = np.exp(log_c)
    if c.ndim == 0:
        return float(C), float(c)
    return C, c


def transport_envelope(
    x_node,
    T: float,
    model: GasModel,
    E0: float,
    M: float,
    C_gamma: float,
    rho0_at_node,
    rho0_max: Optional[float] = None,
):
    """[rho0 exp(-c/nu), rho0 exp(C/nu)] for the particle starting with density rho0 at x."""
    rho0 = np.asarray(rho0_at_node, dtype=float)
    rho0_max = float(np.max(rho0)) if rho0_max is None else rho0_max
    C, c = envelope_constants(x_node, T, model, E0, M, C_gamma, rho0_max)
    with np.errstate(over="ignore"):
        lower = rho0 * np.exp(-np.asarray(c) / model.nu)
        upper = rho0 * np.exp(np.asarray(C) / model.nu)
    if lower.ndim == 0:
        return float(lower), float(upper)
    return lower, upper


def envelope_violations(
    state: LagrangianState,
    rho0: np.ndarray,
    model: GasModel,
    E0: float,
    C_gamma: float,
    x_min: float,
    rho0_max: Optional[float] = None,
) -> int:
    """Cells centred at x >= x_min whose density left its transport envelope by T = state.time."""
    centres = 0.5 * (state.x[:-1] + state.x[1:])
    tracked = centres >= max(x_min, np.finfo(float).tiny)
    if not np.any(tracked):
        return 0
    rho0 = np.asarray(rho0, dtype=float)
    rho0_max = float(np.max(rho0)) if rho0_max is None else rho0_max
    C, log_c = _log_envelope_constants(
        centres[tracked], state.time, model, E0, state.total_mass, C_gamma, rho0_max
    )
    log_rho0 = np.log(rho0[tracked])
    with np.errstate(over="ignore"):
        log_lower = log_rho0 - np.exp(log_c) / model.nu
    log_upper = log_rho0 + C / model.nu
    log_rho = np.log(state.rho[tracked])
    count = int(np.sum((log_rho < log_lower) | (log_rho > log_upper)))
    if count:
        logger.warning(f"{count} cells outside the transport envelope at t={state.time:.6g}")
    return count


class PathBoundReport(NamedTuple):
    node_violations: int
    pair_violations: int
    worst_ratio: float  # smallest observed/bound over the checked nodes

    @property
    def total(self) -> int:
        return self.node_violations + self.pair_violations


def path_lower_bounds(
    state: LagrangianState,
    E0: float,
    C_gamma: float,
    gamma: float,
    strides: Sequence[int] = (1,),
    rtol: float = 1e-12,
) -> PathBoundReport:
    """Particle-path lower bounds with K = E0/C_gamma

    r(x) >= K^(-1/(3(g-1))) x^(g/(3(g-1)))
    r^3(x2) - r^3(x1) >= K^(-1/(g-1)) (x2-x1)^(g/(g-1))
    """
    if C_gamma <= 0.0:
        raise DomainViolation(f"path bounds need a positive coercivity constant, got {C_gamma!r}")
    ratio = E0 / C_gamma
    power = 1.0 / (3.0 * (gamma - 1.0))
    node_bound = ratio ** (-power) * state.x ** (gamma * power)
    node_bad = int(np.sum(state.r < node_bound * (1.0 - rtol)))
    positive = node_bound > 0.0
    worst = float(np.min(state.r[positive] / node_bound[positive])) if np.any(positive) else np.inf

    cubes = state.r**3
    pair_bad = 0
    for stride in strides:
        if stride >= state.x.size:
            continue
        gap = state.x[stride:] - state.x[:-stride]
        bound = ratio ** (-1.0 / (gamma - 1.0)) * gap ** (gamma / (gamma - 1.0))
        pair_bad += int(np.sum(cubes[stride:] - cubes[:-stride] < bound * (1.0 - rtol)))
    return PathBoundReport(node_violations=node_bad, pair_violations=pair_bad, worst_ratio=worst)


# Per-output-time records


class DiagnosticsContext(DomainModel):
    """Run-wide inputs of the inequality checks, fixed at t = 0."""

    E0: float = Field(..., gt=0.0, description="Discrete kinetic plus internal energy at t = 0")
    rho0: FloatArray = Field(..., description="Initial cell densities (particle labels)")
    x_min: float = Field(default=0.0, ge=0.0, description="Smallest tracked mass coordinate")
    C_gamma: Optional[float] = Field(
        default=None, description="Coercivity constant when bounds apply"
    )
    check_bounds: bool = Field(default=False, description="Evaluate envelope and path bounds")
    path_strides: tuple[int, ...] = (1,)

    @property
    def rho0_max(self) -> float:
        return float(np.max(self.rho0))


@dataclass
class RunningTotals:
    """Time integrals accumulated over accepted steps."""

    dissipation_cum: float = 0.0
    weighted_pressure_cum: float = 0.0
    pressure_time_integral: float = 0.0
    a1: float = 0.0
    steps: int = 0
    rejected_steps: int = 0


def build_record(
    state: LagrangianState,
    model: GasModel,
    context: DiagnosticsContext,
    totals: RunningTotals,
) -> DiagnosticsRecord:
    t = state.time
    breakdown = energies(state, model)
    H = H_functional(state, model, t)
    p_int = breakdown.pressure_integral

    strict_bound = breakdown.kinetic + p_int / (2.0 * (model.gamma - 1.0)) + totals.dissipation_cum
    envelope_count, path_count, C_gamma_bound = None, None, None
    if context.C_gamma is not None and context.C_gamma > 0.0:
        C_gamma_bound = breakdown.kinetic + context.C_gamma * p_int + totals.dissipation_cum
        if context.check_bounds:
            envelope_count = envelope_violations(
                state,
                context.rho0,
                model,
                context.E0,
                context.C_gamma,
                context.x_min,
                context.rho0_max,
            )
            path_count = path_lower_bounds(
                state, context.E0, context.C_gamma, model.gamma, context.path_strides
            ).total

    return DiagnosticsRecord(
        t=t,
        a=state.a,
        a1=max(totals.a1, state.a),
        mass=breakdown.mass,
        E_total=breakdown.total,
        E_kin=breakdown.kinetic,
        E_int=breakdown.internal,
        E_grav=breakdown.gravitational,
        dissipation_cum=totals.dissipation_cum,
        H=H,
        Y=Y_functional(state, model, t, H),
        mean_pressure=mean_pressure(state, model.gamma),
        weighted_pressure_cum=totals.weighted_pressure_cum,
        pressure_integral=p_int,
        pressure_time_integral=totals.pressure_time_integral,
        dissipation_rate=dissipation_rate(state, model),
        envelope_violations=envelope_count,
        path_violations=path_count,
        boundary_gap=state.boundary_gap(),
        boundary_stress=float(stress(state, model).F[-1]),
        C_gamma_bound=C_gamma_bound,
        strict_bound=strict_bound,
    )
