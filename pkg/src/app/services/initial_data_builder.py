"""Constructors of admissible initial data

All masses and energies use the trapezoid rule in s = r^3/3, which is exact for
piecewise-constant densities and matches the Lagrangian transform's quadrature.
"""

import logging
from enum import Enum
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid
from scipy.optimize import brentq

from config import ApplicationConfig
from src.app.services import mass_bounds
from src.app.services.lane_emden_solver import theta_interpolant
from src.domain.errors import DomainViolation, SupportNotFoundError
from src.domain.gas_model import GasModel
from src.domain.initial_data import InitialData
from src.domain.lane_emden import LaneEmdenProfile

logger = logging.getLogger(__name__)

FOUR_PI = 4.0 * np.pi
DEFECT_POINTS = 129


class PerturbationMode(str, Enum):
    CUBIC = "cubic"
    INTERIOR_BUMP = "interior-bump"


def enclosed_mass_coordinate(r: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """x(r) = int_eps^r rho s^2 ds on the sample grid."""
    return cumulative_trapezoid(rho, r**3 / 3.0, initial=0.0)


def total_mass(r: np.ndarray, rho: np.ndarray) -> float:
    return float(FOUR_PI * trapezoid(rho, r**3 / 3.0))


def initial_energy(r: np.ndarray, rho: np.ndarray, u: np.ndarray, model: GasModel) -> float:
    density = 0.5 * rho * u**2 + model.kappa * rho**model.gamma / (model.gamma - 1.0)
    return float(trapezoid(density, r**3 / 3.0))


def hydrostatic_initial_data(
    profile: LaneEmdenProfile,
    rho_c: float,
    eps: float,
    model: GasModel,
    truncation_floor: Optional[float] = None,
    points: Optional[int] = None,
) -> InitialData:
    """Rescale theta to rho = rho_c theta^n on [eps, a_bar] at rest."""
    points = points or ApplicationConfig.INITIAL_GRID_POINTS
    scaled = profile.with_central_density(rho_c, model.kappa)
    alpha = scaled.alpha
    theta_at = theta_interpolant(scaled)
    n = scaled.n

    # Step 1: support radius (true surface or density-floor truncation)
    floor = 0.0
    if scaled.infinite_support:
        if truncation_floor is None or truncation_floor <= 0.0:
            raise DomainViolation("infinite-support profile needs a positive truncation density floor")
        floor = truncation_floor
        theta_floor = (floor / rho_c) ** (1.0 / n)
        if theta_at(scaled.xi_end) >= theta_floor:
            raise SupportNotFoundError(
                f"density floor {floor!r} not reached before xi={scaled.xi_end!r}",
                reached_xi=scaled.xi_end,
            )
        xi_surface = brentq(lambda xi: float(theta_at(xi)) - theta_floor, 0.0, scaled.xi_end)
    else:
        xi_surface = scaled.xi1
    a_bar = alpha * xi_surface
    if not (0.0 <= eps < a_bar):
        raise DomainViolation(f"eps={eps!r} must lie in [0, {a_bar!r})")

    # Step 2: sample rho on [eps, a_bar]
    r = np.linspace(eps, a_bar, points)
    rho = rho_c * theta_at(r / alpha) ** n - floor
    rho[-1] = 0.0
    rho[:-1] = np.maximum(rho[:-1], np.finfo(float).tiny)
    u = np.zeros_like(r)

    # Step 3: mass bookkeeping
    M = total_mass(r, rho)
    mass_defect = 0.0
    if eps > 0.0:
        inner = np.linspace(0.0, eps, DEFECT_POINTS)
        mass_defect = total_mass(inner, rho_c * theta_at(inner / alpha) ** n - floor)
    truncated = max(0.0, scaled.physical_mass - M - mass_defect) if scaled.infinite_support else 0.0

    residual = hydrostatic_residual(r, rho, model, inner_mass=mass_defect / FOUR_PI)
    logger.info(
        f"Hydrostatic data n={n:.4g}: a0={a_bar:.6g}, M={M:.6g}, residual={residual:.3e}, "
        f"defect={mass_defect:.3e}, truncated={truncated:.3e}"
    )
    return InitialData(
        r=r,
        rho0=rho,
        u0=u,
        boundary_slope=0.0,
        M=M,
        E0=initial_energy(r, rho, u, model),
        compatibility_tolerance=ApplicationConfig.COMPATIBILITY_TOLERANCE,
        label="lane-emden",
        mass_defect=mass_defect,
        truncated_mass=truncated,
        hydrostatic_residual=residual,
    )


def hydrostatic_residual(
    r: np.ndarray, rho: np.ndarray, model: GasModel, inner_mass: float = 0.0
) -> float:
    """max |d(kappa rho^gamma)/dr + 4 pi rho x / r^2| with a forward difference for the pressure."""
    enclosed = inner_mass + enclosed_mass_coordinate(r, rho)
    pressure_gradient = np.diff(model.kappa * rho**model.gamma) / np.diff(r)
    left = slice(0, r.size - 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        gravity = FOUR_PI * rho[left] * enclosed[left] / r[left] ** 2
    balance = pressure_gradient + gravity
    return float(np.max(np.abs(balance[r[left] > 0.0])))


def uniform_initial_data(
    rho_bar: float,
    a0: float,
    eps: float,
    model: GasModel,
    taper_fraction: Optional[float] = None,
    points: Optional[int] = None,
) -> InitialData:
    """Flat density rho_bar with a cosine taper to vacuum over the outer taper_fraction of [0, a0]."""
    taper_fraction = (
        ApplicationConfig.UNIFORM_TAPER_FRACTION if taper_fraction is None else taper_fraction
    )
    points = points or ApplicationConfig.INITIAL_GRID_POINTS
    taper_start = a0 * (1.0 - taper_fraction)
    if rho_bar <= 0.0 or not (0.0 <= eps < taper_start < a0):
        raise DomainViolation(
            f"uniform data needs rho_bar > 0 and 0 <= eps < a0(1 - taper) < a0, "
            f"got rho_bar={rho_bar!r}, eps={eps!r}, a0={a0!r}"
        )
    r = np.linspace(eps, a0, points)
    phase = np.clip((r - taper_start) / (a0 - taper_start), 0.0, 1.0)
    rho = rho_bar * 0.5 * (1.0 + np.cos(np.pi * phase))
    rho[-1] = 0.0
    u = np.zeros_like(r)
    return InitialData(
        r=r,
        rho0=rho,
        u0=u,
        boundary_slope=0.0,
        M=total_mass(r, rho),
        E0=initial_energy(r, rho, u, model),
        compatibility_tolerance=ApplicationConfig.COMPATIBILITY_TOLERANCE,
        label="uniform",
    )


def one_sided_slope(r: np.ndarray, f: np.ndarray) -> float:
    """Second-order backward difference of f at the last grid point (nonuniform spacing)."""
    h1 = r[-2] - r[-3]
    h2 = r[-1] - r[-2]
    return float(
        f[-3] * h2 / (h1 * (h1 + h2))
        - f[-2] * (h1 + h2) / (h1 * h2)
        + f[-1] * (h1 + 2.0 * h2) / (h2 * (h1 + h2))
    )


def profile_initial_data(
    r: np.ndarray,
    rho: np.ndarray,
    u: np.ndarray,
    model: GasModel,
    tolerance: Optional[float] = None,
) -> InitialData:
    """Initial data from tabulated samples; compatibility is checked on a one-sided slope."""
    tolerance = tolerance or ApplicationConfig.FILE_COMPATIBILITY_TOLERANCE
    r = np.asarray(r, dtype=float)
    rho = np.array(rho, dtype=float)
    u = np.array(u, dtype=float)
    scale = max(1.0, float(np.max(np.abs(rho))))
    if abs(rho[-1]) > tolerance * scale:
        raise DomainViolation(f"tabulated density must vanish at the boundary, got {rho[-1]!r}")
    if abs(u[0]) > tolerance * max(1.0, float(np.max(np.abs(u)))):
        raise DomainViolation(f"tabulated velocity must vanish at the inner radius, got {u[0]!r}")
    rho[-1] = 0.0
    u[0] = 0.0
    slope = one_sided_slope(r, u)
    return InitialData(
        r=r,
        rho0=rho,
        u0=u,
        boundary_slope=slope,
        M=total_mass(r, rho),
        E0=initial_energy(r, rho, u, model),
        compatibility_tolerance=tolerance,
        label="file",
    )


def perturbation_shape(
    r: np.ndarray, eps: float, a0: float, mode: PerturbationMode
) -> tuple[np.ndarray, float]:
    """Velocity shape v on the grid and its exact slope at a0.

    Both shapes vanish at eps and satisfy v'(a0) + 2 v(a0)/a0 = 0. The cubic is
    normalised by v(a0) = 1, the interior bump by max v = 1 with v(a0) = v'(a0) = 0.
    """
    length = a0 - eps
    if length <= 0.0:
        raise DomainViolation(f"cannot build a velocity shape on [{eps!r}, {a0!r}]")
    s = r - eps
    if mode is PerturbationMode.CUBIC:
        c3 = -(1.0 / length + 2.0 / a0) / (2.0 * length**2)
        c1 = 1.0 / length - c3 * length**2
        return c1 * s + c3 * s**3, c1 + 3.0 * c3 * length**2
    if mode is PerturbationMode.INTERIOR_BUMP:
        return 27.0 / (4.0 * length**3) * s * (length - s) ** 2, 0.0
    raise DomainViolation(f"unknown perturbation mode {mode!r}")


def perturbed_initial_data(
    base: InitialData,
    velocity_amplitude: float,
    mode: PerturbationMode,
    model: GasModel,
) -> InitialData:
    if velocity_amplitude == 0.0:
        return base
    shape, slope = perturbation_shape(base.r, base.eps, base.a0, PerturbationMode(mode))
    shape[0] = 0.0
    u = base.u0 + velocity_amplitude * shape
    return base.model_copy(
        update={
            "u0": _readonly(u),
            "boundary_slope": base.boundary_slope + velocity_amplitude * slope,
            "E0": initial_energy(base.r, base.rho0, u, model),
        }
    )


def rescale_mass(data: InitialData, target_mass: float, model: GasModel) -> InitialData:
    """Multiply rho0 by target_mass / M on the same grid; velocity is left untouched."""
    if target_mass <= 0.0:
        raise DomainViolation(f"target mass must be positive, got {target_mass!r}")
    factor = target_mass / data.M
    rho = data.rho0 * factor
    return data.model_copy(
        update={
            "rho0": _readonly(rho),
            "M": total_mass(data.r, rho),
            "E0": initial_energy(data.r, rho, data.u0, model),
            "mass_defect": data.mass_defect * factor,
            "truncated_mass": data.truncated_mass * factor,
            "hydrostatic_residual": None,
        }
    )


def mass_for_critical_fraction(
    data: InitialData,
    model: GasModel,
    A_gamma: float,
    fraction: float,
) -> InitialData:
    """Rescale so that M = fraction * M_c(E0(M)) under the configured A_gamma."""
    if fraction <= 0.0:
        raise DomainViolation(f"mass fraction must be positive, got {fraction!r}")
    gamma = mass_bounds.canonical_gamma(model.gamma)
    B = mass_bounds.constant_B(gamma, A_gamma)

    if mass_bounds.is_critical_exponent(gamma):
        return rescale_mass(data, fraction * mass_bounds.critical_mass(gamma, data.E0, B), model)

    # M_c decreases with E0 and E0 increases with M, so the mismatch is monotone in log M
    def mismatch(log_factor: float) -> float:
        candidate = rescale_mass(data, data.M * np.exp(log_factor), model)
        target = fraction * mass_bounds.critical_mass(gamma, candidate.E0, B)
        return np.log(candidate.M) - np.log(target)

    low, high = -1.0, 1.0
    while mismatch(low) > 0.0:
        low *= 2.0
    while mismatch(high) < 0.0:
        high *= 2.0
    log_factor = brentq(mismatch, low, high, xtol=1e-14)
    return rescale_mass(data, data.M * np.exp(log_factor), model)


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array
