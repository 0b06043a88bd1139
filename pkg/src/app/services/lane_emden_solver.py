"""Lane-Emden integrator

Integrates theta'' + (2/xi) theta' + theta^n = 0 from the centre with a series
start, stops at the first zero for n < 5 and records the asymptotic tail otherwise.
"""

import logging
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicHermiteSpline

from config import ApplicationConfig
from src.domain.errors import DomainViolation, SupportNotFoundError
from src.domain.lane_emden import LaneEmdenProfile

logger = logging.getLogger(__name__)

INFINITE_SUPPORT_INDEX = 5.0
RESIDUAL_STEP = 1e-4


def lane_emden_rhs(xi: float, y: np.ndarray, n: float) -> list[float]:
    theta, dtheta = y
    return [dtheta, -2.0 * dtheta / xi - np.clip(theta, 0.0, None) ** n]


def _first_zero(xi: float, y: np.ndarray, n: float) -> float:
    return y[0]


_first_zero.terminal = True
_first_zero.direction = -1


def series_start(xi: float, n: float) -> tuple[float, float]:
    """theta and theta' from the regular expansion about xi = 0."""
    theta = 1.0 - xi**2 / 6.0 + n * xi**4 / 120.0
    dtheta = -xi / 3.0 + n * xi**3 / 30.0
    return theta, dtheta


def solve_lane_emden(
    gamma: float,
    tol: Optional[float] = None,
    rho_c: float = 1.0,
    kappa: float = 1.0,
    xi0: Optional[float] = None,
    xi_max: Optional[float] = None,
    points: Optional[int] = None,
) -> LaneEmdenProfile:
    if not (1.0 < gamma <= 2.0):
        raise DomainViolation(f"Lane-Emden exponent gamma={gamma!r} outside (1, 2]")

    rtol = tol if tol is not None else ApplicationConfig.LANE_EMDEN_RTOL
    atol = min(ApplicationConfig.LANE_EMDEN_ATOL, rtol * 1e-2)
    xi0 = xi0 if xi0 is not None else ApplicationConfig.LANE_EMDEN_XI0
    xi_max = xi_max if xi_max is not None else ApplicationConfig.LANE_EMDEN_XI_MAX
    points = points if points is not None else ApplicationConfig.LANE_EMDEN_POINTS
    n = 1.0 / (gamma - 1.0)

    # Step 1: integrate from the series start
    solution = solve_ivp(
        lane_emden_rhs,
        (xi0, xi_max),
        list(series_start(xi0, n)),
        method="DOP853",
        rtol=rtol,
        atol=atol,
        events=_first_zero,
        dense_output=True,
        args=(n,),
    )
    if solution.status == -1:
        raise SupportNotFoundError(
            f"Lane-Emden integration failed: {solution.message}", reached_xi=float(solution.t[-1])
        )

    # Step 2: locate the surface
    hit_zero = solution.t_events[0].size > 0
    if hit_zero:
        xi1 = float(solution.t_events[0][0])
        surface_slope = float(solution.y_events[0][0][1])
        xi_end = xi1
    elif n < INFINITE_SUPPORT_INDEX:
        raise SupportNotFoundError(
            f"no zero of theta for n={n!r} before xi_max={xi_max!r}",
            reached_xi=float(solution.t[-1]),
        )
    else:
        xi1 = None
        xi_end = float(solution.t[-1])
        surface_slope = float(solution.y[1, -1])
        logger.info(f"Lane-Emden n={n:.4g} has infinite support; tail sampled to xi={xi_end:.4g}")

    # Step 3: sample on a grid (uniform for compact support, geometric for the tail)
    if hit_zero:
        xi = np.linspace(0.0, xi_end, points)
    else:
        xi = np.concatenate(([0.0], np.geomspace(xi0, xi_end, points - 1)))
    theta, dtheta = _evaluate(solution, xi, n, xi0)
    theta[0], dtheta[0] = 1.0, 0.0
    if hit_zero:
        theta[-1], dtheta[-1] = 0.0, surface_slope

    profile = LaneEmdenProfile(
        n=n,
        xi=xi,
        theta=theta,
        dtheta=dtheta,
        xi1=xi1,
        xi_end=xi_end,
        surface_slope=surface_slope,
        rho_c=rho_c,
        kappa=kappa,
        max_residual=_max_residual(solution, xi, n, xi0, xi_end),
    )
    logger.debug(f"Lane-Emden n={n:.6g}: xi1={xi1}, residual={profile.max_residual:.3e}")
    return profile


def _evaluate(solution, xi: np.ndarray, n: float, xi0: float) -> tuple[np.ndarray, np.ndarray]:
    theta = np.empty_like(xi)
    dtheta = np.empty_like(xi)
    inner = xi <= xi0
    theta[inner], dtheta[inner] = series_start(xi[inner], n)
    if np.any(~inner):
        values = solution.sol(xi[~inner])
        theta[~inner], dtheta[~inner] = values[0], values[1]
    return theta, dtheta


def _max_residual(solution, xi: np.ndarray, n: float, xi0: float, xi_end: float) -> float:
    """Sup of |theta'' + 2 theta'/xi + theta^n| with theta'' by central differences of theta'."""
    h = RESIDUAL_STEP
    probe = xi[(xi > xi0 + 10.0 * h) & (xi < xi_end - 2.0 * h)]
    if probe.size == 0:
        return 0.0
    theta, dtheta = solution.sol(probe)
    ddtheta = (solution.sol(probe + h)[1] - solution.sol(probe - h)[1]) / (2.0 * h)
    residual = ddtheta + 2.0 * dtheta / probe + np.clip(theta, 0.0, None) ** n
    return float(np.max(np.abs(residual)))


def theta_interpolant(profile: LaneEmdenProfile):
    """Piecewise-cubic Hermite interpolant of theta, clipped to zero beyond the surface."""
    spline = CubicHermiteSpline(profile.xi, profile.theta, profile.dtheta)

    def theta_at(xi):
        xi = np.asarray(xi, dtype=float)
        values = np.clip(spline(np.minimum(xi, profile.xi_end)), 0.0, None)
        if profile.xi1 is not None:
            values = np.where(xi >= profile.xi1, 0.0, values)
        return values

    return theta_at
