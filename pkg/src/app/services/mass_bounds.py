"""Critical-mass algebra

Closed-form constants separating the coercive (sub-critical) regime from the
supercritical one: B, f(s), s*, M_c, M_bar, C_gamma and the admissible (l, alpha)
pair. Every formula assumes the pressure constant kappa equals one.
"""

import logging
from typing import Optional, Union

import numpy as np
from scipy.integrate import cumulative_trapezoid, simpson

from config import ApplicationConfig
from src.domain.critical_mass import CriticalMassReport, EnergyPartition, MassVerdict
from src.domain.errors import DomainViolation
from src.domain.gas_model import THEOREM_GAMMA_HIGH, THEOREM_GAMMA_LOW, GasModel
from src.domain.initial_data import InitialData
from src.domain.lagrangian_state import LagrangianState

logger = logging.getLogger(__name__)

FOUR_PI = 4.0 * np.pi


def is_critical_exponent(gamma: float) -> bool:
    return abs(gamma - THEOREM_GAMMA_HIGH) <= ApplicationConfig.GAMMA_SNAP_TOLERANCE


def canonical_gamma(gamma: float) -> float:
    """Validate gamma against (6/5, 4/3] and snap values within tolerance of 4/3."""
    if is_critical_exponent(gamma):
        return THEOREM_GAMMA_HIGH
    if not (THEOREM_GAMMA_LOW < gamma < THEOREM_GAMMA_HIGH):
        raise DomainViolation(f"gamma={gamma!r} outside the critical-mass range (6/5, 4/3]")
    return gamma


def constant_B(gamma: float, A_gamma: float) -> float:
    gamma = canonical_gamma(gamma)
    if A_gamma < 0.0:
        raise DomainViolation(f"A_gamma must be nonnegative, got {A_gamma!r}")
    exponent = 1.0 / (3.0 * (gamma - 1.0))
    bracket = FOUR_PI ** (-2.0 / 3.0) / (2.0 * np.cbrt(3.0)) + A_gamma / (8.0 * np.pi)
    return FOUR_PI**exponent * bracket


def _mass_exponent(gamma: float) -> float:
    return (5.0 * gamma - 6.0) / (3.0 * (gamma - 1.0))


def f_of_s(s, gamma: float, M: float, B: float):
    """f(s) = s/(gamma-1) - B M^((5g-6)/(3(g-1))) s^(1/(3(g-1))); vectorised in s."""
    gamma = canonical_gamma(gamma)
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < 0.0):
        raise DomainViolation(f"s must be nonnegative, got {s_arr.min()!r}")
    value = s_arr / (gamma - 1.0) - B * M ** _mass_exponent(gamma) * s_arr ** (
        1.0 / (3.0 * (gamma - 1.0))
    )
    return float(value) if value.ndim == 0 else value


def f_prime(s, gamma: float, M: float, B: float):
    gamma = canonical_gamma(gamma)
    q = 1.0 / (3.0 * (gamma - 1.0))
    s_arr = np.asarray(s, dtype=float)
    value = 1.0 / (gamma - 1.0) - B * M ** _mass_exponent(gamma) * q * s_arr ** (q - 1.0)
    return float(value) if value.ndim == 0 else value


def _subcritical_gamma(gamma: float) -> float:
    gamma = canonical_gamma(gamma)
    if gamma == THEOREM_GAMMA_HIGH:
        raise DomainViolation("s* is undefined at gamma = 4/3; use the closed-form M_c branch")
    return gamma


def s_star(gamma: float, M: float, B: float) -> float:
    gamma = _subcritical_gamma(gamma)
    denominator = 4.0 - 3.0 * gamma
    B_term = (B / 3.0) ** (-3.0 * (gamma - 1.0) / denominator)
    return float(B_term * M ** (-(5.0 * gamma - 6.0) / denominator))


def f_at_s_star(gamma: float, M: float, B: float) -> float:
    """Closed form ((4-3g)/(g-1)) (B/3)^(-3(g-1)/(4-3g)) M^(-(5g-6)/(4-3g))."""
    gamma = _subcritical_gamma(gamma)
    return (4.0 - 3.0 * gamma) / (gamma - 1.0) * s_star(gamma, M, B)


def _mass_threshold(gamma: float, energy: float, B: float) -> float:
    denominator = 4.0 - 3.0 * gamma
    base = (4.0 - 3.0 * gamma) / (gamma - 1.0) * (B / 3.0) ** (-3.0 * (gamma - 1.0) / denominator)
    exponent = denominator / (5.0 * gamma - 6.0)
    return float(base**exponent * energy ** (-exponent))


def critical_mass(gamma: float, E0: float, B: float) -> float:
    gamma = canonical_gamma(gamma)
    if E0 <= 0.0 or B <= 0.0:
        raise DomainViolation(f"E0 and B must be positive, got E0={E0!r}, B={B!r}")
    if gamma == THEOREM_GAMMA_HIGH:
        return float((3.0 / B) ** 1.5)
    return _mass_threshold(gamma, E0, B)


def m_bar(gamma: float, E0: float, B: float, l: Optional[float] = None) -> float:
    gamma = canonical_gamma(gamma)
    if E0 <= 0.0 or B <= 0.0:
        raise DomainViolation(f"E0 and B must be positive, got E0={E0!r}, B={B!r}")
    if gamma == THEOREM_GAMMA_HIGH:
        return float((3.0 / (2.0 * B)) ** 1.5)
    if l is None or l <= 1.0:
        raise DomainViolation(f"l must exceed 1, got {l!r}")
    value = _mass_threshold(gamma, l * E0, B)
    if value >= critical_mass(gamma, E0, B):
        raise DomainViolation(f"M_bar={value!r} is not below M_c for l={l!r}")
    return value


def coercivity_value(gamma: float, B: float, M: float) -> float:
    """C_gamma without the positivity check; negative values mark supercritical masses at 4/3."""
    gamma = canonical_gamma(gamma)
    if gamma < THEOREM_GAMMA_HIGH:
        return (4.0 - 3.0 * gamma) / (gamma - 1.0)
    return 3.0 - B * M ** (2.0 / 3.0)


def coercivity_constant(gamma: float, B: float, M: float) -> float:
    value = coercivity_value(gamma, B, M)
    if value <= 0.0:
        raise DomainViolation(f"C_gamma = 3 - B M^(2/3) = {value!r} is not positive")
    return value


def _concavity_power(gamma: float) -> float:
    return (4.0 - 3.0 * gamma) / (3.0 * (gamma - 1.0))


def max_admissible_alpha(gamma: float) -> float:
    """Largest alpha in (0, 1) with alpha^((4-3g)/(3(g-1))) <= 1/2."""
    return float(2.0 ** (-1.0 / _concavity_power(_subcritical_gamma(gamma))))


def admissible_alpha(gamma: float, l: float, alpha: Optional[float] = None) -> float:
    gamma = _subcritical_gamma(gamma)
    if l <= 1.0:
        raise DomainViolation(f"l must exceed 1, got {l!r}")
    alpha_max = max_admissible_alpha(gamma)
    chosen = alpha_max if alpha is None else alpha
    if not (0.0 < chosen < 1.0):
        raise DomainViolation(f"alpha={chosen!r} outside (0, 1)")
    if chosen ** _concavity_power(gamma) > 0.5 * (1.0 + 1e-12):
        raise DomainViolation(f"alpha={chosen!r} violates alpha^p <= 1/2")
    if chosen * l < 1.0 * (1.0 - 1e-12):
        raise DomainViolation(f"alpha*l = {chosen * l!r} < 1 for l={l!r}, alpha={chosen!r}")
    return chosen


def default_l(gamma: float) -> float:
    """DEFAULT_L unless that is too small for any admissible alpha."""
    gamma = _subcritical_gamma(gamma)
    required = 1.0 / max_admissible_alpha(gamma)
    if required > ApplicationConfig.DEFAULT_L:
        logger.warning(
            f"l={ApplicationConfig.DEFAULT_L} admits no alpha at gamma={gamma:.6g}; using l={required:.6g}"
        )
    return max(ApplicationConfig.DEFAULT_L, required)


def classify_mass(M: float, M_bar: float, M_c: float) -> MassVerdict:
    if M < M_bar:
        return MassVerdict.STRICTLY_SUBCRITICAL
    if M < M_c:
        return MassVerdict.SUBCRITICAL
    return MassVerdict.SUPERCRITICAL


def critical_mass_report(
    gamma: float,
    E0: float,
    A_gamma: float,
    M: Optional[float] = None,
    l: Optional[float] = None,
    alpha: Optional[float] = None,
) -> CriticalMassReport:
    gamma = canonical_gamma(gamma)
    B = constant_B(gamma, A_gamma)
    M_c = critical_mass(gamma, E0, B)

    if gamma == THEOREM_GAMMA_HIGH:
        l_used, alpha_used, star, f_star = l, None, None, None
        M_bar = m_bar(gamma, E0, B)
    else:
        l_used = l if l is not None else default_l(gamma)
        alpha_used = admissible_alpha(gamma, l_used, alpha)
        M_bar = m_bar(gamma, E0, B, l_used)
        star = s_star(gamma, M, B) if M is not None else None
        f_star = f_at_s_star(gamma, M, B) if M is not None else None

    C_gamma, verdict = None, None
    if M is not None:
        C_gamma = coercivity_value(gamma, B, M)
        verdict = classify_mass(M, M_bar, M_c)

    return CriticalMassReport(
        gamma=gamma,
        A_gamma=A_gamma,
        B=B,
        E0=E0,
        M=M,
        C_gamma=C_gamma,
        s_star=star,
        f_at_s_star=f_star,
        M_c=M_c,
        M_bar=M_bar,
        l=l_used,
        alpha=alpha_used,
        verdict=verdict,
    )


def eulerian_energy_integrals(
    r: np.ndarray, rho: np.ndarray, model: GasModel
) -> tuple[float, float, float]:
    """(int rho^gamma r^2 dr, internal energy, 4 pi int rho r x dr) by Simpson quadrature."""
    r = np.asarray(r, dtype=float)
    rho = np.asarray(rho, dtype=float)
    enclosed = cumulative_trapezoid(rho, r**3 / 3.0, initial=0.0)
    pressure_integral = float(simpson(rho**model.gamma * r**2, x=r))
    gravitational = float(FOUR_PI * simpson(rho * r * enclosed, x=r))
    internal = model.kappa * pressure_integral / (model.gamma - 1.0)
    return pressure_integral, internal, gravitational


def energy_partition_check(
    profile: Union[InitialData, LagrangianState, tuple[np.ndarray, np.ndarray]],
    model: GasModel,
    B: float,
    M: Optional[float] = None,
) -> EnergyPartition:
    if isinstance(profile, LagrangianState):
        from src.app.services.diagnostics import energies

        breakdown = energies(profile, model)
        pressure_integral = breakdown.pressure_integral
        internal, gravitational = breakdown.internal, breakdown.gravitational
        mass = profile.total_mass if M is None else M
    elif isinstance(profile, InitialData):
        pressure_integral, internal, gravitational = eulerian_energy_integrals(
            profile.r, profile.rho0, model
        )
        mass = profile.M if M is None else M
    else:
        r, rho = (np.asarray(column, dtype=float) for column in profile)
        pressure_integral, internal, gravitational = eulerian_energy_integrals(r, rho, model)
        enclosed = cumulative_trapezoid(rho, r**3 / 3.0, initial=0.0)
        mass = FOUR_PI * float(enclosed[-1]) if M is None else M

    margin = internal - gravitational
    C_gamma = None
    subcritical = None
    upper = THEOREM_GAMMA_HIGH + ApplicationConfig.GAMMA_SNAP_TOLERANCE
    if THEOREM_GAMMA_LOW < model.gamma <= upper:
        C_gamma = coercivity_value(model.gamma, B, mass)
        subcritical = bool(margin >= C_gamma * pressure_integral)
    strictly = bool(margin >= pressure_integral / (2.0 * (model.gamma - 1.0)))

    return EnergyPartition(
        pressure_integral=pressure_integral,
        internal_energy=internal,
        gravitational_energy=gravitational,
        C_gamma=C_gamma,
        subcritical_holds=subcritical,
        strictly_subcritical_holds=strictly,
    )


def boundary_radius_lower_bound(gamma: float, M: float, pressure_integral: float) -> float:
    """Smallest a compatible with mass M and int rho^gamma r^2 dr by Hoelder's inequality."""
    if pressure_integral <= 0.0:
        return 0.0
    return float(
        ((M / FOUR_PI) ** gamma * 3.0 ** (gamma - 1.0) / pressure_integral)
        ** (1.0 / (3.0 * (gamma - 1.0)))
    )
