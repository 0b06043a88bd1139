"""Log-log fit of the running maximum of the boundary radius."""

import logging
from typing import Optional, Sequence, Union

import numpy as np

from config import ApplicationConfig
from src.app.services.mass_bounds import is_critical_exponent
from src.domain.diagnostics_record import DiagnosticsRecord, ExpansionFit, TimeSeries
from src.domain.errors import DomainViolation

logger = logging.getLogger(__name__)


def target_exponent(gamma: float) -> float:
    """(6 gamma - 7) / (3 gamma); equals 1/4 at gamma = 4/3."""
    if is_critical_exponent(gamma):
        return 0.25
    return (6.0 * gamma - 7.0) / (3.0 * gamma)


def subsequence_band(gamma: float) -> Optional[tuple[float, float]]:
    if is_critical_exponent(gamma) or gamma > 4.0 / 3.0:
        return None
    return 2.0 * (4.0 - 3.0 * gamma) / 3.0, 1.0 / (3.0 * gamma)


def fit_expansion(
    series: Union[TimeSeries, Sequence[DiagnosticsRecord]],
    t_lo: float,
    t_hi: float,
    gamma: Optional[float] = None,
    min_samples: Optional[int] = None,
) -> ExpansionFit:
    records = series.records if isinstance(series, TimeSeries) else list(series)
    times = np.array([record.t for record in records])
    running = np.array([record.a1 for record in records])
    return fit_power_law(times, running, t_lo, t_hi, gamma, min_samples)


def fit_power_law(
    times: np.ndarray,
    values: np.ndarray,
    t_lo: float,
    t_hi: float,
    gamma: Optional[float] = None,
    min_samples: Optional[int] = None,
) -> ExpansionFit:
    """Least-squares slope of log(values) against log(1 + t) on [t_lo, t_hi]."""
    min_samples = min_samples or ApplicationConfig.MIN_FIT_SAMPLES
    if not t_lo < t_hi:
        raise DomainViolation(f"fit window needs t_lo < t_hi, got [{t_lo!r}, {t_hi!r}]")
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    window = (times >= t_lo) & (times <= t_hi)
    samples = int(np.sum(window))
    if samples < min_samples:
        raise DomainViolation(
            f"fit window [{t_lo!r}, {t_hi!r}] holds {samples} samples, need at least {min_samples}"
        )
    if np.any(values[window] <= 0.0):
        raise DomainViolation("boundary radii must be positive for a log-log fit")

    log_t = np.log1p(times[window])
    log_a = np.log(values[window])
    slope, intercept = np.polyfit(log_t, log_a, 1)
    residual = float(np.sqrt(np.mean((log_a - (slope * log_t + intercept)) ** 2)))

    fit = ExpansionFit(
        t_lo=t_lo,
        t_hi=t_hi,
        samples=samples,
        beta_hat=float(slope),
        beta_target=target_exponent(gamma) if gamma is not None else None,
        residual=residual,
        beta_band=subsequence_band(gamma) if gamma is not None else None,
    )
    logger.info(f"Expansion fit on [{t_lo:g}, {t_hi:g}]: beta_hat={fit.beta_hat:.6f} ({samples} samples)")
    return fit
