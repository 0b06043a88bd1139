"""Inequality suite evaluated on a persisted run

Hard verdicts must hold for every run. Conditional verdicts apply when the run
carries a critical-mass report whose verdict places it in the matching regime.
Informational verdicts report compensated quantities whose constants are not
computable and never fail a run.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from config import ApplicationConfig
from src.app.services import diagnostics
from src.app.services.expansion_fit import fit_expansion
from src.app.services.mass_bounds import boundary_radius_lower_bound
from src.domain.critical_mass import MassVerdict
from src.domain.diagnostics_record import DiagnosticsRecord
from src.domain.errors import DomainViolation
from src.domain.gas_model import GasModel
from src.domain.run_metadata import RunMetadata
from src.domain.snapshot import Snapshot
from src.domain.verification import Verdict, VerdictKind, VerificationReport

logger = logging.getLogger(__name__)


def _column(records: Sequence[DiagnosticsRecord], name: str) -> np.ndarray:
    return np.array([getattr(record, name) for record in records], dtype=float)


def _hard(name: str, ok: bool, value: float, threshold: float, detail: str = "") -> Verdict:
    return Verdict(
        name=name,
        kind=VerdictKind.HARD,
        passed=bool(ok),
        value=float(value),
        threshold=threshold,
        detail=detail,
    )


def _conditional(
    name: str,
    applicable: bool,
    ok: Optional[bool] = None,
    value: Optional[float] = None,
    threshold: Optional[float] = None,
    detail: str = "",
) -> Verdict:
    return Verdict(
        name=name,
        kind=VerdictKind.CONDITIONAL,
        applicable=applicable,
        passed=bool(ok) if applicable else None,
        value=value if applicable else None,
        threshold=threshold if applicable else None,
        detail=detail,
    )


def _info(name: str, value: Optional[float], detail: str = "") -> Verdict:
    return Verdict(name=name, kind=VerdictKind.INFORMATIONAL, value=value, detail=detail)


def hard_verdicts(
    metadata: RunMetadata, records: Sequence[DiagnosticsRecord], snapshots: Sequence[Snapshot]
) -> list[Verdict]:
    t = _column(records, "t")
    a = _column(records, "a")
    a1 = _column(records, "a1")
    dissipation = _column(records, "dissipation_cum")
    verdicts = []

    steps = np.diff(t)
    verdicts.append(
        _hard("time_monotone", bool(np.all(steps > 0.0)), steps.min() if steps.size else 0.0, 0.0)
    )

    # a1 is the per-step running max, so it may exceed the sampled a but never fall behind it
    lag = float(np.max(a - a1)) if a.size else 0.0
    drops = float(np.min(np.diff(a1))) if a1.size > 1 else 0.0
    verdicts.append(
        _hard(
            "running_max",
            lag <= 0.0 and drops >= 0.0,
            min(-lag, drops),
            0.0,
            detail="a1 nondecreasing and a1 >= a at every output time",
        )
    )

    lowest = min(
        float(_column(records, name).min())
        for name in ("E_kin", "E_int", "E_grav", "dissipation_cum")
    )
    verdicts.append(_hard("nonnegative_energies", lowest >= 0.0, lowest, 0.0))

    growth = float(np.min(np.diff(dissipation))) if dissipation.size > 1 else 0.0
    verdicts.append(_hard("dissipation_monotone", growth >= 0.0, growth, 0.0))

    mass_error = float(np.max(np.abs(_column(records, "mass") - metadata.M)) / metadata.M)
    verdicts.append(
        _hard(
            "mass_conservation",
            mass_error <= ApplicationConfig.MASS_TOLERANCE,
            mass_error,
            ApplicationConfig.MASS_TOLERANCE,
        )
    )

    geometry = max((snapshot.geometry_residual() for snapshot in snapshots), default=0.0)
    verdicts.append(
        _hard(
            "snapshot_geometry",
            geometry <= ApplicationConfig.GEOMETRY_TOLERANCE,
            geometry,
            ApplicationConfig.GEOMETRY_TOLERANCE,
            detail=f"{len(snapshots)} snapshots",
        )
    )

    excess = float(np.max(_column(records, "E_total") + dissipation - metadata.E_total0))
    allowed = ApplicationConfig.ENERGY_TOLERANCE * metadata.energy_scale
    verdicts.append(
        _hard(
            "energy_inequality",
            excess <= allowed,
            excess,
            allowed,
            detail="E_total + dissipation_cum - E_total(0)",
        )
    )
    return verdicts


def conditional_verdicts(
    metadata: RunMetadata, records: Sequence[DiagnosticsRecord]
) -> list[Verdict]:
    verdict = metadata.critical.verdict if metadata.critical is not None else None
    subcritical = verdict is not None and verdict.is_subcritical
    strictly = verdict is MassVerdict.STRICTLY_SUBCRITICAL
    regime = f"mass verdict {verdict.value}" if verdict is not None else "no critical-mass report"
    limit = metadata.E0 * (1.0 + ApplicationConfig.ENERGY_TOLERANCE)
    verdicts = []

    if subcritical and all(record.C_gamma_bound is not None for record in records):
        worst = float(np.max(_column(records, "C_gamma_bound")))
        verdicts.append(_conditional("coercive_energy_bound", True, worst <= limit, worst, limit))
    else:
        verdicts.append(_conditional("coercive_energy_bound", False, detail=regime))

    if strictly:
        worst = float(np.max(_column(records, "strict_bound")))
        verdicts.append(_conditional("strict_energy_bound", True, worst <= limit, worst, limit))

        t = _column(records, "t")
        Y = _column(records, "Y")
        positive = bool(np.all(Y > 0.0))
        verdicts.append(_conditional("Y_positive", True, positive, float(Y.min()), 0.0))
        slack = 1.0 - ApplicationConfig.Y_BOUND_SLACK
        ratio = float(np.min(Y / ((1.0 + t) ** 2 * _column(records, "E_int") * slack)))
        verdicts.append(
            _conditional(
                "Y_lower_bound",
                True,
                ratio >= 1.0,
                ratio,
                1.0,
                detail="min Y / ((1+t)^2 E_int (1 - slack))",
            )
        )
    else:
        for name in ("strict_energy_bound", "Y_positive", "Y_lower_bound"):
            verdicts.append(_conditional(name, False, detail=regime))

    counted = (("transport_envelope", "envelope_violations"), ("path_bounds", "path_violations"))
    for name, column in counted:
        counts = [getattr(record, column) for record in records]
        if subcritical and all(count is not None for count in counts):
            total = int(sum(counts))
            verdicts.append(_conditional(name, True, total == 0, float(total), 0.0))
        else:
            verdicts.append(_conditional(name, False, detail=regime))
    return verdicts


def informational_verdicts(
    metadata: RunMetadata, records: Sequence[DiagnosticsRecord], model: GasModel
) -> list[Verdict]:
    t = _column(records, "t")
    a = _column(records, "a")
    a1 = _column(records, "a1")
    p_int = _column(records, "pressure_integral")
    verdicts = []

    compensated = diagnostics.compensated_mean_pressure(t, _column(records, "mean_pressure"))
    peak = int(np.argmax(compensated))
    verdicts.append(
        _info(
            "compensated_mean_pressure",
            float(compensated[peak]),
            detail=f"sup attained at t={float(t[peak])!r}",
        )
    )
    running = diagnostics.compensated_running_pressure(t, p_int, a1, model.gamma)
    verdicts.append(_info("compensated_running_pressure", float(running.max())))

    weighted = float(records[-1].weighted_pressure_cum)
    verdicts.append(
        _info("weighted_pressure_integral", weighted, detail=f"finite={np.isfinite(weighted)}")
    )

    bounds = np.array(
        [boundary_radius_lower_bound(model.gamma, metadata.M, value) for value in p_int]
    )
    positive = bounds > 0.0
    margin = float(np.min(a[positive] / bounds[positive])) if np.any(positive) else None
    verdicts.append(_info("boundary_radius_lower_bound", margin, detail="min a / a_min"))

    Y0 = records[0].Y
    later = [
        record.Y
        / diagnostics.y_upper_bound(Y0, record.t, record.a, record.pressure_time_integral, model)
        for record in records[1:]
    ]
    verdicts.append(_info("Y_upper_bound", max(later) if later else None, detail="sup Y / bound"))

    stress_residual = float(np.max(np.abs(_column(records, "boundary_stress"))))
    verdicts.append(_info("boundary_stress", stress_residual))

    kinetic_rise = float(np.max(np.diff(_column(records, "E_kin")))) if len(records) > 1 else 0.0
    verdicts.append(
        _info("E_kin_monotone", kinetic_rise, detail=f"nonincreasing={kinetic_rise <= 0.0}")
    )

    try:
        fit = fit_expansion(records, t[0] + 0.5 * (t[-1] - t[0]), t[-1], model.gamma)
        detail = f"beta_target={fit.beta_target!r}, samples={fit.samples}"
        verdicts.append(_info("expansion_fit", fit.beta_hat, detail=detail))
    except DomainViolation as exc:
        verdicts.append(_info("expansion_fit", None, detail=str(exc)))
    return verdicts


def verify_run(
    run_dir: str,
    metadata: RunMetadata,
    records: Sequence[DiagnosticsRecord],
    snapshots: Sequence[Snapshot],
    model: GasModel,
) -> VerificationReport:
    if not records:
        raise DomainViolation("run has no diagnostics records")
    verdicts = (
        hard_verdicts(metadata, records, snapshots)
        + conditional_verdicts(metadata, records)
        + informational_verdicts(metadata, records, model)
    )
    report = VerificationReport(
        run_dir=run_dir,
        mass_verdict=metadata.critical.verdict.value
        if metadata.critical is not None and metadata.critical.verdict is not None
        else None,
        verdicts=verdicts,
    )
    if report.passed:
        logger.info(f"Verification of {run_dir}: {len(verdicts)} verdicts, no failures")
    else:
        logger.warning(f"Verification of {run_dir} failed: {', '.join(report.failures)}")
    return report
