"""Unit tests for the inequality suite"""

import numpy as np
import pytest

from src.app.services import diagnostics, mass_bounds
from src.app.services.verification import (
    conditional_verdicts,
    hard_verdicts,
    informational_verdicts,
    verify_run,
)
from src.domain.critical_mass import MassVerdict
from src.domain.errors import DomainViolation
from src.domain.gas_model import GasModel
from src.domain.verification import VerdictKind
from tests.utils.builders import expanding_records, make_metadata, make_record


def _by_name(verdicts):
    return {verdict.name: verdict for verdict in verdicts}


@pytest.fixture
def gas():
    return GasModel(gamma=4.0 / 3.0, mu=1.0, lambda_=0.0, gravity_enabled=False)


class TestHardVerdicts:
    """Test inequalities that hold for every run"""

    def test_consistent_run_passes(self):
        """
        Given: Records with conserved mass and energy and a growing radius
        When: The hard checks run
        Then: Every hard verdict passes
        """
        # Arrange
        records = expanding_records()

        # Act
        verdicts = hard_verdicts(make_metadata(), records, [])

        # Assert
        assert all(verdict.passed for verdict in verdicts)
        assert {verdict.kind for verdict in verdicts} == {VerdictKind.HARD}

    def test_mass_drift_fails(self):
        """Test that a relative mass change above tolerance fails mass_conservation"""
        # Arrange
        records = expanding_records()
        records[-1] = records[-1].model_copy(update={"mass": 1.0 + 1e-6})

        # Act
        verdicts = _by_name(hard_verdicts(make_metadata(), records, []))

        # Assert
        assert not verdicts["mass_conservation"].passed
        assert verdicts["mass_conservation"].value == pytest.approx(1e-6)

    def test_energy_gain_fails(self):
        """Test that E_total + dissipation rising above E_total(0) fails energy_inequality"""
        # Arrange
        records = expanding_records()
        records[5] = records[5].model_copy(update={"E_total": 1.5})

        # Act
        verdicts = _by_name(hard_verdicts(make_metadata(), records, []))

        # Assert
        assert not verdicts["energy_inequality"].passed

    def test_running_max_behind_radius_fails(self):
        """Test that a1 < a at an output time fails running_max"""
        # Arrange
        records = expanding_records()
        records[3] = records[3].model_copy(update={"a": records[3].a1 + 0.1})

        # Act
        verdicts = _by_name(hard_verdicts(make_metadata(), records, []))

        # Assert
        assert not verdicts["running_max"].passed

    def test_decreasing_dissipation_fails(self):
        """Test that the cumulative dissipation must not decrease"""
        # Arrange
        records = [make_record(t=0.0, dissipation_cum=0.2), make_record(t=1.0, dissipation_cum=0.1)]

        # Act
        verdicts = _by_name(hard_verdicts(make_metadata(), records, []))

        # Assert
        assert not verdicts["dissipation_monotone"].passed


class TestConditionalVerdicts:
    """Test checks gated by the mass verdict"""

    def test_not_applicable_without_report(self):
        """Test that every conditional verdict is skipped without a critical-mass report"""
        # Arrange & Act
        verdicts = conditional_verdicts(make_metadata(), expanding_records())

        # Assert
        assert all(not verdict.applicable for verdict in verdicts)
        assert all(verdict.passed is None for verdict in verdicts)

    def test_strictly_subcritical_run_checks_Y(self):
        """
        Given: A strictly-subcritical report and Y above (1+t)^2 E_int
        When: Conditional checks run
        Then: The strict energy bound and both Y checks apply and pass
        """
        # Arrange
        report = mass_bounds.critical_mass_report(4.0 / 3.0, 1.0, 1.0, M=0.1)
        metadata = make_metadata(critical=report, gravity_enabled=True)
        records = [
            make_record(t=t, Y=2.0 * (1.0 + t) ** 2, E_int=1.0, C_gamma_bound=0.9, strict_bound=0.8,
                        envelope_violations=0, path_violations=0)
            for t in (0.0, 0.5, 1.0)
        ]

        # Act
        verdicts = _by_name(conditional_verdicts(metadata, records))

        # Assert
        assert report.verdict is MassVerdict.STRICTLY_SUBCRITICAL
        for name in ("coercive_energy_bound", "strict_energy_bound", "Y_positive", "Y_lower_bound",
                     "transport_envelope", "path_bounds"):
            assert verdicts[name].applicable
            assert verdicts[name].passed, name

    def test_envelope_violation_fails(self):
        """Test that a nonzero violation count fails transport_envelope"""
        # Arrange
        report = mass_bounds.critical_mass_report(4.0 / 3.0, 1.0, 1.0, M=0.1)
        records = [
            make_record(t=0.0, C_gamma_bound=0.9, envelope_violations=0, path_violations=0),
            make_record(t=1.0, C_gamma_bound=0.9, envelope_violations=2, path_violations=0),
        ]

        # Act
        verdicts = _by_name(conditional_verdicts(make_metadata(critical=report), records))

        # Assert
        assert not verdicts["transport_envelope"].passed
        assert verdicts["path_bounds"].passed


class TestInformationalVerdicts:
    """Test reported-only quantities"""

    def test_expansion_fit_reported(self, gas):
        """Test that the fit over the later half of the run is reported, never failed"""
        # Arrange
        records = expanding_records(count=41, t_end=4.0)

        # Act
        verdicts = _by_name(informational_verdicts(make_metadata(), records, gas))

        # Assert
        assert verdicts["expansion_fit"].value == pytest.approx(0.25, abs=1e-9)
        assert all(verdict.passed is None for verdict in verdicts.values())
        assert verdicts["compensated_mean_pressure"].value == pytest.approx(0.5)

    def test_short_run_reports_missing_fit(self, gas):
        """Test that too few samples leave the fit value empty"""
        # Arrange
        records = expanding_records(count=5)

        # Act
        verdicts = _by_name(informational_verdicts(make_metadata(), records, gas))

        # Assert
        assert verdicts["expansion_fit"].value is None

    def test_compensated_pressure_sups(self, gas):
        """
        Given: Mean pressures whose (1+t) compensation peaks at t = 0.5
        When: The informational verdicts are built
        Then: Both compensated sups come from the diagnostics helpers and the detail
              names the peak time as a plain number
        """
        # Arrange
        times = [0.0, 0.5, 1.0, 1.5, 2.0]
        means = [0.1, 0.3, 0.2, 0.1, 0.05]
        records = [
            make_record(t=t, mean_pressure=p, pressure_integral=0.1) for t, p in zip(times, means)
        ]

        # Act
        verdicts = _by_name(informational_verdicts(make_metadata(), records, gas))

        # Assert
        mean_sup = verdicts["compensated_mean_pressure"]
        assert mean_sup.value == pytest.approx(0.45)
        assert mean_sup.detail == "sup attained at t=0.5"
        assert verdicts["compensated_running_pressure"].value == pytest.approx(
            diagnostics.compensated_running_pressure(2.0, 0.1, 1.0, gas.gamma)
        )


class TestVerifyRun:
    """Test the assembled report"""

    def test_report_passes_for_consistent_run(self, gas):
        """Test that informational entries never fail a report"""
        # Arrange
        records = expanding_records()

        # Act
        report = verify_run("unit", make_metadata(), records, [], gas)

        # Assert
        assert report.passed
        assert report.failures == []
        assert report.mass_verdict is None

    def test_failures_named(self, gas):
        """Test that failing hard verdicts are listed by name"""
        # Arrange
        records = expanding_records()
        records[-1] = records[-1].model_copy(update={"mass": 2.0})

        # Act
        report = verify_run("unit", make_metadata(), records, [], gas)

        # Assert
        assert not report.passed
        assert report.failures == ["mass_conservation"]

    def test_empty_run_rejected(self, gas):
        """Test that a run without records raises DomainViolation"""
        # Arrange & Act & Assert
        with pytest.raises(DomainViolation):
            verify_run("unit", make_metadata(), [], [], gas)


def test_record_helper_is_consistent():
    """Test that the synthetic records carry a nondecreasing running maximum"""
    # Arrange & Act
    records = expanding_records()

    # Assert
    assert np.all(np.diff([record.a1 for record in records]) > 0.0)
