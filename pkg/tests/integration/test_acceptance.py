"""Long acceptance runs of the simulator and its inequality suite

Every test here is marked slow and deselected by default; run with ``pytest -m slow``.
"""

import json

import numpy as np
import pytest

from src.adapter.repositories.csv_run_repository import CsvRunRepository
from src.app.services import diagnostics, lagrangian_integrator
from src.app.services.lagrangian_transform import initial_state
from src.app.use_cases.stationary.build_initial_data import BuildInitialData
from src.app.use_cases.stationary.dtos import InitialDataCommandDTO, InitialKind
from src.cli.app import main
from src.domain.solver_config import SolverConfig
from tests.fixtures.json_loader import TestDataLoader

pytestmark = pytest.mark.slow

# first-order convergence, 10% slack for the preasymptotic regime
FIRST_ORDER_RATIO = 1.8


def _lane_emden_data(model, N: int, amplitude: float = 0.0):
    command = InitialDataCommandDTO(
        kind=InitialKind.LANE_EMDEN, N=N, perturbation_amplitude=amplitude
    )
    return BuildInitialData().build(command, model)


def _simulate(tmp_path_factory, key: str, **overrides) -> str:
    """Simulate a stored configuration into a fresh directory and return the directory."""
    base = tmp_path_factory.mktemp(key)
    config = base / f"{key}.cfg"
    config.write_text(TestDataLoader.config_text(key, **overrides))
    run_dir = str(base / "run")
    assert main(["simulate", str(config), "--output-dir", run_dir]) == 0
    return run_dir


def _verify(run_dir: str, capsys) -> tuple[int, dict]:
    capsys.readouterr()
    status = main(["verify", run_dir])
    report = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    return status, {verdict["name"]: verdict for verdict in report["verdicts"]}


def _energy_defect(records) -> float:
    """Largest |E_total + dissipation_cum - E_total(0)| over the output times."""
    E_total0 = records[0].E_total
    return max(abs(record.E_total + record.dissipation_cum - E_total0) for record in records)


@pytest.fixture(scope="module")
def energy_bound_run(tmp_path_factory):
    return _simulate(tmp_path_factory, "energy_bound_polytrope")


class TestConservationAndGeometry:
    """Test mass and volume bookkeeping over a long stepping sequence"""

    def test_thousand_steps_keep_mass_and_geometry(self, polytrope_gas):
        """
        Given: A slightly perturbed n = 3 polytrope on N = 200 cells
        When: 1000 steps are taken one at a time
        Then: Cell masses never change, the rebuilt total mass stays within 1e-10 and the
              volume relation holds to 1e-12 after every step
        """
        # Arrange
        data = _lane_emden_data(polytrope_gas, 200, amplitude=0.01)
        state = start = initial_state(data, 200)
        config = SolverConfig.for_run(200, 10.0)
        worst_mass, worst_geometry = 0.0, 0.0

        # Act
        for _ in range(1000):
            state, _dt = lagrangian_integrator.step(state, polytrope_gas, config)
            assert np.array_equal(state.cell_mass, start.cell_mass)
            drift = abs(diagnostics.total_mass(state) - start.total_mass) / start.total_mass
            worst_mass = max(worst_mass, drift)
            worst_geometry = max(worst_geometry, state.geometry_residual())

        # Assert
        assert state.time > 0.0
        assert worst_mass <= 1e-10
        assert worst_geometry <= 1e-12


class TestEnergyBound:
    """Test the coercive energy bound on a subcritical polytrope"""

    def test_coercive_bound_holds(self, energy_bound_run, capsys):
        """
        Given: A gamma = 4/3 polytrope with a small velocity perturbation at half the critical mass
        When: It is simulated on N = 400 cells to t = 5
        Then: E_kin + C_gamma int rho^gamma + dissipation stays below 1.01 E0 at every output time
              and every applicable check of verify passes
        """
        # Arrange
        repo = CsvRunRepository(energy_bound_run)

        # Act
        metadata = repo.load_metadata()
        records = repo.load_timeseries()
        status, verdicts = _verify(energy_bound_run, capsys)

        # Assert
        assert metadata.critical.verdict.value == "subcritical"
        assert all(record.C_gamma_bound is not None for record in records)
        assert max(record.C_gamma_bound for record in records) <= 1.01 * metadata.E0
        assert verdicts["coercive_energy_bound"]["passed"] is True
        assert status == 0

    def test_energy_defect_shrinks_under_refinement(self, tmp_path_factory):
        """
        Given: The same run at N = 100 and N = 200 with the time step halved alongside
        When: The discrete energy-identity defect is measured over t in [0, 5]
        Then: It shrinks at first order
        """
        # Arrange
        coarse_dir = _simulate(tmp_path_factory, "energy_bound_polytrope", N=100, dt_max=0.004)
        fine_dir = _simulate(tmp_path_factory, "energy_bound_polytrope", N=200, dt_max=0.002)

        # Act
        coarse = _energy_defect(CsvRunRepository(coarse_dir).load_timeseries())
        fine = _energy_defect(CsvRunRepository(fine_dir).load_timeseries())

        # Assert
        assert fine > 0.0
        assert coarse / fine >= FIRST_ORDER_RATIO


class TestHydrostaticFidelity:
    """Test that Lane-Emden data stays near rest under self-gravity"""

    def test_residual_velocity_converges(self, polytrope_gas):
        """
        Given: Unperturbed Lane-Emden data with gravity on at N = 100, 200 and 400
        When: Each is integrated to t = 1
        Then: max |u| at t = 1 falls at least at first order with each doubling of N
        """
        # Arrange
        peaks = []

        # Act
        for N in (100, 200, 400):
            data = _lane_emden_data(polytrope_gas, N)
            series = lagrangian_integrator.run(data, polytrope_gas, SolverConfig.for_run(N, 1.0))
            peaks.append(float(np.max(np.abs(series.final_state.u))))

        # Assert
        assert peaks[0] / peaks[1] >= FIRST_ORDER_RATIO
        assert peaks[1] / peaks[2] >= FIRST_ORDER_RATIO


class TestTransportEnvelope:
    """Test density envelopes and particle-path bounds on the energy-bound run"""

    def test_no_envelope_or_path_violations(self, energy_bound_run, capsys):
        """
        Given: The N = 400, t = 5 subcritical run
        When: The tracked cells beyond 0.2 M / 4 pi and every particle path are checked
        Then: No output time reports a violation
        """
        # Arrange
        records = CsvRunRepository(energy_bound_run).load_timeseries()

        # Act
        _status, verdicts = _verify(energy_bound_run, capsys)

        # Assert
        assert all(record.envelope_violations == 0 for record in records)
        assert all(record.path_violations == 0 for record in records)
        assert verdicts["transport_envelope"]["applicable"] is True
        assert verdicts["transport_envelope"]["passed"] is True
        assert verdicts["path_bounds"]["passed"] is True


class TestVirialPositivity:
    """Test the Y functional on a strictly subcritical run"""

    def test_Y_positive_and_bounded_below(self, tmp_path_factory, capsys):
        """
        Given: A gamma = 4/3 polytrope rescaled to 0.3 of the critical mass, below M_bar
        When: It is simulated to t = 1 and verified
        Then: Every hard check passes, Y > 0 and Y >= (1+t)^2 E_int (1 - 0.05) at every output
              time, and the running boundary maximum never falls below a0
        """
        # Arrange
        run_dir = _simulate(tmp_path_factory, "subcritical_polytrope")
        repo = CsvRunRepository(run_dir)

        # Act
        status, verdicts = _verify(run_dir, capsys)
        records = repo.load_timeseries()

        # Assert
        assert repo.load_metadata().critical.verdict.value == "strictly-subcritical"
        hard = [verdict for verdict in verdicts.values() if verdict["kind"] == "hard"]
        assert hard and all(verdict["passed"] for verdict in hard)
        assert all(record.Y > 0.0 for record in records)
        assert all(
            record.Y >= (1.0 + record.t) ** 2 * record.E_int * 0.95 for record in records
        )
        assert verdicts["Y_positive"]["passed"] is True
        assert verdicts["Y_lower_bound"]["passed"] is True
        assert records[-1].a1 >= records[0].a
        assert status == 0


class TestExpansionRate:
    """Test the long-time expansion diagnostics at gamma = 4/3"""

    def test_expansion_consistent_with_lower_bound(self, tmp_path_factory, capsys):
        """
        Given: A strictly subcritical gamma = 4/3 polytrope on N = 400 cells run to t = 100
        When: a1(t) is fitted over [20, 100] and the run is verified
        Then: The fitted exponent is nonnegative with target 1/4, the compensated mean pressure
              has a finite sup and every hard check passes
        """
        # Arrange
        run_dir = _simulate(tmp_path_factory, "expansion_rate_polytrope")
        capsys.readouterr()

        # Act
        fit_status = main(["fit-expansion", run_dir, "--t-lo", "20", "--t-hi", "100"])
        fit = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
        _status, verdicts = _verify(run_dir, capsys)

        # Assert
        assert fit_status == 0
        assert fit["samples"] >= 80
        assert fit["beta_hat"] >= 0.0
        assert fit["beta_target"] == pytest.approx(0.25)
        assert np.isfinite(verdicts["compensated_mean_pressure"]["value"])
        hard = [verdict for verdict in verdicts.values() if verdict["kind"] == "hard"]
        assert all(verdict["passed"] for verdict in hard)
