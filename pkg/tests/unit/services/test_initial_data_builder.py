"""Unit tests for the initial-data constructors"""

import numpy as np
import pytest

from src.app.services import initial_data_builder as builder
from src.app.services import mass_bounds
from src.app.services.initial_data_builder import PerturbationMode
from src.app.services.lane_emden_solver import solve_lane_emden
from src.domain.errors import DomainViolation, SupportNotFoundError
from src.domain.gas_model import GasModel


@pytest.fixture
def gravitating_gas():
    return GasModel(gamma=4.0 / 3.0, kappa=1.0, mu=1.0, lambda_=0.0)


class TestHydrostaticData:
    """Test Lane-Emden initial data"""

    def test_hydrostatic_data_at_rest(self, n3_profile, gravitating_gas, test_data):
        """
        Given: The n = 3 profile rescaled to rho_c = 1
        When: Hydrostatic initial data are built with eps = 0
        Then: The fluid is at rest, the boundary is vacuum and M is the polytrope mass
        """
        # Arrange & Act
        data = builder.hydrostatic_initial_data(n3_profile, 1.0, 0.0, gravitating_gas)

        # Assert
        assert np.all(data.u0 == 0.0)
        assert data.rho0[-1] == 0.0
        assert data.rho0[0] == pytest.approx(1.0)
        assert data.a0 == pytest.approx(n3_profile.with_central_density(1.0).physical_radius)
        assert data.M == pytest.approx(test_data.get("polytrope_n3_mass"), rel=1e-3)
        assert data.label == "lane-emden"
        assert data.mass_defect == 0.0

    def test_inner_cutoff_reports_mass_defect(self, n3_profile, gravitating_gas):
        """Test that the excised inner ball's mass is recorded and removed"""
        # Arrange
        full = builder.hydrostatic_initial_data(n3_profile, 1.0, 0.0, gravitating_gas)

        # Act
        cut = builder.hydrostatic_initial_data(n3_profile, 1.0, 0.05, gravitating_gas)

        # Assert
        assert cut.mass_defect == pytest.approx(4.0 * np.pi * 0.05**3 / 3.0, rel=1e-2)
        assert cut.M + cut.mass_defect == pytest.approx(full.M, rel=1e-4)

    def test_residual_converges_at_first_order(self, n3_profile, gravitating_gas):
        """
        Given: The same profile sampled on two grids, one twice as fine
        When: The stationary-balance residual is evaluated
        Then: Halving the spacing roughly halves the residual
        """
        # Arrange & Act
        coarse = builder.hydrostatic_initial_data(n3_profile, 1.0, 0.0, gravitating_gas, points=1001)
        fine = builder.hydrostatic_initial_data(n3_profile, 1.0, 0.0, gravitating_gas, points=2001)

        # Assert
        assert 1.5 < coarse.hydrostatic_residual / fine.hydrostatic_residual < 2.5

    def test_infinite_support_needs_floor(self):
        """Test that the n = 5 profile cannot be used without a truncation floor"""
        # Arrange
        model = GasModel(gamma=1.2, mu=1.0, lambda_=0.0)
        profile = solve_lane_emden(1.2)

        # Act & Assert
        with pytest.raises(DomainViolation, match="truncation"):
            builder.hydrostatic_initial_data(profile, 1.0, 0.0, model)

    def test_infinite_support_truncated_at_floor(self):
        """Test that a floor yields compact data and reports the truncated mass"""
        # Arrange
        model = GasModel(gamma=1.2, mu=1.0, lambda_=0.0)
        profile = solve_lane_emden(1.2)

        # Act
        data = builder.hydrostatic_initial_data(profile, 1.0, 0.0, model, truncation_floor=1e-3)

        # Assert
        assert data.rho0[-1] == 0.0
        assert data.truncated_mass > 0.0
        assert data.M > 0.0

    def test_floor_below_reach_raises_support_not_found(self):
        """Test that an unreachable floor raises SupportNotFoundError"""
        # Arrange
        model = GasModel(gamma=1.2, mu=1.0, lambda_=0.0)
        profile = solve_lane_emden(1.2)

        # Act & Assert
        with pytest.raises(SupportNotFoundError):
            builder.hydrostatic_initial_data(profile, 1.0, 0.0, model, truncation_floor=1e-300)


class TestUniformData:
    """Test the tapered uniform ball"""

    def test_uniform_ball_mass(self, polytrope_gas):
        """
        Given: rho_bar = 2 on [0, 1] with no taper region to speak of
        When: Uniform data are built
        Then: The mass approaches 4 pi rho_bar / 3
        """
        # Arrange & Act
        data = builder.uniform_initial_data(2.0, 1.0, 0.0, polytrope_gas, taper_fraction=1e-3)

        # Assert
        assert data.M == pytest.approx(8.0 * np.pi / 3.0, rel=5e-3)
        assert data.rho0[0] == 2.0
        assert data.rho0[-1] == 0.0

    def test_eps_beyond_taper_rejected(self, polytrope_gas):
        """Test that eps must lie inside the flat region"""
        # Arrange & Act & Assert
        with pytest.raises(DomainViolation):
            builder.uniform_initial_data(1.0, 1.0, 0.99, polytrope_gas)


class TestPerturbation:
    """Test compatible velocity perturbations"""

    @pytest.mark.parametrize("mode", list(PerturbationMode))
    def test_shapes_satisfy_compatibility(self, mode):
        """Test v(eps) = 0 and v'(a0) + 2 v(a0)/a0 = 0 for both shapes"""
        # Arrange
        r = np.linspace(0.1, 2.0, 101)

        # Act
        shape, slope = builder.perturbation_shape(r, 0.1, 2.0, mode)

        # Assert
        assert shape[0] == pytest.approx(0.0, abs=1e-15)
        assert slope + 2.0 * shape[-1] / 2.0 == pytest.approx(0.0, abs=1e-12)

    def test_energy_grows_quadratically_with_amplitude(self, polytrope_gas):
        """
        Given: Uniform data at rest
        When: Perturbed with amplitudes 1 and 3
        Then: E0 - E0(rest) scales with the amplitude squared
        """
        # Arrange
        base = builder.uniform_initial_data(1.0, 1.0, 0.05, polytrope_gas)

        # Act
        unit = builder.perturbed_initial_data(base, 1.0, PerturbationMode.CUBIC, polytrope_gas)
        triple = builder.perturbed_initial_data(base, 3.0, PerturbationMode.CUBIC, polytrope_gas)

        # Assert
        assert triple.E0 - base.E0 == pytest.approx(9.0 * (unit.E0 - base.E0), rel=1e-10)
        assert abs(unit.compatibility_residual) < 1e-10
        assert unit.u0[0] == 0.0

    def test_zero_amplitude_returns_base(self, polytrope_gas):
        """Test that a zero perturbation leaves the data untouched"""
        # Arrange
        base = builder.uniform_initial_data(1.0, 1.0, 0.05, polytrope_gas)

        # Act & Assert
        assert builder.perturbed_initial_data(base, 0.0, PerturbationMode.CUBIC, polytrope_gas) is base


class TestMassRescaling:
    """Test rescaling to a target mass or critical-mass fraction"""

    def test_rescale_to_target_mass(self, polytrope_gas):
        """Test that rescaling hits the requested mass on the same grid"""
        # Arrange
        base = builder.uniform_initial_data(1.0, 1.0, 0.05, polytrope_gas)

        # Act
        scaled = builder.rescale_mass(base, 0.5, polytrope_gas)

        # Assert
        assert scaled.M == pytest.approx(0.5, rel=1e-12)
        np.testing.assert_array_equal(scaled.r, base.r)

    @pytest.mark.parametrize("gamma", [4.0 / 3.0, 1.3])
    def test_fraction_of_critical_mass(self, gamma):
        """
        Given: Hydrostatic data and a requested fraction 0.3 of M_c
        When: mass_for_critical_fraction is applied
        Then: The final M equals 0.3 M_c evaluated at the final E0
        """
        # Arrange
        model = GasModel(gamma=gamma, kappa=1.0, mu=1.0, lambda_=0.0)
        base = builder.hydrostatic_initial_data(solve_lane_emden(gamma), 1.0, 0.0, model)

        # Act
        data = builder.mass_for_critical_fraction(base, model, 1.0, 0.3)

        # Assert
        B = mass_bounds.constant_B(gamma, 1.0)
        assert data.M == pytest.approx(0.3 * mass_bounds.critical_mass(gamma, data.E0, B), rel=1e-8)


class TestProfileData:
    """Test tabulated initial data"""

    def test_one_sided_slope_exact_for_quadratics(self):
        """Test the second-order backward difference on a nonuniform grid"""
        # Arrange
        r = np.array([0.0, 0.3, 0.5, 0.9, 1.0])

        # Act
        slope = builder.one_sided_slope(r, 2.0 * r**2 - r)

        # Assert
        assert slope == pytest.approx(3.0, rel=1e-12)

    def test_tabulated_profile_accepted(self, polytrope_gas):
        """Test that a compatible table at rest becomes initial data"""
        # Arrange
        r = np.linspace(0.0, 1.0, 201)
        rho = 1.0 - r**2

        # Act
        data = builder.profile_initial_data(r, rho, np.zeros_like(r), polytrope_gas)

        # Assert
        assert data.label == "file"
        assert data.M == pytest.approx(4.0 * np.pi * (1.0 / 3.0 - 1.0 / 5.0), rel=1e-3)

    def test_nonvacuum_table_rejected(self, polytrope_gas):
        """Test that a table with rho(a0) != 0 is rejected"""
        # Arrange
        r = np.linspace(0.0, 1.0, 11)

        # Act & Assert
        with pytest.raises(DomainViolation, match="vanish"):
            builder.profile_initial_data(r, np.ones_like(r), np.zeros_like(r), polytrope_gas)
