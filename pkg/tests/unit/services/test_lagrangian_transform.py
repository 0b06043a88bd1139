"""Unit tests for the Eulerian <-> Lagrangian transform"""

import numpy as np
import pytest

from src.app.services.initial_data_builder import total_mass, uniform_initial_data
from src.app.services.lagrangian_transform import (
    eulerian_to_lagrangian,
    initial_state,
    lagrangian_to_eulerian,
    mass_coordinates,
)
from src.domain.errors import DomainViolation


class TestEulerianToLagrangian:
    """Test the equal-mass node grid"""

    def test_uniform_density_is_exact(self):
        """
        Given: A constant density 2 on [0.5, 2]
        When: The profile is moved to 40 equal-mass cells
        Then: Every cell density is 2 and the outer node sits at r = 2
        """
        # Arrange
        r = np.linspace(0.5, 2.0, 201)
        rho = np.full_like(r, 2.0)

        # Act
        state = eulerian_to_lagrangian(r, rho, np.zeros_like(r), 40)

        # Assert
        np.testing.assert_allclose(state.rho, 2.0, rtol=1e-12)
        assert state.r[-1] == pytest.approx(2.0, rel=1e-14)
        assert state.eps_radius == 0.5
        assert state.total_mass == pytest.approx(4.0 * np.pi * 2.0 * (8.0 - 0.125) / 3.0, rel=1e-12)

    def test_cells_carry_equal_mass(self, polytrope_gas):
        """Test that every cell holds X / N of the mass coordinate"""
        # Arrange
        data = uniform_initial_data(1.0, 1.0, 0.05, polytrope_gas)

        # Act
        state = initial_state(data, 50)

        # Assert
        np.testing.assert_allclose(np.diff(state.x), state.x[-1] / 50, rtol=1e-10)
        assert state.total_mass == pytest.approx(total_mass(data.r, data.rho0), rel=1e-12)
        assert state.geometry_residual() < 1e-12

    def test_velocity_interpolated_with_pinned_centre(self):
        """Test that node velocities follow u(r) and u[0] = 0"""
        # Arrange
        r = np.linspace(0.1, 1.0, 101)
        rho = np.ones_like(r)
        u = 0.5 * (r - 0.1)

        # Act
        state = eulerian_to_lagrangian(r, rho, u, 20)

        # Assert
        assert state.u[0] == 0.0
        np.testing.assert_allclose(state.u, 0.5 * (state.r - 0.1), atol=1e-12)

    def test_outer_density_floor(self, polytrope_gas):
        """Test that a floor lifts the outer cell density only"""
        # Arrange
        data = uniform_initial_data(1.0, 1.0, 0.05, polytrope_gas)
        plain = initial_state(data, 16)

        # Act
        floored = initial_state(data, 16, density_floor=10.0 * plain.rho[-1])

        # Assert
        assert floored.rho[-1] == pytest.approx(10.0 * plain.rho[-1])
        np.testing.assert_array_equal(floored.rho[:-1], plain.rho[:-1])

    def test_massless_profile_rejected(self):
        """Test that a profile without mass raises DomainViolation"""
        # Arrange
        r = np.linspace(0.0, 1.0, 11)

        # Act & Assert
        with pytest.raises(DomainViolation):
            eulerian_to_lagrangian(r, np.zeros_like(r), np.zeros_like(r), 8)


class TestLagrangianToEulerian:
    """Test the inverse map"""

    def test_round_trip_recovers_mass_coordinates(self, polytrope_gas):
        """
        Given: A Lagrangian state built from uniform data
        When: Mass coordinates are rebuilt from its radii and densities
        Then: They match the state's x
        """
        # Arrange
        state = initial_state(uniform_initial_data(1.0, 1.0, 0.05, polytrope_gas), 32)

        # Act
        x = mass_coordinates(state.r, state.rho)
        centres, rho = lagrangian_to_eulerian(state)

        # Assert
        np.testing.assert_allclose(x, state.x, atol=1e-12 * state.x[-1])
        assert np.all((centres > state.r[:-1]) & (centres < state.r[1:]))
        np.testing.assert_array_equal(rho, state.rho)
