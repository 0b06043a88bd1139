"""Unit tests for the equation of state and effective viscous flux"""

import numpy as np
import pytest
from scipy.integrate import quad

from src.app.services.constitutive import pressure, stress, velocity_divergence
from src.domain.errors import DomainViolation
from src.domain.gas_model import GasModel
from src.domain.lagrangian_state import LagrangianState
from tests.utils.builders import uniform_state


class TestPressure:
    """Test P = kappa rho^gamma"""

    def test_worked_example(self, test_data):
        """
        Given: rho = 8, gamma = 4/3, kappa = 1
        When: pressure is evaluated
        Then: P = 16
        """
        # Arrange
        case = test_data.get("pressure")
        model = GasModel(gamma=case["gamma"], kappa=case["kappa"], mu=1.0, lambda_=0.0)

        # Act
        value = pressure(case["rho"], model)

        # Assert
        assert value == pytest.approx(case["P"], rel=1e-14)

    def test_vacuum_has_zero_pressure(self, polytrope_gas):
        """Test that P(0) = 0"""
        # Arrange & Act & Assert
        assert pressure(0.0, polytrope_gas) == 0.0

    def test_vectorised_over_arrays(self, polytrope_gas):
        """Test that arrays are evaluated elementwise"""
        # Arrange
        rho = np.array([1.0, 8.0, 27.0])

        # Act
        values = pressure(rho, polytrope_gas)

        # Assert
        np.testing.assert_allclose(values, [1.0, 16.0, 81.0], rtol=1e-13)

    def test_negative_density_rejected(self, polytrope_gas):
        """Test that a negative density raises DomainViolation"""
        # Arrange & Act & Assert
        with pytest.raises(DomainViolation):
            pressure(np.array([1.0, -1e-3]), polytrope_gas)


class TestStress:
    """Test F = kappa rho^gamma - nu rho (u r^2)_x"""

    def test_fluid_at_rest_carries_pressure_only(self, polytrope_gas, small_state):
        """Test that F equals P when u = 0"""
        # Arrange & Act
        field = stress(small_state, polytrope_gas)

        # Assert
        np.testing.assert_allclose(field.F, pressure(small_state.rho, polytrope_gas), rtol=1e-14)
        assert field.ghost == 0.0

    def test_rigid_dilation(self, polytrope_gas):
        """
        Given: Uniform density and u = c r down to the centre
        When: The stress is evaluated
        Then: rho (u r^2)_x = 3c, so F = kappa rho^gamma - 3 c nu on every cell
        """
        # Arrange
        c = 0.3
        state = uniform_state(N=24, rho=2.0, eps=0.0, velocity_scale=c)

        # Act
        field = stress(state, polytrope_gas)

        # Assert
        expected = 2.0 ** (4.0 / 3.0) - 3.0 * c * polytrope_gas.nu
        np.testing.assert_allclose(field.F, expected, rtol=1e-10)

    def test_viscous_part_is_linear_in_velocity(self, small_state, rng):
        """Test that the divergence of a sum is the sum of divergences"""
        # Arrange
        u1 = np.concatenate(([0.0], rng.normal(size=small_state.n_cells)))
        u2 = np.concatenate(([0.0], rng.normal(size=small_state.n_cells)))

        # Act
        combined = velocity_divergence(small_state, 2.0 * u1 - u2)

        # Assert
        np.testing.assert_allclose(
            combined,
            2.0 * velocity_divergence(small_state, u1) - velocity_divergence(small_state, u2),
            atol=1e-10,
        )

    def test_boundary_residual_reports_outer_cell(self, polytrope_gas, small_state):
        """Test that the ghost mismatch equals |F| on the last cell"""
        # Arrange & Act
        field = stress(small_state, polytrope_gas)

        # Assert
        assert field.boundary_residual == pytest.approx(abs(field.F[-1]))


def _manufactured_state(N: int, eps: float = 0.1):
    """Smoothly varying density with u = sin(r) - sin(eps), which vanishes at the inner node."""
    x = np.linspace(0.0, 0.3, N + 1)
    centres = 0.5 * (x[:-1] + x[1:])
    rho = 1.0 + 0.5 * np.cos(np.pi * centres / x[-1])
    state = LagrangianState.from_density(x, rho, np.zeros(N + 1), eps_radius=eps)
    u = np.sin(state.r) - np.sin(eps)
    u[0] = 0.0
    return state.model_copy(update={"u": u})


def _eulerian_divergence(r, eps: float = 0.1):
    """u_r + 2u/r for u = sin(r) - sin(eps)."""
    return np.cos(r) + 2.0 * (np.sin(r) - np.sin(eps)) / r


class TestEulerianOracle:
    """Test the Lagrangian stress against Eulerian derivatives of a manufactured state"""

    def test_stress_is_volume_average_of_eulerian_flux(self, polytrope_gas):
        """
        Given: A non-uniform density and a smooth velocity on a staggered grid
        When: The stress is evaluated
        Then: Each cell holds kappa rho^gamma minus nu times the r^2-weighted average of
              u_r + 2u/r over the cell, computed by adaptive quadrature of the Eulerian formula
        """
        # Arrange
        state = _manufactured_state(40)
        averages = []
        for left, right in zip(state.r[:-1], state.r[1:]):
            integral, _ = quad(
                lambda r: _eulerian_divergence(r) * r**2, left, right, epsabs=0.0, epsrel=1e-13
            )
            averages.append(3.0 * integral / (right**3 - left**3))

        # Act
        field = stress(state, polytrope_gas)

        # Assert
        expected = pressure(state.rho, polytrope_gas) - polytrope_gas.nu * np.array(averages)
        np.testing.assert_allclose(field.F, expected, rtol=1e-9, atol=1e-12)

    def test_pointwise_eulerian_flux_second_order(self, polytrope_gas):
        """
        Given: The manufactured state at N = 40 and N = 80
        When: The stress is compared with rho^gamma - nu (u_r + 2u/r) at each cell's volume centre
        Then: The largest mismatch away from the centre falls at second order
        """

        # Arrange
        def mismatch(N):
            state = _manufactured_state(N)
            centres = np.cbrt(0.5 * (state.r[:-1] ** 3 + state.r[1:] ** 3))
            oracle = pressure(state.rho, polytrope_gas) - polytrope_gas.nu * _eulerian_divergence(
                centres
            )
            outer = centres > 0.5
            return float(np.max(np.abs(stress(state, polytrope_gas).F - oracle)[outer]))

        # Act
        coarse, fine = mismatch(40), mismatch(80)

        # Assert
        assert fine < 1e-3
        assert coarse / fine > 3.0
