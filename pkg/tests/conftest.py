import numpy as np
import pytest

from src.app.services.lane_emden_solver import solve_lane_emden
from src.domain.gas_model import GasModel
from src.domain.solver_config import SolverConfig
from tests.fixtures.json_loader import TestDataLoader
from tests.utils.builders import uniform_state


@pytest.fixture
def test_data():
    return TestDataLoader()


@pytest.fixture
def polytrope_gas():
    """gamma = 4/3, kappa = 1 with self-gravity: the critical-mass setting."""
    return GasModel(gamma=4.0 / 3.0, kappa=1.0, mu=0.5, lambda_=0.0)


@pytest.fixture
def isolated_gas():
    """Nearly pressureless viscous gas without self-gravity."""
    return GasModel(gamma=4.0 / 3.0, kappa=1e-8, mu=1.0, lambda_=0.0, gravity_enabled=False)


@pytest.fixture
def small_state():
    return uniform_state(N=16)


@pytest.fixture
def dilating_state():
    return uniform_state(N=32, velocity_scale=0.2)


@pytest.fixture
def short_run_config():
    return SolverConfig.for_run(32, 0.005, output_interval=5e-4, dt_max=1e-4)


@pytest.fixture(scope="session")
def n3_profile():
    return solve_lane_emden(4.0 / 3.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)
