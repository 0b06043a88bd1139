from src.adapter.repositories.csv_profile_repository import CsvProfileRepository
from src.adapter.repositories.csv_run_repository import CsvRunRepository
from src.app.repositories.profile_repository import ProfileRepository
from src.app.repositories.run_repository import RunRepository
from src.app.use_cases.mass_bounds.evaluate_critical_mass import EvaluateCriticalMass
from src.app.use_cases.simulation.fit_expansion import FitExpansion
from src.app.use_cases.simulation.run_simulation import RunSimulation
from src.app.use_cases.simulation.verify_run import VerifyRun
from src.app.use_cases.stationary.build_initial_data import BuildInitialData
from src.app.use_cases.stationary.solve_lane_emden import SolveLaneEmden


def get_run_repository(run_dir: str) -> RunRepository:
    return CsvRunRepository(run_dir)


def get_profile_repository() -> ProfileRepository:
    return CsvProfileRepository()


def get_solve_lane_emden() -> SolveLaneEmden:
    return SolveLaneEmden(profile_repo=get_profile_repository())


def get_build_initial_data() -> BuildInitialData:
    return BuildInitialData(profile_repo=get_profile_repository())


def get_evaluate_critical_mass() -> EvaluateCriticalMass:
    return EvaluateCriticalMass()


def get_run_simulation(run_dir: str) -> RunSimulation:
    return RunSimulation(get_run_repository(run_dir), get_build_initial_data())


def get_verify_run(run_dir: str) -> VerifyRun:
    return VerifyRun(get_run_repository(run_dir))


def get_fit_expansion(run_dir: str) -> FitExpansion:
    return FitExpansion(get_run_repository(run_dir))
