from .base import DomainModel, FloatArray
from .critical_mass import CriticalMassReport, EnergyPartition, MassVerdict
from .diagnostics_record import DiagnosticsRecord, EnergyBreakdown, ExpansionFit, TimeSeries
from .gas_model import GasModel
from .initial_data import InitialData
from .lagrangian_state import LagrangianState
from .lane_emden import LaneEmdenProfile
from .run_metadata import RunMetadata
from .snapshot import Snapshot
from .solver_config import SolverConfig
from .stress_field import StressField
from .verification import Verdict, VerdictKind, VerificationReport

__all__ = [
    "DomainModel",
    "FloatArray",
    "CriticalMassReport",
    "EnergyPartition",
    "MassVerdict",
    "DiagnosticsRecord",
    "EnergyBreakdown",
    "ExpansionFit",
    "TimeSeries",
    "GasModel",
    "InitialData",
    "LagrangianState",
    "LaneEmdenProfile",
    "RunMetadata",
    "Snapshot",
    "SolverConfig",
    "StressField",
    "Verdict",
    "VerdictKind",
    "VerificationReport",
]
