"""Run Repository Interface

Defines the contract for persisting and re-reading a simulation run directory.
"""

from abc import ABC, abstractmethod
from typing import List

from src.domain.diagnostics_record import DiagnosticsRecord
from src.domain.run_metadata import RunMetadata
from src.domain.snapshot import Snapshot


class RunRepository(ABC):
    """
    Repository interface for one run directory

    A run directory holds the run metadata, the diagnostics time series and the
    state snapshots. Everything written must re-read bit-exactly.
    """

    @property
    @abstractmethod
    def location(self) -> str:
        """Human-readable location of the run (a directory path)."""
        pass

    @abstractmethod
    def save_metadata(self, metadata: RunMetadata) -> None:
        pass

    @abstractmethod
    def load_metadata(self) -> RunMetadata:
        """
        Read the run metadata

        Raises:
            RunDataError: metadata missing or malformed
        """
        pass

    @abstractmethod
    def save_timeseries(self, records: List[DiagnosticsRecord]) -> None:
        pass

    @abstractmethod
    def load_timeseries(self) -> List[DiagnosticsRecord]:
        """
        Read the diagnostics records in time order

        Raises:
            RunDataError: time series missing or malformed
        """
        pass

    @abstractmethod
    def save_snapshot(self, snapshot: Snapshot) -> str:
        """
        Persist one snapshot

        Returns:
            Name of the written snapshot, as listed in the run metadata
        """
        pass

    @abstractmethod
    def load_snapshots(self) -> List[Snapshot]:
        pass
