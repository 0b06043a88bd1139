"""Profile Repository Interface

Defines the contract for tabulated profiles: Lane-Emden exports and initial-data files.
"""

from abc import ABC, abstractmethod

import numpy as np

from src.domain.lane_emden import LaneEmdenProfile


class ProfileRepository(ABC):
    @abstractmethod
    def save_lane_emden(self, profile: LaneEmdenProfile, path: str) -> str:
        """
        Export a Lane-Emden profile

        Args:
            profile: Solved profile
            path: Destination file

        Returns:
            The path written
        """
        pass

    @abstractmethod
    def load_initial_profile(self, path: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Read tabulated initial data

        Returns:
            (r, rho, u) sample arrays; u is zero when the file has no velocity column

        Raises:
            RunDataError: file missing or malformed
        """
        pass
