"""CSV Profile Repository Implementation"""

import logging
import os

import numpy as np
import pandas as pd

from src.adapter.repositories.csv_run_repository import format_float, read_frame, write_frame
from src.app.repositories.profile_repository import ProfileRepository
from src.domain.errors import RunDataError
from src.domain.lane_emden import LaneEmdenProfile

logger = logging.getLogger(__name__)


class CsvProfileRepository(ProfileRepository):
    def save_lane_emden(self, profile: LaneEmdenProfile, path: str) -> str:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        xi1 = "inf" if profile.xi1 is None else format_float(profile.xi1)
        frame = pd.DataFrame({"xi": profile.xi, "theta": profile.theta})
        with open(path, "w", newline="") as w_file:
            w_file.write(f"# n={format_float(profile.n)} xi1={xi1}\n")
            write_frame(frame, w_file)
        logger.info(f"Lane-Emden profile written to {path}")
        return path

    def load_initial_profile(self, path: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if not os.path.isfile(path):
            raise RunDataError(f"missing initial-data file {path}")
        frame = read_frame(path)
        if "r" not in frame.columns or "rho" not in frame.columns:
            raise RunDataError(f"{path} needs columns r and rho, found {list(frame.columns)}")
        frame = frame.dropna(subset=["r", "rho"])
        r = frame["r"].to_numpy(dtype=float)
        rho = frame["rho"].to_numpy(dtype=float)
        u = frame["u"].to_numpy(dtype=float) if "u" in frame.columns else np.zeros_like(r)
        if r.size < 3:
            raise RunDataError(f"{path} holds {r.size} samples, need at least 3")
        return r, rho, u
