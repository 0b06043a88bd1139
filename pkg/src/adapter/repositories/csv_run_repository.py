"""CSV Run Repository Implementation

Implements run-directory persistence with pandas. Floats are written with their
shortest round-trip representation and read back with the round-trip parser.
"""

import json
import logging
import math
import os
import re
from typing import List

import numpy as np
import pandas as pd
from pydantic import ValidationError

from src.app.repositories.run_repository import RunRepository
from src.domain.diagnostics_record import TIMESERIES_COLUMNS, DiagnosticsRecord
from src.domain.errors import RunDataError
from src.domain.run_metadata import RunMetadata
from src.domain.snapshot import Snapshot

logger = logging.getLogger(__name__)

METADATA_FILE = "run.json"
TIMESERIES_FILE = "timeseries.csv"
SNAPSHOT_DIR = "snapshots"
SNAPSHOT_HEADER = re.compile(r"#\s*t=(?P<t>\S+)\s+gamma=(?P<gamma>\S+)\s+M=(?P<M>\S+)")
COUNT_COLUMNS = ("envelope_violations", "path_violations")


def format_float(value) -> str:
    return repr(float(value))


def write_frame(frame: pd.DataFrame, handle) -> None:
    frame.to_csv(handle, index=False, float_format=format_float, na_rep="", lineterminator="\n")


def read_frame(path: str) -> pd.DataFrame:
    return pd.read_csv(path, comment="#", float_precision="round_trip")


class CsvRunRepository(RunRepository):
    """
    CSV implementation of RunRepository

    Layout: run.json, timeseries.csv and snapshots/snapshot_<index>.csv under one directory.
    """

    def __init__(self, run_dir: str):
        self.run_dir = run_dir

    @property
    def location(self) -> str:
        return self.run_dir

    def _path(self, *parts: str) -> str:
        return os.path.join(self.run_dir, *parts)

    def _require(self, path: str) -> None:
        if not os.path.isfile(path):
            raise RunDataError(f"missing run file {path}")

    def save_metadata(self, metadata: RunMetadata) -> None:
        os.makedirs(self.run_dir, exist_ok=True)
        payload = metadata.model_dump(mode="json", by_alias=True)
        with open(self._path(METADATA_FILE), "w") as w_file:
            json.dump(payload, w_file, indent=2, sort_keys=True)
            w_file.write("\n")

    def load_metadata(self) -> RunMetadata:
        path = self._path(METADATA_FILE)
        self._require(path)
        try:
            with open(path, "r") as r_file:
                return RunMetadata.model_validate(json.load(r_file))
        except (json.JSONDecodeError, ValidationError) as exc:
            raise RunDataError(f"malformed run metadata {path}: {exc}") from exc

    def save_timeseries(self, records: List[DiagnosticsRecord]) -> None:
        os.makedirs(self.run_dir, exist_ok=True)
        rows = [record.model_dump() for record in records]
        frame = pd.DataFrame(rows, columns=list(TIMESERIES_COLUMNS))
        frame = frame.astype({column: "float64" for column in TIMESERIES_COLUMNS})
        with open(self._path(TIMESERIES_FILE), "w", newline="") as w_file:
            write_frame(frame, w_file)
        logger.debug(f"Wrote {len(records)} diagnostics records to {self.run_dir}")

    def load_timeseries(self) -> List[DiagnosticsRecord]:
        path = self._path(TIMESERIES_FILE)
        self._require(path)
        frame = read_frame(path)
        missing = [column for column in TIMESERIES_COLUMNS if column not in frame.columns]
        if missing:
            raise RunDataError(f"{path} lacks columns {missing}")
        records = []
        try:
            for row in frame[list(TIMESERIES_COLUMNS)].to_dict(orient="records"):
                for column, value in row.items():
                    if isinstance(value, float) and math.isnan(value):
                        row[column] = None
                    elif column in COUNT_COLUMNS:
                        row[column] = int(value)
                records.append(DiagnosticsRecord(**row))
        except ValidationError as exc:
            raise RunDataError(f"malformed time series {path}: {exc}") from exc
        return records

    def save_snapshot(self, snapshot: Snapshot) -> str:
        os.makedirs(self._path(SNAPSHOT_DIR), exist_ok=True)
        name = f"snapshot_{snapshot.index:05d}.csv"

        # Cell columns are one shorter than node columns; the last row leaves them empty
        pad = np.array([np.nan])
        frame = pd.DataFrame(
            {
                "x": snapshot.x,
                "r": snapshot.r,
                "rho": np.concatenate((snapshot.rho, pad)),
                "u": snapshot.u,
                "F": np.concatenate((snapshot.F, pad)),
            }
        )
        with open(self._path(SNAPSHOT_DIR, name), "w", newline="") as w_file:
            w_file.write(
                f"# t={format_float(snapshot.t)} gamma={format_float(snapshot.gamma)} "
                f"M={format_float(snapshot.M)}\n"
            )
            write_frame(frame, w_file)
        return os.path.join(SNAPSHOT_DIR, name)

    def load_snapshot(self, name: str) -> Snapshot:
        path = self._path(name)
        self._require(path)
        with open(path, "r") as r_file:
            match = SNAPSHOT_HEADER.match(r_file.readline())
        if match is None:
            raise RunDataError(f"{path} lacks the '# t=.. gamma=.. M=..' header")
        frame = read_frame(path)
        index = int(re.sub(r"\D", "", os.path.basename(name)) or 0)
        try:
            return Snapshot(
                index=index,
                t=float(match["t"]),
                gamma=float(match["gamma"]),
                M=float(match["M"]),
                x=frame["x"].to_numpy(),
                r=frame["r"].to_numpy(),
                u=frame["u"].to_numpy(),
                rho=frame["rho"].to_numpy()[:-1],
                F=frame["F"].to_numpy()[:-1],
            )
        except (KeyError, ValidationError) as exc:
            raise RunDataError(f"malformed snapshot {path}: {exc}") from exc

    def load_snapshots(self) -> List[Snapshot]:
        metadata = self.load_metadata()
        return [self.load_snapshot(name) for name in metadata.snapshots]
