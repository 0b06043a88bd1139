import pytest

from src.adapter.repositories.csv_run_repository import CsvRunRepository
from tests.fixtures.json_loader import TestDataLoader


@pytest.fixture
def run_dir(tmp_path):
    return str(tmp_path / "run")


@pytest.fixture
def run_repo(run_dir):
    return CsvRunRepository(run_dir)


@pytest.fixture
def write_config(tmp_path):
    """Write a stored run configuration to disk and return its path."""

    def _write(key: str, **overrides) -> str:
        path = tmp_path / f"{key}.cfg"
        path.write_text(TestDataLoader.config_text(key, **overrides))
        return str(path)

    return _write
