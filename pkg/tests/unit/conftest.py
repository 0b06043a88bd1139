from unittest.mock import MagicMock

import pytest

from src.app.repositories.profile_repository import ProfileRepository
from src.app.repositories.run_repository import RunRepository


@pytest.fixture
def mock_run_repo():
    repo = MagicMock(spec=RunRepository)
    repo.location = "memory://run"
    repo.save_snapshot.side_effect = lambda snapshot: f"snapshots/snapshot_{snapshot.index:05d}.csv"
    return repo


@pytest.fixture
def mock_profile_repo():
    return MagicMock(spec=ProfileRepository)
