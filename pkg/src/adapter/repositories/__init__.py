from .csv_profile_repository import CsvProfileRepository
from .csv_run_repository import CsvRunRepository

__all__ = [
    "CsvProfileRepository",
    "CsvRunRepository",
]
