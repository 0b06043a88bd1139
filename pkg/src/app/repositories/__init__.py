from .profile_repository import ProfileRepository
from .run_repository import RunRepository

__all__ = [
    "ProfileRepository",
    "RunRepository",
]
