import json

from libs.result import Error

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_VERIFICATION = 4

NUMERICAL_CODES = frozenset(
    {"NUMERICAL_FAILURE", "SHELL_CROSSING", "TIME_STEP_UNDERFLOW", "SUPPORT_NOT_FOUND"}
)


def exit_code_for(error: Error) -> int:
    if error.code in NUMERICAL_CODES:
        return EXIT_NUMERICAL
    if error.code == "VERIFICATION_FAILED":
        return EXIT_VERIFICATION
    return EXIT_CONFIG


class CliError(Exception):
    def __init__(self, base_error: Error, exit_code: int | None = None):
        self.base_error = base_error
        self.exit_code = exit_code_for(base_error) if exit_code is None else exit_code
        super().__init__(base_error.message)

    def to_line(self) -> str:
        """Single machine-readable line for stderr."""
        return json.dumps({"error": self.base_error.to_dict()}, sort_keys=True)
