import os

CAP_ENV = "FLAGMAPS_CAP"


def env_cap(default: int) -> int:
    """Global flag/coset/vertex limit from the environment, else ``default``."""
    value = os.environ.get(CAP_ENV)
    return int(value) if value else default


class ResourceCapExceeded(RuntimeError):
    """A configured flag, coset or vertex limit was reached."""

    def __init__(self, message: str, completed: int | None = None):
        super().__init__(message)
        self.completed = completed
