class HarnessError(Exception):
    """Base class for harness errors."""


class LoadError(HarnessError):
    """Dataset files are missing, malformed, or inconsistently encrypted."""


class RunError(HarnessError):
    """Training failed (e.g. the loss diverged)."""
