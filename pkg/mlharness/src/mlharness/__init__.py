"""Trainability experiments on encrypted image datasets."""

__version__ = "0.1.0"

from .config import ExperimentConfig, RunResult
from .data import Split, load
from .errors import HarnessError, LoadError, RunError
from .model import SmallConvNet
from .run import train_eval

__all__ = [
    "ExperimentConfig",
    "RunResult",
    "Split",
    "load",
    "HarnessError",
    "LoadError",
    "RunError",
    "SmallConvNet",
    "train_eval",
]
