"""Experiment configuration and result records."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from pathlib import Path

DATASETS = ("mnist", "fashion", "cifar10")
VARIANTS = ("origin", "vortex", "random")


@dataclass(frozen=True)
class ExperimentConfig:
    dataset: str
    variant: str
    data_dir: Path
    epochs: int
    seed: int
    subsample: int | None = None

    def __post_init__(self) -> None:
        if self.dataset not in DATASETS:
            raise ValueError(f"dataset must be one of {DATASETS}, got {self.dataset!r}")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.subsample is not None and self.subsample < 10:
            raise ValueError("subsample must cover at least one image per class")
        object.__setattr__(self, "data_dir", Path(self.data_dir))

    @property
    def variant_dir(self) -> Path:
        return self.data_dir / self.variant

    def to_dict(self) -> dict:
        out = asdict(self)
        out["data_dir"] = str(self.data_dir)
        return out


@dataclass
class RunResult:
    test_accuracy: float
    train_curve: list[float] = field(default_factory=list)  # per-epoch test error
    config: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        return {
            "test_accuracy": self.test_accuracy,
            "train_curve": self.train_curve,
            "config": self.config,
            "wall_time": self.wall_time,
        }
