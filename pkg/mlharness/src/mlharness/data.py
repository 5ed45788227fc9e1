"""Dataset loading from CLI-emitted files.

The harness deliberately has no in-process binding to the encryption tool: it
reads the same IDX / CIFAR-10 binary containers the tool writes, and uses the
manifest sidecars only to verify that the train and test splits were
transformed with the same map.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import ExperimentConfig
from .errors import LoadError

IDX_FILES = {
    "train_images": "train-images-idx3-ubyte",
    "train_labels": "train-labels-idx1-ubyte",
    "test_images": "t10k-images-idx3-ubyte",
    "test_labels": "t10k-labels-idx1-ubyte",
}
CIFAR_TRAIN_GLOB = "data_batch_*.bin"
CIFAR_TEST = "test_batch.bin"


@dataclass
class Split:
    """One split: float32 images in [0, 1], (count, channels, rows, cols)."""

    images: np.ndarray
    labels: np.ndarray


def read_idx_images(path: Path) -> np.ndarray:
    try:
        blob = path.read_bytes()
    except OSError as exc:
        raise LoadError(f"cannot read {path}: {exc}") from exc
    if len(blob) < 16:
        raise LoadError(f"{path}: truncated IDX header")
    magic, count, rows, cols = struct.unpack(">IIII", blob[:16])
    if magic != 0x803:
        raise LoadError(f"{path}: bad IDX image magic {magic:#x}")
    if len(blob) != 16 + count * rows * cols:
        raise LoadError(f"{path}: payload does not match header dimensions")
    return np.frombuffer(blob, np.uint8, offset=16).reshape(count, 1, rows, cols)


def read_idx_labels(path: Path) -> np.ndarray:
    try:
        blob = path.read_bytes()
    except OSError as exc:
        raise LoadError(f"cannot read {path}: {exc}") from exc
    if len(blob) < 8:
        raise LoadError(f"{path}: truncated IDX header")
    magic, count = struct.unpack(">II", blob[:8])
    if magic != 0x801 or len(blob) != 8 + count:
        raise LoadError(f"{path}: not a conforming IDX label file")
    return np.frombuffer(blob, np.uint8, offset=8)


def read_cifar_batches(paths: list[Path]) -> tuple[np.ndarray, np.ndarray]:
    images, labels = [], []
    for path in paths:
        try:
            blob = path.read_bytes()
        except OSError as exc:
            raise LoadError(f"cannot read {path}: {exc}") from exc
        if len(blob) == 0 or len(blob) % 3073:
            raise LoadError(f"{path}: size is not a multiple of the 3073-byte record")
        records = np.frombuffer(blob, np.uint8).reshape(-1, 3073)
        labels.append(records[:, 0])
        images.append(records[:, 1:].reshape(-1, 3, 32, 32))
    return np.concatenate(images), np.concatenate(labels)


def manifest_map_digest(data_path: Path) -> str | None:
    sidecar = Path(str(data_path) + ".manifest.json")
    if not sidecar.exists():
        return None
    try:
        return json.loads(sidecar.read_text())["map_digest"]
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise LoadError(f"unreadable manifest {sidecar}: {exc}") from exc


def _check_same_map(config: ExperimentConfig, image_files: list[Path]) -> None:
    """Encrypted variants must carry manifests proving one shared map."""
    if config.variant == "origin":
        return
    digests = {}
    for path in image_files:
        digest = manifest_map_digest(path)
        if digest is None:
            raise LoadError(
                f"{config.variant} variant requires a manifest sidecar for {path.name}"
            )
        digests[path.name] = digest
    if len(set(digests.values())) != 1:
        raise LoadError(f"train/test splits were transformed with different maps: {digests}")


def _stratified_subsample(split: Split, subsample: int, seed: int) -> Split:
    per_class = subsample // 10
    extra = subsample % 10
    rng = np.random.default_rng(seed)
    chosen = []
    for label in range(10):
        quota = per_class + (1 if label < extra else 0)
        idx = np.flatnonzero(split.labels == label)
        if idx.size < quota:
            raise LoadError(
                f"class {label} has {idx.size} samples, cannot draw {quota} (stratified)"
            )
        chosen.append(rng.permutation(idx)[:quota])
    order = np.sort(np.concatenate(chosen))
    return Split(split.images[order], split.labels[order])


def load(config: ExperimentConfig) -> tuple[Split, Split]:
    """Train and test splits for a config, normalized to float32 in [0, 1]."""
    root = config.variant_dir
    if not root.is_dir():
        raise LoadError(f"variant directory {root} does not exist")

    if config.dataset in ("mnist", "fashion"):
        train_images_path = root / IDX_FILES["train_images"]
        test_images_path = root / IDX_FILES["test_images"]
        _check_same_map(config, [train_images_path, test_images_path])
        train = Split(
            read_idx_images(train_images_path),
            read_idx_labels(root / IDX_FILES["train_labels"]),
        )
        test = Split(
            read_idx_images(test_images_path),
            read_idx_labels(root / IDX_FILES["test_labels"]),
        )
    else:
        train_paths = sorted(root.glob(CIFAR_TRAIN_GLOB))
        test_path = root / CIFAR_TEST
        if not train_paths:
            raise LoadError(f"no {CIFAR_TRAIN_GLOB} batches under {root}")
        _check_same_map(config, train_paths + [test_path])
        train = Split(*read_cifar_batches(train_paths))
        test = Split(*read_cifar_batches([test_path]))

    for name, split in (("train", train), ("test", test)):
        if len(split.images) != len(split.labels):
            raise LoadError(f"{name}: {len(split.images)} images vs {len(split.labels)} labels")

    if config.subsample is not None:
        train = _stratified_subsample(train, config.subsample, config.seed)

    def normalize(split: Split) -> Split:
        return Split(split.images.astype(np.float32) / 255.0, split.labels.astype(np.int64))

    return normalize(train), normalize(test)
