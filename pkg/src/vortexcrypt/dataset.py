"""Byte-exact dataset codecs (IDX, CIFAR-10 bin, PNG) and batch transforms.

Encrypted datasets are written back in their original container format so any
downstream consumer reads them unchanged; provenance travels in a JSON
manifest sidecar next to the output file.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from PIL import Image

from .errors import FormatError, InvalidMapError
from .grid import GridShape
from .pixmap import PixelMap

# IDX magics: two zero bytes, dtype byte 0x08 (unsigned byte), dimension count.
_IDX_IMAGES_MAGIC = 0x00000803
_IDX_LABELS_MAGIC = 0x00000801

_CIFAR_RECORD = 1 + 3 * 32 * 32  # label byte + channel-planar RGB
_PNG_MODES = {1: "L", 3: "RGB", 4: "RGBA"}

FORMAT_IDX = "idx"
FORMAT_CIFAR10 = "cifar10bin"
FORMAT_PNG = "png"


@dataclass
class Dataset:
    """8-bit image stack (count, channels, rows, cols) with optional labels."""

    images: np.ndarray
    labels: np.ndarray | None
    source_format: str

    def __post_init__(self) -> None:
        if self.images.ndim != 4 or self.images.dtype != np.uint8:
            raise FormatError(
                f"images must be uint8 (count, channels, rows, cols), got "
                f"{self.images.dtype} {self.images.shape}"
            )
        if self.labels is not None and len(self.labels) != len(self.images):
            raise FormatError(
                f"{len(self.labels)} labels for {len(self.images)} images"
            )

    @property
    def grid_shape(self) -> GridShape:
        return GridShape(cols=self.images.shape[3], rows=self.images.shape[2])

    @property
    def count(self) -> int:
        return self.images.shape[0]


# ---------------------------------------------------------------------------
# IDX (MNIST / Fashion container)

def read_idx(path: str | Path, labels_path: str | Path | None = None) -> Dataset:
    """Read an IDX image file (magic 2051), optionally pairing an IDX label
    file (magic 2049)."""
    data = _read_all(path)
    if len(data) < 16:
        raise FormatError(f"{path}: too short for an IDX image header")
    magic, count, rows, cols = struct.unpack(">IIII", data[:16])
    if magic != _IDX_IMAGES_MAGIC:
        raise FormatError(f"{path}: bad IDX image magic {magic:#010x}")
    expected = 16 + count * rows * cols
    if len(data) != expected:
        raise FormatError(f"{path}: payload is {len(data)} bytes, header implies {expected}")
    images = np.frombuffer(data, dtype=np.uint8, offset=16).reshape(count, 1, rows, cols)
    labels = read_idx_labels(labels_path, expect_count=count) if labels_path else None
    return Dataset(images.copy(), labels, FORMAT_IDX)


def read_idx_labels(path: str | Path, expect_count: int | None = None) -> np.ndarray:
    data = _read_all(path)
    if len(data) < 8:
        raise FormatError(f"{path}: too short for an IDX label header")
    magic, count = struct.unpack(">II", data[:8])
    if magic != _IDX_LABELS_MAGIC:
        raise FormatError(f"{path}: bad IDX label magic {magic:#010x}")
    if len(data) != 8 + count:
        raise FormatError(f"{path}: payload is {len(data)} bytes, header implies {8 + count}")
    labels = np.frombuffer(data, dtype=np.uint8, offset=8)
    if expect_count is not None and count != expect_count:
        raise FormatError(f"{path}: {count} labels for {expect_count} images")
    if labels.size and labels.max() > 9:
        raise FormatError(f"{path}: label values exceed 9")
    return labels.copy()


def write_idx(dataset: Dataset, path: str | Path) -> None:
    """Write the image stack as a single-channel IDX file."""
    if dataset.images.shape[1] != 1:
        raise FormatError("IDX image files hold exactly one channel")
    count, _, rows, cols = dataset.images.shape
    header = struct.pack(">IIII", _IDX_IMAGES_MAGIC, count, rows, cols)
    Path(path).write_bytes(header + dataset.images.tobytes())


def write_idx_labels(labels: Iterable[int], path: str | Path) -> None:
    body = np.asarray(list(labels), dtype=np.uint8).tobytes()
    Path(path).write_bytes(struct.pack(">II", _IDX_LABELS_MAGIC, len(body)) + body)


# ---------------------------------------------------------------------------
# CIFAR-10 binary batches

def read_cifar10(paths: str | Path | Sequence[str | Path]) -> Dataset:
    """Read one or more CIFAR-10 .bin batches (records of 1 label byte +
    3072 channel-planar RGB bytes)."""
    if isinstance(paths, (str, Path)):
        paths = [paths]
    images, labels = [], []
    for path in paths:
        data = _read_all(path)
        if len(data) == 0 or len(data) % _CIFAR_RECORD != 0:
            raise FormatError(
                f"{path}: size {len(data)} is not a positive multiple of {_CIFAR_RECORD}"
            )
        records = np.frombuffer(data, dtype=np.uint8).reshape(-1, _CIFAR_RECORD)
        batch_labels = records[:, 0]
        if batch_labels.max() > 9:
            raise FormatError(f"{path}: label values exceed 9")
        labels.append(batch_labels)
        images.append(records[:, 1:].reshape(-1, 3, 32, 32))
    return Dataset(
        np.concatenate(images).copy(), np.concatenate(labels).copy(), FORMAT_CIFAR10
    )


def write_cifar10(dataset: Dataset, path: str | Path) -> None:
    if dataset.images.shape[1:] != (3, 32, 32):
        raise FormatError("CIFAR-10 batches hold 3x32x32 images")
    if dataset.labels is None:
        raise FormatError("CIFAR-10 batches embed labels; dataset has none")
    records = np.empty((dataset.count, _CIFAR_RECORD), dtype=np.uint8)
    records[:, 0] = dataset.labels
    records[:, 1:] = dataset.images.reshape(dataset.count, -1)
    Path(path).write_bytes(records.tobytes())


# ---------------------------------------------------------------------------
# PNG single images

def read_png(path: str | Path) -> Dataset:
    try:
        with Image.open(path) as img:
            arr = np.asarray(img)
    except (OSError, SyntaxError) as exc:
        raise FormatError(f"{path}: not a readable PNG: {exc}") from exc
    if arr.dtype != np.uint8:
        raise FormatError(f"{path}: only 8-bit PNGs are supported")
    if arr.ndim == 2:
        arr = arr[None, None]
    else:
        arr = arr.transpose(2, 0, 1)[None]
    return Dataset(arr.copy(), None, FORMAT_PNG)


def write_png(dataset: Dataset, path: str | Path) -> None:
    if dataset.count != 1:
        raise FormatError("PNG output holds exactly one image")
    channels = dataset.images.shape[1]
    mode = _PNG_MODES.get(channels)
    if mode is None:
        raise FormatError(f"cannot write {channels}-channel data as PNG")
    arr = dataset.images[0, 0] if channels == 1 else dataset.images[0].transpose(1, 2, 0)
    Image.fromarray(arr, mode=mode).save(path, format="PNG")


# ---------------------------------------------------------------------------

def transform_dataset(dataset: Dataset, pmap: PixelMap) -> Dataset:
    """Apply one pixel map to every image and channel; labels ride along."""
    if pmap.shape != dataset.grid_shape:
        raise InvalidMapError(
            f"map is for {pmap.shape.cols}x{pmap.shape.rows}, dataset is "
            f"{dataset.grid_shape.cols}x{dataset.grid_shape.rows}"
        )
    labels = None if dataset.labels is None else dataset.labels.copy()
    return Dataset(pmap.apply_to_image(dataset.images), labels, dataset.source_format)


@dataclass
class Manifest:
    """Sidecar metadata binding an output file to the map that produced it."""

    operation: str  # vortex | permute | identity
    key_digest: str
    map_digest: str
    shape: GridShape
    upsilon: float
    tool_version: str
    prng: str
    max_band_shear: float | None = None

    def to_dict(self) -> dict:
        out = {
            "operation": self.operation,
            "key_digest": self.key_digest,
            "map_digest": self.map_digest,
            "shape": [self.shape.cols, self.shape.rows],
            "upsilon": self.upsilon,
            "tool_version": self.tool_version,
            "prng": self.prng,
        }
        if self.max_band_shear is not None:
            out["max_band_shear"] = self.max_band_shear
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "Manifest":
        try:
            return cls(
                operation=d["operation"],
                key_digest=d["key_digest"],
                map_digest=d["map_digest"],
                shape=GridShape(*[int(v) for v in d["shape"]]),
                upsilon=float(d["upsilon"]),
                tool_version=d["tool_version"],
                prng=d["prng"],
                max_band_shear=d.get("max_band_shear"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"malformed manifest: {exc}") from exc


def manifest_path(output_path: str | Path) -> Path:
    return Path(str(output_path) + ".manifest.json")


def write_manifest(manifest: Manifest, output_path: str | Path) -> Path:
    path = manifest_path(output_path)
    path.write_text(json.dumps(manifest.to_dict(), indent=2) + "\n")
    return path


def read_manifest(output_path: str | Path) -> Manifest:
    path = manifest_path(output_path)
    try:
        return Manifest.from_dict(json.loads(path.read_text()))
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read manifest {path}: {exc}") from exc


def _read_all(path: str | Path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
