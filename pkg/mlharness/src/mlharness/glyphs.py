"""Deterministic synthetic 10-class glyph dataset in MNIST-style IDX files.

Ten stroke glyphs (ring, bars, diagonals, cross, X, square, disk, T) rendered
at 28x28 with per-sample translation, rotation, scale, stroke-thickness, and
ink variation plus background noise.  The geometric variability is the point:
no single pixel is reliably class-informative, so classifiers must exploit
local spatial structure, which locality-preserving transformations keep and a
fixed global pixel permutation destroys.
"""

from __future__ import annotations

import math
import struct
from pathlib import Path

import numpy as np

from .data import IDX_FILES

SIDE = 28
JITTER = 3
MAX_ROTATION = math.radians(20)  # keeps the cross and X families separated
NUM_CLASSES = 10


def render_glyph(label: int, rng: np.random.Generator) -> np.ndarray:
    jx, jy = (int(v) for v in rng.integers(-JITTER, JITTER + 1, size=2))
    angle = float(rng.uniform(-MAX_ROTATION, MAX_ROTATION))
    scale_x = float(rng.uniform(0.78, 1.12))
    scale_y = float(rng.uniform(0.78, 1.12))
    t = float(rng.uniform(1.3, 2.1))
    wave_amp = float(rng.uniform(0.0, 1.4))
    wave_freq = float(rng.uniform(0.25, 0.55))
    wave_phase = float(rng.uniform(0.0, 2.0 * math.pi))

    y, x = np.mgrid[0:SIDE, 0:SIDE]
    cx, cy = 13.5 + jx, 13.5 + jy
    ca, sa = math.cos(angle), math.sin(angle)
    dx = (ca * (x - cx) + sa * (y - cy)) / scale_x
    dy = (-sa * (x - cx) + ca * (y - cy)) / scale_y
    dx = dx + wave_amp * np.sin(wave_freq * dy + wave_phase)  # handwriting-like bend
    adx, ady = np.abs(dx), np.abs(dy)
    r = np.hypot(dx, dy)
    box = np.maximum(adx, ady)

    if label == 0:
        mask = np.abs(r - 7.0) < t
    elif label == 1:
        mask = (adx < t) & (ady < 8.5)
    elif label == 2:
        mask = (ady < t) & (adx < 8.5)
    elif label == 3:
        mask = (np.abs(dx - dy) < 1.4 * t) & (r < 9.0)
    elif label == 4:
        mask = (np.abs(dx + dy) < 1.4 * t) & (r < 9.0)
    elif label == 5:
        mask = ((adx < t) | (ady < t)) & (box < 7.0)
    elif label == 6:
        mask = ((np.abs(dx - dy) < 1.4 * t) | (np.abs(dx + dy) < 1.4 * t)) & (r < 8.0)
    elif label == 7:
        mask = (box > 5.0) & (box < 5.0 + 1.6 * t)
    elif label == 8:
        mask = r < 5.5
    elif label == 9:
        mask = ((np.abs(dy + 5.0) < t) & (adx < 7.0)) | ((adx < t) & (dy > -5.0) & (dy < 8.0))
    else:
        raise ValueError(f"label must be in [0, 9], got {label}")

    # per-pixel ink variation defeats template matching on raw pixel values
    ink = rng.uniform(140, 255) * rng.uniform(0.7, 1.0, size=(SIDE, SIDE))
    noise = rng.uniform(0.0, 40.0, size=(SIDE, SIDE))
    return np.clip(mask * ink + noise, 0, 255).astype(np.uint8)


def make_split(count: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Balanced labels (count rounded down to a multiple of 10), shuffled."""
    count -= count % NUM_CLASSES
    labels = np.tile(np.arange(NUM_CLASSES, dtype=np.uint8), count // NUM_CLASSES)
    rng.shuffle(labels)
    images = np.stack([render_glyph(int(lbl), rng) for lbl in labels])
    return images[:, None, :, :], labels


def _write_idx_images(images: np.ndarray, path: Path) -> None:
    count, _, rows, cols = images.shape
    path.write_bytes(struct.pack(">IIII", 0x803, count, rows, cols) + images.tobytes())


def _write_idx_labels(labels: np.ndarray, path: Path) -> None:
    path.write_bytes(struct.pack(">II", 0x801, len(labels)) + labels.astype(np.uint8).tobytes())


def generate(out_dir: str | Path, train_count: int = 4000, test_count: int = 1000, seed: int = 0) -> Path:
    """Write the four MNIST-named IDX files into ``out_dir`` and return it."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    train_images, train_labels = make_split(train_count, rng)
    test_images, test_labels = make_split(test_count, rng)
    _write_idx_images(train_images, out_dir / IDX_FILES["train_images"])
    _write_idx_labels(train_labels, out_dir / IDX_FILES["train_labels"])
    _write_idx_images(test_images, out_dir / IDX_FILES["test_images"])
    _write_idx_labels(test_labels, out_dir / IDX_FILES["test_labels"])
    return out_dir
