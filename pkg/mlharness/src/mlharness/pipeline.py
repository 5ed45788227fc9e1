"""Build origin/vortex/random variant directories by shelling out to the
encryption CLI.

The harness never links against the encryption tool; this helper invokes
``python -m vortexcrypt`` as a subprocess so everything the trainers consume
went through real files.
"""

from __future__ import annotations

import shutil
import subprocess
import sys
from pathlib import Path

from .data import CIFAR_TEST, CIFAR_TRAIN_GLOB, IDX_FILES
from .errors import LoadError


def _cli(*argv: str) -> None:
    cmd = [sys.executable, "-m", "vortexcrypt", *argv]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != 0:
        raise LoadError(f"vortexcrypt {' '.join(argv)} failed ({proc.returncode}): {proc.stderr.strip()}")


def _encrypt(src: Path, dst: Path, fmt: str, *source_flags: str) -> None:
    _cli("encrypt", *source_flags, "--in", str(src), "--format", fmt, "--out", str(dst))


def prepare_variants(
    source_dir: str | Path,
    data_dir: str | Path,
    dataset: str,
    key_path: str | Path,
    permute_seed: int = 0,
) -> Path:
    """Populate data_dir/{origin,vortex,random} from raw files in source_dir.

    ``key_path`` drives the vortex variant; ``permute_seed`` the random one.
    Labels are copied verbatim (encryption moves pixels, never labels).
    """
    source_dir, data_dir = Path(source_dir), Path(data_dir)
    layouts = {name: data_dir / name for name in ("origin", "vortex", "random")}
    for path in layouts.values():
        path.mkdir(parents=True, exist_ok=True)

    if dataset in ("mnist", "fashion"):
        image_names = [IDX_FILES["train_images"], IDX_FILES["test_images"]]
        label_names = [IDX_FILES["train_labels"], IDX_FILES["test_labels"]]
        fmt = "idx"
    elif dataset == "cifar10":
        image_names = sorted(p.name for p in source_dir.glob(CIFAR_TRAIN_GLOB))
        image_names.append(CIFAR_TEST)
        label_names = []
        fmt = "cifar10"
    else:
        raise ValueError(f"unknown dataset {dataset!r}")

    for name in image_names:
        src = source_dir / name
        if not src.exists():
            raise LoadError(f"source file {src} is missing")
        shutil.copyfile(src, layouts["origin"] / name)
        _encrypt(src, layouts["vortex"] / name, fmt, "--key", str(key_path))
        _encrypt(src, layouts["random"] / name, fmt, "--permute-seed", str(permute_seed))
    for name in label_names:
        for variant_dir in layouts.values():
            shutil.copyfile(source_dir / name, variant_dir / name)
    return data_dir
