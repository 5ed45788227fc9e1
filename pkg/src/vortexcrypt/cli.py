"""Command-line surface: keygen, encrypt, decrypt, info, sweep.

Exit codes: 0 success, 2 usage error, 3 data/format error.  Every command is
deterministic given its flags; VORTEXCRYPT_THREADS caps worker threads.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .dataset import (
    Dataset,
    Manifest,
    read_cifar10,
    read_idx,
    read_png,
    transform_dataset,
    write_cifar10,
    write_idx,
    write_manifest,
    write_png,
)
from .errors import VortexcryptError
from .grid import Coord, GridShape
from .info import build_kernel, remaining_info
from .pixmap import PRNG_NAME, PixelMap, compose, identity, invert, random_permutation, transposition
from .vortex import apply_key, keygen, max_band_shear, read_key, vortex_map, write_key


class UsageError(Exception):
    """Flag combination rejected before any I/O."""


def thread_count() -> int:
    cap = os.environ.get("VORTEXCRYPT_THREADS")
    cpus = os.cpu_count() or 1
    if cap is not None:
        try:
            return max(1, min(int(cap), cpus))
        except ValueError:
            raise UsageError(f"VORTEXCRYPT_THREADS must be an integer, got {cap!r}")
    return min(4, cpus)


def _parse_coord(text: str) -> Coord:
    try:
        i, j = (int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"coordinate must look like 'i,j', got {text!r}")
    return Coord(i, j)


def _shape_from_flags(args) -> GridShape:
    if args.width is None or args.height is None:
        raise UsageError("--width and --height are required for this map source")
    if args.width < 1 or args.height < 1:
        raise UsageError("--width and --height must be positive")
    return GridShape(cols=args.width, rows=args.height)


# ---------------------------------------------------------------------------


def cmd_keygen(args) -> int:
    if args.width < 3 or args.height < 3:
        raise UsageError("grid too small for any vortex disk; need width and height >= 3")
    if args.vortices < 1:
        raise UsageError("--vortices must be at least 1")
    key = keygen(GridShape(args.width, args.height), args.vortices, args.seed)
    write_key(key, args.out)
    print(key.digest())
    return 0


_READERS = {"idx": read_idx, "cifar10": read_cifar10, "png": read_png}
_WRITERS = {"idx": write_idx, "cifar10": write_cifar10, "png": write_png}


def _permute_digest(seed: int, shape: GridShape) -> str:
    doc = json.dumps(
        {"operation": "permute", "seed": seed, "shape": [shape.cols, shape.rows]},
        separators=(",", ":"),
    )
    return hashlib.sha256(doc.encode("ascii")).hexdigest()


def _run_codec(args, decrypt: bool) -> int:
    if (args.key is None) == (args.permute_seed is None):
        raise UsageError("give exactly one map source: --key or --permute-seed")
    dataset: Dataset = _READERS[args.format](args.infile)
    shape = dataset.grid_shape

    shear = None
    if args.key is not None:
        key = read_key(args.key)
        pmap = apply_key(key, shape)
        operation = "vortex" if key.specs else "identity"
        key_digest = key.digest()
        if operation == "vortex":
            shear = max_band_shear(key)
    else:
        pmap = random_permutation(shape, args.permute_seed)
        operation = "permute"
        key_digest = _permute_digest(args.permute_seed, shape)

    if decrypt:
        pmap = invert(pmap)
    out_data = transform_dataset(dataset, pmap)
    _WRITERS[args.format](out_data, args.out)

    report = remaining_info(pmap, shape, build_kernel(shape), threads=thread_count())
    manifest = Manifest(
        operation=operation,
        key_digest=key_digest,
        map_digest=pmap.digest(),
        shape=shape,
        upsilon=report.upsilon,
        tool_version=__version__,
        prng=PRNG_NAME,
        max_band_shear=shear,
    )
    sidecar = write_manifest(manifest, args.out)
    print(f"wrote {args.out} (upsilon={report.upsilon:.6f}, manifest={sidecar})")
    return 0


def cmd_encrypt(args) -> int:
    return _run_codec(args, decrypt=False)


def cmd_decrypt(args) -> int:
    return _run_codec(args, decrypt=True)


def cmd_info(args) -> int:
    sources = [args.key is not None, args.permute_seed is not None, args.swap is not None]
    if sum(sources) != 1:
        raise UsageError("give exactly one map source: --key, --permute-seed, or --swap")

    if args.key is not None:
        key = read_key(args.key)
        shape = key.shape
        if args.width is not None and (args.width, args.height) != (shape.cols, shape.rows):
            raise UsageError("--width/--height disagree with the key's shape")
        pmap = apply_key(key, shape)
    elif args.permute_seed is not None:
        shape = _shape_from_flags(args)
        pmap = random_permutation(shape, args.permute_seed)
    else:
        shape = _shape_from_flags(args)
        p1, p2 = (_parse_coord(t) for t in args.swap)
        pmap = transposition(p1, p2, shape)

    report = remaining_info(pmap, shape, build_kernel(shape), threads=thread_count())
    doc = {
        "total_original": report.total_original,
        "total_transformed": report.total_transformed,
        "upsilon": report.upsilon,
        "shape": [shape.cols, shape.rows],
        "map_digest": pmap.digest(),
    }
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"upsilon={report.upsilon:.6f}", file=sys.stderr)
    return 0


def _sweep_curve(mode: str, shape: GridShape, seed: int, steps: int) -> list[float]:
    kernel = build_kernel(shape)
    curve = [1.0]
    pmap = identity(shape)
    if mode == "vortex":
        key = keygen(shape, steps, seed) if steps else None
        for step in range(steps):
            pmap = compose(vortex_map(key.specs[step], shape), pmap)
            curve.append(remaining_info(pmap, shape, kernel).upsilon)
    else:
        rng = np.random.Generator(np.random.PCG64(seed))
        for _ in range(steps):
            pmap = compose(PixelMap(shape, rng.permutation(shape.num_pixels)), pmap)
            curve.append(remaining_info(pmap, shape, kernel).upsilon)
    return curve


def cmd_sweep(args) -> int:
    if args.steps < 0:
        raise UsageError("--steps must be >= 0")
    if args.seeds < 1:
        raise UsageError("--seeds must be >= 1")
    shape = _shape_from_flags(args)
    if args.mode == "vortex" and args.steps > 0 and (shape.cols < 3 or shape.rows < 3):
        raise UsageError("vortex sweeps need width and height >= 3")

    seeds = list(range(args.seeds))
    workers = min(thread_count(), len(seeds))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            curves = list(pool.map(lambda s: _sweep_curve(args.mode, shape, s, args.steps), seeds))
    else:
        curves = [_sweep_curve(args.mode, shape, s, args.steps) for s in seeds]

    stack = np.asarray(curves)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["step", "mean_upsilon", "std_upsilon"])
        for step in range(args.steps + 1):
            col = stack[:, step]
            writer.writerow([step, f"{col.mean():.12g}", f"{col.std():.12g}"])
    print(f"wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vortexcrypt",
        description="Vortex image encryption and pixel-neighborhood information measurement",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="sample a new vortex key")
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--vortices", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_keygen)

    for name, func in (("encrypt", cmd_encrypt), ("decrypt", cmd_decrypt)):
        p = sub.add_parser(name, help=f"{name} a dataset or image file")
        p.add_argument("--key")
        p.add_argument("--permute-seed", type=int, dest="permute_seed")
        p.add_argument("--in", dest="infile", required=True)
        p.add_argument("--format", choices=sorted(_READERS), required=True)
        p.add_argument("--out", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("info", help="measure remaining information of a map")
    p.add_argument("--key")
    p.add_argument("--permute-seed", type=int, dest="permute_seed")
    p.add_argument("--swap", nargs=2, metavar="i,j")
    p.add_argument("--width", type=int)
    p.add_argument("--height", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("sweep", help="information decay under repeated transformations")
    p.add_argument("--mode", choices=["vortex", "permute"], required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seeds", type=int, required=True)
    p.add_argument("--width", type=int)
    p.add_argument("--height", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (VortexcryptError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())
