"""End-to-end trainability comparison, entirely through the two CLIs.

Synthesizes the glyph dataset, samples a vortex key, builds
origin/vortex/random variant directories via the encryption CLI, trains the
reference classifier on each, and prints the accuracy table.

Usage:
    python scripts/run_trainability_experiment.py --workdir /tmp/exp \
        [--train 3500] [--test 700] [--epochs 4] [--key-seed 30] [--key PATH]
"""

import argparse
import json
import subprocess
import sys
from pathlib import Path


def cli(module: str, *argv) -> None:
    cmd = [sys.executable, "-m", module, *map(str, argv)]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != 0:
        sys.exit(f"{module} {' '.join(map(str, argv))} failed:\n{proc.stderr}")


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--workdir", required=True)
    parser.add_argument("--train", type=int, default=3500)
    parser.add_argument("--test", type=int, default=700)
    parser.add_argument("--epochs", type=int, default=4)
    parser.add_argument("--seed", type=int, default=0, help="training seed")
    parser.add_argument("--key-seed", type=int, default=30, help="vortex key seed")
    parser.add_argument("--key", default=None, help="use an existing key file instead of sampling")
    parser.add_argument("--permute-seed", type=int, default=0)
    args = parser.parse_args()

    work = Path(args.workdir)
    source = work / "source"
    cli("mlharness", "glyphs", "--out-dir", source, "--train", args.train, "--test", args.test)

    key_path = Path(args.key) if args.key else work / "key.json"
    if not args.key:
        cli("vortexcrypt", "keygen", "--width", 28, "--height", 28,
            "--vortices", 5, "--seed", args.key_seed, "--out", key_path)

    from mlharness.pipeline import prepare_variants

    data_dir = prepare_variants(source, work / "data", "mnist", key_path, args.permute_seed)

    results = {}
    for variant in ("origin", "vortex", "random"):
        out = work / f"result-{variant}.json"
        cli("mlharness", "run", "--dataset", "mnist", "--variant", variant,
            "--data-dir", data_dir, "--epochs", args.epochs, "--seed", args.seed,
            "--out", out)
        results[variant] = json.loads(out.read_text())

    print(f"\n{'variant':8s}  {'accuracy':>8s}  per-epoch test error")
    for variant, doc in results.items():
        curve = ", ".join(f"{e:.3f}" for e in doc["train_curve"])
        print(f"{variant:8s}  {doc['test_accuracy']:8.4f}  [{curve}]")
    ordered = (
        results["origin"]["test_accuracy"]
        >= results["vortex"]["test_accuracy"]
        > results["random"]["test_accuracy"]
    )
    print(f"\nordering origin >= vortex > random: {ordered}")


if __name__ == "__main__":
    main()
