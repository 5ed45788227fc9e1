import subprocess
import sys
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parents[2]
FIXTURES_DIR = REPO_ROOT / "fixtures"

GLYPH_TRAIN = 3500
GLYPH_TEST = 700
GLYPH_SEED = 0
KEY_SEED = 30  # a sampled key with high remaining information (upsilon ~ 0.99)


def vortexcrypt_cli(*argv: str) -> None:
    proc = subprocess.run(
        [sys.executable, "-m", "vortexcrypt", *argv], capture_output=True, text=True
    )
    assert proc.returncode == 0, f"vortexcrypt {' '.join(argv)}: {proc.stderr}"


@pytest.fixture(scope="session")
def glyph_pipeline(tmp_path_factory):
    """Synthetic dataset run through the real encryption CLI: returns the
    data dir holding origin/, vortex/, and random/ variant directories."""
    from mlharness.glyphs import generate
    from mlharness.pipeline import prepare_variants

    root = tmp_path_factory.mktemp("glyphs")
    source = generate(root / "source", GLYPH_TRAIN, GLYPH_TEST, seed=GLYPH_SEED)
    key_path = root / "key.json"
    vortexcrypt_cli(
        "keygen", "--width", "28", "--height", "28",
        "--vortices", "5", "--seed", str(KEY_SEED), "--out", str(key_path),
    )
    return prepare_variants(source, root / "data", "mnist", key_path, permute_seed=0)
