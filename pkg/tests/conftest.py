from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return REPO_ROOT / "fixtures"


@pytest.fixture(scope="session")
def fixture_key_paths(fixtures_dir) -> list[Path]:
    return [fixtures_dir / f"vortex{k}.json" for k in (1, 2, 3)]
