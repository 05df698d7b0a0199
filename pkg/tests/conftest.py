import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "tests"))

import pytest


@pytest.fixture(scope="session")
def stdlib_dir() -> Path:
    return REPO / "stdlib"


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return REPO / "tests" / "golden"


@pytest.fixture(scope="session")
def negative_dir() -> Path:
    return REPO / "tests" / "negative"
