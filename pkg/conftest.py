import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).parent
sys.path.insert(0, str(ROOT))

from src.core.partition import Multipartition  # noqa: E402


@pytest.fixture
def mixed_charge_example():
    """((4,1,1),(2),(3,2,1)), drawn with e=3 and charges 0,1,2."""
    return Multipartition.of((4, 1, 1), (2,), (3, 2, 1))


@pytest.fixture
def golden_dir():
    return ROOT / "tests" / "golden"
