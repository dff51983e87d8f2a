from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DEMO_CSV = Path(__file__).resolve().parent.parent / "data" / "philippines_measles_demo.csv"


@pytest.fixture(scope="session")
def demo_csv_path() -> Path:
    assert DEMO_CSV.exists(), f"demo dataset missing at {DEMO_CSV}"
    return DEMO_CSV
