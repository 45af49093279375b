import json
from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parent.parent
FIXTURE_DIR = REPO / "fixtures"


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    if not FIXTURE_DIR.is_dir():
        pytest.skip("fixtures/ not generated; run scripts/make_fixtures.py")
    return FIXTURE_DIR


@pytest.fixture(scope="session")
def ledger_doc(fixture_dir) -> dict:
    return json.loads((fixture_dir / "mortgage-ledger.json").read_text())
