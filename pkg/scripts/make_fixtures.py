"""Write the shipped fixture scenarios (and the ledger input) as JSON files.

Usage: python scripts/make_fixtures.py [outdir]   (default: fixtures/)
"""

import json
import sys
from pathlib import Path

from fairnav import fixtures, save_scenario


def main() -> None:
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("fixtures")
    outdir.mkdir(parents=True, exist_ok=True)
    for name in fixtures.fixture_names():
        path = outdir / f"{name}.json"
        save_scenario(fixtures.fixture(name), path)
        print(f"wrote {path}")
    ledger_path = outdir / "mortgage-ledger.json"
    ledger_path.write_text(
        json.dumps(fixtures.mortgage_ledger_doc(), indent=2, sort_keys=True) + "\n"
    )
    print(f"wrote {ledger_path}")


if __name__ == "__main__":
    main()
