"""File-backed store for scenarios and run reports.

Everything is plain JSON files under one root directory, because fairness
decisions should leave an auditable paper trail that survives the process
and needs no database to read.  Writes go through a temp-file-then-rename so
a crash can never leave a half-written artifact, and a single lock serializes
writers; reads need no lock (rename is atomic on POSIX).
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Mapping

from .scenario import Scenario, ScenarioParseError, load_scenario, scenario_to_dict

__all__ = ["Workspace", "default_workspace_root"]

ENV_WORKSPACE = "NAVIGATOR_WORKSPACE"


def default_workspace_root() -> Path:
    return Path(os.environ.get(ENV_WORKSPACE, "navigator-workspace"))


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


class Workspace:
    """Scenario and report stores under one root directory."""

    def __init__(self, root: str | Path | None = None):
        self.root = Path(root) if root is not None else default_workspace_root()
        self.scenarios_dir = self.root / "scenarios"
        self.reports_dir = self.root / "reports"
        self.scenarios_dir.mkdir(parents=True, exist_ok=True)
        self.reports_dir.mkdir(parents=True, exist_ok=True)
        self._write_lock = threading.Lock()

    # -- scenarios ---------------------------------------------------------

    def _scenario_path(self, scenario_id: str) -> Path:
        safe = scenario_id.replace("/", "_")
        return self.scenarios_dir / f"{safe}.json"

    def store_scenario(self, scenario: Scenario) -> str:
        """Store (or replace) a scenario under its own id."""
        text = json.dumps(scenario_to_dict(scenario), indent=2, sort_keys=True)
        with self._write_lock:
            _atomic_write(self._scenario_path(scenario.id), text + "\n")
        return scenario.id

    def get_scenario(self, scenario_id: str) -> Scenario | None:
        path = self._scenario_path(scenario_id)
        if not path.exists():
            return None
        return load_scenario(path)

    def scenario_ids(self) -> list[str]:
        return sorted(p.stem for p in self.scenarios_dir.glob("*.json"))

    # -- reports -----------------------------------------------------------

    def _report_path(self, report_id: str) -> Path:
        safe = report_id.replace("/", "_")
        return self.reports_dir / f"{safe}.json"

    def store_report(self, content: Mapping) -> str:
        """Persist a report under a fresh id; reports are never rewritten."""
        report_id = uuid.uuid4().hex
        doc = dict(content)
        doc["id"] = report_id
        doc["timestamp"] = datetime.now(timezone.utc).isoformat()
        text = json.dumps(doc, indent=2, sort_keys=True)
        with self._write_lock:
            path = self._report_path(report_id)
            if path.exists():  # uuid collision; not expected, never overwrite
                raise FileExistsError(path)
            _atomic_write(path, text + "\n")
        return report_id

    def get_report(self, report_id: str) -> dict | None:
        path = self._report_path(report_id)
        if not path.exists():
            return None
        try:
            return json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ScenarioParseError(f"report {report_id} is not valid JSON: {exc}")

    def report_ids(self) -> list[str]:
        return sorted(p.stem for p in self.reports_dir.glob("*.json"))
