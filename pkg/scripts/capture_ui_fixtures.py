"""Regenerate the frontend test fixtures from the live service code.

Each file under frontend/tests/fixtures/ is one response body, byte for
byte, so the TypeScript client's tests run against exactly what the
service emits.  Re-run this after changing any payload shape and re-run
the frontend suite to see what the change breaks.
"""

from __future__ import annotations

import argparse
import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from fairnav.service import create_app
from fairnav.workspace import Workspace

REPO = Path(__file__).resolve().parent.parent


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument(
        "--out",
        type=Path,
        default=REPO / "frontend" / "tests" / "fixtures",
        help="fixture output directory",
    )
    args = ap.parse_args()
    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)

    with tempfile.TemporaryDirectory() as ws:
        client = TestClient(create_app(Workspace(Path(ws))))

        for name in ["loan", "dp-harm", "healthcare-two-policy"]:
            doc = json.loads((REPO / "fixtures" / f"{name}.json").read_text())
            resp = client.post("/scenarios", json=doc)
            assert resp.status_code == 201, resp.text

        def save(fname: str, resp, expect: int = 200):
            assert resp.status_code == expect, (fname, resp.status_code, resp.text)
            (out / fname).write_bytes(resp.content)
            print(f"  {fname}  {len(resp.content)} bytes")
            return resp

        def trav(answers: dict) -> dict:
            return {"answers": answers}

        path2 = {
            "boost_policy": "no",
            "ground_truth": "available",
            "label_annotation": "succeeded",
            "evaluation": "recall",
            "sensitive_error": "false_positive",
        }

        save("tree.json", client.get("/tree"))
        save("traverse-empty.json", client.post("/tree/traverse", json=trav({})))
        save("traverse-yes.json",
             client.post("/tree/traverse", json=trav({"boost_policy": "yes"})))
        save("traverse-path1.json", client.post("/tree/traverse", json=trav(
            {"boost_policy": "yes", "representation": "proportional"})))
        save("traverse-partial.json",
             client.post("/tree/traverse", json=trav({"boost_policy": "no"})))
        for fname, upto in [
            ("traverse-no-available.json", 2),
            ("traverse-no-av-succeeded.json", 3),
            ("traverse-no-av-succ-recall.json", 4),
            ("traverse-path2.json", 5),
        ]:
            partial = dict(list(path2.items())[:upto])
            save(fname, client.post("/tree/traverse", json=trav(partial)))

        sel = save("select-loan.json",
                   client.post("/scenarios/loan/select", json={"minUtility": 0.0}))
        save("report-loan.json", client.get(f"/reports/{sel.headers['x-report-id']}"))
        save("select-infeasible.json",
             client.post("/scenarios/loan/select", json={"minUtility": 10.0}))

        r_dp = save("select-dpharm-tree.json", client.post(
            "/scenarios/dp-harm/select", json={"treeMetric": "demographic_parity"}))
        save("report-dpharm-dp.json",
             client.get(f"/reports/{r_dp.headers['x-report-id']}"))
        r_pe = save("select-dpharm-tree-pe.json", client.post(
            "/scenarios/dp-harm/select", json={"treeMetric": "predictive_equality"}))
        save("report-dpharm-pe.json",
             client.get(f"/reports/{r_pe.headers['x-report-id']}"))

        save("frontier-loan-pe.json", client.post(
            "/scenarios/loan/frontier", json={"metric": "predictive_equality"}))
        save("frontier-single.json", client.post(
            "/scenarios/healthcare-two-policy/frontier",
            json={"metric": "equal_opportunity",
                  "grid": {"kind": "named", "names": ["balanced"]}}))

        save("metrics-loan-05.json", client.post(
            "/scenarios/loan/metrics", json={"threshold": 0.5}))
        save("metrics-loan-point.json", client.post(
            "/scenarios/loan/metrics",
            json={"policy": {"perGroup": {"a": {"threshold": 0.4},
                                          "b": {"threshold": 0.55}}}}))
        save("simulate-loan.json", client.post(
            "/scenarios/loan/simulate", json={"threshold": 0.5, "horizon": 5}))
        save("simulate-loan-recommended.json", client.post(
            "/scenarios/loan/simulate",
            json={"policy": {"perGroup": {"a": {"threshold": 0.4},
                                          "b": {"threshold": 0.75}}},
                  "horizon": 5}))

        save("scenario-loan.json", client.get("/scenarios/loan"))
        save("scenario-dpharm.json", client.get("/scenarios/dp-harm"))
        save("error-metrics.json", client.post(
            "/scenarios/loan/metrics",
            json={"policy": {"perGroup": {"a": {"threshold": 2.5}}}}), expect=400)

    print(f"fixtures written to {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
