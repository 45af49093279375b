"""HTTP face of the engine.

Thin by design: every endpoint parses a JSON body, delegates to the shared
request layer, and serializes the payload through the canonical encoder, so
responses are byte-identical to what the CLI and a direct library call
produce for the same inputs.  Selection requests additionally persist a full
run report; the fresh report id travels in the ``X-Report-Id`` header so the
response body stays canonical.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from . import reporting
from .canonical import canonical_bytes
from .scenario import ScenarioError, ScenarioParseError, scenario_from_dict, scenario_to_dict
from .workspace import Workspace

__all__ = ["create_app", "serve"]


def _json_response(payload, status: int = 200, headers: dict | None = None) -> Response:
    return Response(
        content=canonical_bytes(payload),
        status_code=status,
        media_type="application/json",
        headers=headers,
    )


def _error(status: int, message: str) -> Response:
    return _json_response({"error": message}, status)


async def _body(request: Request) -> dict:
    raw = await request.body()
    if not raw:
        return {}
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"request body is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioParseError("request body must be a JSON object")
    return doc


def create_app(workspace: Workspace | None = None) -> FastAPI:
    ws = workspace if workspace is not None else Workspace()
    app = FastAPI(title="navigator", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
        expose_headers=["X-Report-Id"],
    )

    @app.exception_handler(ScenarioError)
    async def _scenario_error(request: Request, exc: ScenarioError) -> Response:
        return _error(400, str(exc))

    def _load(scenario_id: str):
        scenario = ws.get_scenario(scenario_id)
        if scenario is None:
            return None, _error(404, f"no scenario with id {scenario_id!r}")
        return scenario, None

    @app.post("/scenarios")
    async def post_scenario(request: Request) -> Response:
        scenario = scenario_from_dict(await _body(request))
        ws.store_scenario(scenario)
        return _json_response({"id": scenario.id}, status=201)

    @app.get("/scenarios/{scenario_id}")
    async def get_scenario(scenario_id: str) -> Response:
        scenario, missing = _load(scenario_id)
        if missing is not None:
            return missing
        return _json_response(scenario_to_dict(scenario))

    @app.post("/scenarios/{scenario_id}/metrics")
    async def post_metrics(scenario_id: str, request: Request) -> Response:
        scenario, missing = _load(scenario_id)
        if missing is not None:
            return missing
        return _json_response(reporting.run_metrics(scenario, await _body(request)))

    @app.post("/scenarios/{scenario_id}/frontier")
    async def post_frontier(
        scenario_id: str, request: Request, format: str = "json"
    ) -> Response:
        scenario, missing = _load(scenario_id)
        if missing is not None:
            return missing
        body = await _body(request)
        if format == "csv":
            return Response(
                content=reporting.frontier_csv(scenario, body),
                media_type="text/csv",
            )
        return _json_response(reporting.run_frontier(scenario, body))

    @app.post("/scenarios/{scenario_id}/impossibility")
    async def post_impossibility(scenario_id: str, request: Request) -> Response:
        scenario, missing = _load(scenario_id)
        if missing is not None:
            return missing
        return _json_response(
            reporting.run_impossibility(scenario, await _body(request))
        )

    @app.post("/scenarios/{scenario_id}/simulate")
    async def post_simulate(
        scenario_id: str, request: Request, format: str = "json"
    ) -> Response:
        scenario, missing = _load(scenario_id)
        if missing is not None:
            return missing
        body = await _body(request)
        if format == "csv":
            return Response(
                content=reporting.trajectory_csv(scenario, body),
                media_type="text/csv",
            )
        return _json_response(reporting.run_simulate(scenario, body))

    @app.post("/scenarios/{scenario_id}/select")
    async def post_select(scenario_id: str, request: Request) -> Response:
        scenario, missing = _load(scenario_id)
        if missing is not None:
            return missing
        body = await _body(request)
        payload, _infeasible = reporting.run_select(scenario, body)
        report_content, _ = reporting.build_run_report(scenario, body)
        report_id = ws.store_report(report_content)
        return _json_response(payload, headers={"X-Report-Id": report_id})

    @app.get("/tree")
    async def get_tree() -> Response:
        return _json_response(reporting.run_tree({}))

    @app.post("/tree/traverse")
    async def post_traverse(request: Request) -> Response:
        body = await _body(request)
        body.setdefault("answers", {})
        return _json_response(reporting.run_tree(body))

    @app.get("/reports/{report_id}")
    async def get_report(report_id: str) -> Response:
        report = ws.get_report(report_id)
        if report is None:
            return _error(404, f"no report with id {report_id!r}")
        return _json_response(report)

    return app


def serve(host: str = "127.0.0.1", port: int = 8000, workspace: Workspace | None = None) -> None:
    import uvicorn

    uvicorn.run(create_app(workspace), host=host, port=port)
