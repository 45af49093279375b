"""Command-line entry point.

Subcommands mirror the HTTP endpoints and share their request layer, so
``--json`` output is byte-identical to the corresponding API response body
(no trailing newline in that mode, for exactly that reason).

Exit codes: 0 success, 1 validation or input error, 2 infeasible selection,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import reporting
from .canonical import canonical_bytes
from .scenario import ScenarioError, ScenarioParseError, load_scenario
from .tree import load_tree
from .workspace import Workspace, default_workspace_root

__all__ = ["main", "build_parser"]

EX_OK = 0
EX_INVALID = 1
EX_INFEASIBLE = 2
EX_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage failures exit with the usage code."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _emit_json(payload) -> None:
    sys.stdout.buffer.write(canonical_bytes(payload))
    sys.stdout.buffer.flush()


def _read_json(source: str) -> dict:
    # accept inline JSON so policies do not have to live in files
    text = source if source.lstrip().startswith("{") else Path(source).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"{source}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioParseError(f"{source}: expected a JSON object")
    return doc


def _parse_answers(text: str) -> dict[str, str]:
    answers = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ScenarioParseError(
                f"answer {chunk!r} is not of the form node=token"
            )
        node, token = chunk.split("=", 1)
        answers[node.strip()] = token.strip()
    return answers


def _policy_body(args) -> dict:
    body: dict = {}
    if getattr(args, "policy", None):
        body["policy"] = _read_json(args.policy)
    if getattr(args, "policy_name", None):
        body["policyName"] = args.policy_name
    if getattr(args, "threshold", None) is not None:
        body["threshold"] = args.threshold
    return body


def _common_body(args) -> dict:
    body: dict = {}
    if getattr(args, "grid", None):
        body["grid"] = _read_json(args.grid)
    if getattr(args, "welfare_params", None):
        body["welfareParams"] = _read_json(args.welfare_params)
    return body


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# -- subcommand handlers ---------------------------------------------------


def _cmd_validate(args) -> int:
    scenario = load_scenario(Path(args.scenario))
    n_bins = sum(len(g.bins) for g in scenario.groups)
    if args.json:
        _emit_json(
            {
                "id": scenario.id,
                "valid": True,
                "groups": len(scenario.groups),
                "bins": n_bins,
            }
        )
    else:
        print(
            f"scenario {scenario.id!r} OK: {len(scenario.groups)} groups, "
            f"{n_bins} bins"
        )
    return EX_OK


def _cmd_metrics(args) -> int:
    scenario = load_scenario(Path(args.scenario))
    payload = reporting.run_metrics(scenario, _policy_body(args))
    if args.json:
        _emit_json(payload)
        return EX_OK
    print(f"accuracy {payload['accuracy']:.6f}  utility {payload['utilityCents']}c")
    for metric, value in payload["disparities"].items():
        shown = "n/a" if value is None else f"{value:.6f}"
        print(f"  {metric}: {shown}")
    return EX_OK


def _cmd_frontier(args) -> int:
    scenario = load_scenario(Path(args.scenario))
    body = {"metric": args.metric, **_common_body(args)}
    if args.csv:
        _write_text(args.csv, reporting.frontier_csv(scenario, body))
        return EX_OK
    payload = reporting.run_frontier(scenario, body)
    if args.json:
        _emit_json(payload)
        return EX_OK
    print(f"{len(payload['points'])} frontier points for {payload['metric']}")
    for p in payload["points"]:
        print(
            f"  utility {p['utilityCents']}c  disparity {p['disparity']:.6f}  "
            f"worst-off {p['worstOffWelfare']:.6f}"
        )
    return EX_OK


def _cmd_impossibility(args) -> int:
    scenario = load_scenario(Path(args.scenario))
    body = {"metrics": args.metrics, "epsilon": args.epsilon, **_common_body(args)}
    payload = reporting.run_impossibility(scenario, body)
    if args.json:
        _emit_json(payload)
        return EX_OK
    print(
        f"{payload['witnessCount']} witnesses at epsilon {payload['epsilon']} "
        f"for {{{', '.join(payload['metrics'])}}}"
    )
    print(f"degenerate only: {payload['degenerateOnly']}")
    return EX_OK


def _cmd_simulate(args) -> int:
    if args.ledger:
        body: dict = {"ledger": _read_json(args.ledger)}
        payload = reporting.run_simulate(None, body)
        if args.json:
            _emit_json(payload)
            return EX_OK
        for delta in payload["deltas"]:
            line = (
                f"{delta['label']}: computed delta {delta['computedDeltaCents']}c"
            )
            if "statedDeltaCents" in delta:
                verdict = "matches" if delta["matchesStated"] else "MISMATCH"
                line += f", stated {delta['statedDeltaCents']}c ({verdict})"
            print(line)
        return EX_OK
    if not args.scenario:
        raise ScenarioParseError("simulate needs --scenario unless --ledger is given")
    scenario = load_scenario(Path(args.scenario))
    body = {**_policy_body(args), "horizon": args.horizon, **_common_body(args)}
    if args.csv:
        _write_text(args.csv, reporting.trajectory_csv(scenario, body))
        return EX_OK
    payload = reporting.run_simulate(scenario, body)
    if args.json:
        _emit_json(payload)
        return EX_OK
    welfare = payload["welfare"]
    print(
        f"worst-off {welfare['worstOffGroup']!r} welfare "
        f"{welfare['worstOffWelfare']:.6f}, institution "
        f"{welfare['institutionUtilityCents']}c"
    )
    for gid, means in payload["trajectory"]["perGroupMeanScore"].items():
        print(f"  {gid}: mean score {means[0]:.4f} -> {means[-1]:.4f}")
    return EX_OK


def _select_body(args) -> dict:
    body: dict = {**_common_body(args)}
    if args.min_utility is not None:
        body["minUtility"] = args.min_utility
    if args.bound is not None:
        body["bound"] = args.bound
    if getattr(args, "candidates", None):
        body["candidates"] = args.candidates
    return body


def _resolve_tree_metric(args) -> str | None:
    if getattr(args, "tree_metric", None):
        return args.tree_metric
    if getattr(args, "answers", None):
        tree = load_tree(args.tree) if getattr(args, "tree", None) else None
        body: dict = {"answers": _parse_answers(args.answers)}
        if tree is not None:
            from .tree import tree_to_dict

            body["tree"] = tree_to_dict(tree)
        traversal = reporting.run_tree(body)
        if traversal["leaf"] is None:
            open_questions = ", ".join(q["node"] for q in traversal["remaining"])
            raise ScenarioParseError(
                f"answers do not reach a leaf; open questions: {open_questions}"
            )
        return traversal["leaf"]
    return None


def _cmd_select(args) -> int:
    scenario = load_scenario(Path(args.scenario))
    body = _select_body(args)
    tree_metric = _resolve_tree_metric(args)
    if tree_metric is not None:
        body["treeMetric"] = tree_metric
    payload, infeasible = reporting.run_select(scenario, body)
    if args.json:
        _emit_json(payload)
        return EX_INFEASIBLE if infeasible else EX_OK
    if infeasible:
        print(f"infeasible: {payload['reason']}")
        return EX_INFEASIBLE
    print(f"principle: {payload['principle']}")
    print(f"metric:    {payload['chosenMetric']}")
    point = payload["chosenPoint"]
    print(
        f"policy:    utility {point['utilityCents']}c, "
        f"disparity {point['disparity']:.6f}"
    )
    print(
        f"worst-off: {payload['worstOffGroup']!r} at welfare "
        f"{payload['worstOffWelfare']:.6f}"
    )
    if "crossCheck" in payload:
        check = payload["crossCheck"]
        print(f"cross-check vs tree ({check['treeMetric']}): {check['verdict']}")
        if check["worstOffWelfareDelta"] is not None:
            print(
                "  worst-off welfare delta (selector minus tree): "
                f"{check['worstOffWelfareDelta']:+.6f}"
            )
    return EX_OK


def _cmd_tree(args) -> int:
    body: dict = {}
    if args.tree:
        from .tree import tree_to_dict

        body["tree"] = tree_to_dict(load_tree(args.tree))
    if args.answers is not None:
        body["answers"] = _parse_answers(args.answers)
    payload = reporting.run_tree(body)
    if args.json:
        _emit_json(payload)
        return EX_OK
    if args.answers is None:
        for node in payload["nodes"]:
            tokens = "/".join(node["answers"])
            print(f"[{node['id']}] {node['question']} ({tokens})")
        return EX_OK
    if payload["leaf"] is not None:
        print(payload["leaf"])
        return EX_OK
    for q in payload["remaining"]:
        print(f"[{q['node']}] {q['question']}")
    return EX_OK


def _cmd_report(args) -> int:
    ws = Workspace(args.workspace)
    if args.id:
        report = ws.get_report(args.id)
        if report is None:
            raise ScenarioParseError(f"no report with id {args.id!r}")
        if args.json:
            _emit_json(report)
        else:
            print(json.dumps(report, indent=2, sort_keys=True))
        return EX_OK
    if not args.scenario:
        raise ScenarioParseError("report needs --scenario (or --id to fetch)")
    scenario = load_scenario(Path(args.scenario))
    content, infeasible = reporting.build_run_report(scenario, _select_body(args))
    report_id = ws.store_report(content)
    if args.json:
        _emit_json(ws.get_report(report_id))
    else:
        print(f"report {report_id} written to {ws.reports_dir}")
    return EX_INFEASIBLE if infeasible else EX_OK


def _cmd_serve(args) -> int:
    from .service import serve

    serve(host=args.host, port=args.port, workspace=Workspace(args.workspace))
    return EX_OK


# -- parser wiring ---------------------------------------------------------


def _add_policy_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--policy", help="path to a policy JSON file")
    group.add_argument(
        "--policy-name", help="name of a policy embedded in the scenario"
    )
    group.add_argument(
        "--threshold", type=float, help="common threshold for every group"
    )


def _add_select_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--min-utility",
        type=float,
        default=None,
        help="sustainability floor on institution utility (default 0)",
    )
    p.add_argument(
        "--bound",
        type=float,
        default=None,
        help="disparity bound for constrained optima (default 0.01)",
    )
    p.add_argument("--grid", help="path to a grid spec JSON file")
    p.add_argument(
        "--welfare-params", help="path to a welfare params JSON file (override)"
    )
    p.add_argument(
        "--candidates", help="comma-separated candidate metrics for the ranking"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="navigator", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="canonical JSON on stdout")
        return p

    p = add("validate", _cmd_validate, "check a scenario file")
    p.add_argument("--scenario", required=True)

    p = add("metrics", _cmd_metrics, "fairness report for one policy")
    p.add_argument("--scenario", required=True)
    _add_policy_flags(p)

    p = add("frontier", _cmd_frontier, "fairness/utility Pareto frontier")
    p.add_argument("--scenario", required=True)
    p.add_argument("--metric", required=True)
    p.add_argument("--grid", help="path to a grid spec JSON file")
    p.add_argument("--welfare-params", help="path to a welfare params JSON file")
    p.add_argument("--csv", help="write frontier CSV to this path ('-' for stdout)")

    p = add("impossibility", _cmd_impossibility, "joint satisfiability search")
    p.add_argument("--scenario", required=True)
    p.add_argument(
        "--metrics", required=True, help="comma-separated metric ids"
    )
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--grid", help="path to a grid spec JSON file")

    p = add("simulate", _cmd_simulate, "welfare outcome and score drift")
    p.add_argument("--scenario", help="scenario file (not needed with --ledger)")
    _add_policy_flags(p)
    p.add_argument("--horizon", type=int, default=5)
    p.add_argument("--grid", help=argparse.SUPPRESS)
    p.add_argument("--welfare-params", help="path to a welfare params JSON file")
    p.add_argument("--csv", help="write trajectory CSV to this path ('-' for stdout)")
    p.add_argument("--ledger", help="path to a ledger comparison JSON file")

    p = add("select", _cmd_select, "choose fairness measure and operating point")
    p.add_argument("--scenario", required=True)
    _add_select_flags(p)
    p.add_argument(
        "--tree-metric", help="questionnaire outcome to cross-check against"
    )
    p.add_argument(
        "--answers",
        help="tree answers (node=token,...) to derive the cross-check metric",
    )
    p.add_argument("--tree", help="path to a tree JSON file (default: built-in)")

    p = add("tree", _cmd_tree, "show or traverse the decision tree")
    p.add_argument("--tree", help="path to a tree JSON file (default: built-in)")
    p.add_argument("--answers", help="answers as node=token,...")

    p = add("report", _cmd_report, "build or fetch a persisted run report")
    p.add_argument("--scenario")
    p.add_argument("--id", help="fetch an existing report by id")
    p.add_argument(
        "--workspace", default=str(default_workspace_root()), help="workspace root"
    )
    _add_select_flags(p)

    p = add("serve", _cmd_serve, "run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument(
        "--workspace", default=str(default_workspace_root()), help="workspace root"
    )

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_INVALID
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_INVALID


if __name__ == "__main__":
    sys.exit(main())
