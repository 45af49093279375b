"""Request handling shared by the CLI and the HTTP service.

Both entry points translate their inputs into the same plain request dicts
and call the functions here, so a CLI invocation and an HTTP call with the
same inputs produce the same payload dict and, through the canonical
serializer, the same bytes.  Keeping this layer free of any transport
imports is what makes that equivalence structural.
"""

from __future__ import annotations

from typing import Mapping

from .grids import Grid, parse_grid
from .impossibility import joint_feasible
from .metrics import MetricId, fairness_report
from .pareto import Frontier, pareto_frontier, score_policies
from .scenario import (
    Policy,
    Scenario,
    ScenarioParseError,
    ThresholdRule,
    WelfareParams,
    policy_from_dict,
    welfare_params_from_dict,
)
from .selector import (
    DEFAULT_DISPARITY_BOUND,
    Infeasibility,
    SelectionResult,
    SustainabilityConstraint,
    cross_check,
    select,
)
from .tree import DecisionTree, builtin_tree, traverse, tree_from_dict, tree_to_dict
from .welfare import ledger_from_dict, long_run_drift, one_step_welfare

__all__ = [
    "resolve_policy",
    "resolve_params",
    "resolve_grid",
    "run_metrics",
    "run_frontier",
    "frontier_csv",
    "run_impossibility",
    "run_simulate",
    "trajectory_csv",
    "run_select",
    "run_tree",
    "build_run_report",
]


def resolve_policy(scenario: Scenario, body: Mapping) -> Policy:
    """Policy from a request: inline document, named policy, or threshold."""
    if "policy" in body:
        policy = policy_from_dict(body["policy"])
        scenario.check_policy(policy)
        return policy
    if "policyName" in body:
        name = str(body["policyName"])
        if name not in scenario.policies:
            raise ScenarioParseError(
                f"scenario {scenario.id} has no policy named {name!r}"
            )
        return scenario.policies[name]
    if "threshold" in body:
        th = float(body["threshold"])
        return Policy(rules={gid: ThresholdRule(th) for gid in scenario.group_ids})
    raise ScenarioParseError("request needs 'policy', 'policyName', or 'threshold'")


def resolve_params(scenario: Scenario, body: Mapping) -> WelfareParams:
    if "welfareParams" in body:
        return welfare_params_from_dict(body["welfareParams"])
    return scenario.welfare_params


def resolve_grid(body: Mapping) -> Grid:
    return parse_grid(body.get("grid"))


def _metric_from(body: Mapping, key: str = "metric") -> MetricId:
    if key not in body:
        raise ScenarioParseError(f"request needs '{key}'")
    try:
        return MetricId(str(body[key]))
    except ValueError:
        raise ScenarioParseError(
            f"unknown metric {body[key]!r}; valid: {[m.value for m in MetricId]}"
        ) from None


def run_metrics(scenario: Scenario, body: Mapping) -> dict:
    policy = resolve_policy(scenario, body)
    return fairness_report(scenario, policy).as_dict()


def _frontier(scenario: Scenario, body: Mapping) -> Frontier:
    metric = _metric_from(body)
    params = resolve_params(scenario, body)
    points = score_policies(scenario, metric, resolve_grid(body), params)
    return pareto_frontier(points, metric)


def run_frontier(scenario: Scenario, body: Mapping) -> dict:
    return _frontier(scenario, body).as_dict()


def frontier_csv(scenario: Scenario, body: Mapping) -> str:
    return _frontier(scenario, body).to_csv()


def run_impossibility(scenario: Scenario, body: Mapping) -> dict:
    if "metrics" not in body:
        raise ScenarioParseError("request needs 'metrics'")
    raw = body["metrics"]
    if isinstance(raw, str):
        raw = [tok for tok in raw.split(",") if tok]
    try:
        metrics = [MetricId(str(m)) for m in raw]
    except ValueError as exc:
        raise ScenarioParseError(f"unknown metric in 'metrics': {exc}") from None
    epsilon = float(body.get("epsilon", 0.01))
    report = joint_feasible(scenario, metrics, epsilon, resolve_grid(body))
    return report.as_dict()


def run_simulate(scenario: Scenario | None, body: Mapping) -> dict:
    """One-step welfare plus a drift trajectory; or ledger arithmetic.

    A body carrying 'ledger' is a pure accounting request and needs no
    policy or scenario; anything else evaluates a policy on the scenario.
    """
    if "ledger" in body:
        return ledger_from_dict(body["ledger"]).as_dict()
    policy = resolve_policy(scenario, body)
    params = resolve_params(scenario, body)
    horizon = int(body.get("horizon", 5))
    outcome = one_step_welfare(scenario, policy, params)
    trajectory = long_run_drift(scenario, policy, params, horizon)
    return {
        "welfare": outcome.as_dict(),
        "trajectory": trajectory.as_dict(),
    }


def trajectory_csv(scenario: Scenario, body: Mapping) -> str:
    policy = resolve_policy(scenario, body)
    params = resolve_params(scenario, body)
    horizon = int(body.get("horizon", 5))
    return long_run_drift(scenario, policy, params, horizon).to_csv()


def _selection(
    scenario: Scenario, body: Mapping
) -> SelectionResult | Infeasibility:
    params = resolve_params(scenario, body)
    if "minUtilityCents" in body:
        floor = int(body["minUtilityCents"]) / 100.0
    else:
        floor = float(body.get("minUtility", 0.0))
    candidates = body.get("candidates")
    if isinstance(candidates, str):
        candidates = [tok for tok in candidates.split(",") if tok]
    return select(
        scenario,
        params=params,
        constraint=SustainabilityConstraint(min_institution_utility=floor),
        grid=resolve_grid(body),
        bound=float(body.get("bound", DEFAULT_DISPARITY_BOUND)),
        candidates=(
            [MetricId(str(m)) for m in candidates] if candidates is not None else None
        ),
    )


def run_select(scenario: Scenario, body: Mapping) -> tuple[dict, bool]:
    """Selection payload and whether it is the infeasibility variant.

    With 'treeMetric' in the body the payload additionally carries the
    questionnaire cross-check, so a caller can never see the tree's advice
    without the welfare verdict next to it.
    """
    result = _selection(scenario, body)
    payload = result.as_dict()
    if "treeMetric" in body:
        check = cross_check(
            scenario,
            _metric_from(body, "treeMetric"),
            result,
            params=resolve_params(scenario, body),
            grid=resolve_grid(body),
            bound=float(body.get("bound", DEFAULT_DISPARITY_BOUND)),
        )
        payload = dict(payload)
        payload["crossCheck"] = check.as_dict()
    return payload, isinstance(result, Infeasibility)


def _tree_from(body: Mapping) -> DecisionTree:
    if "tree" in body:
        return tree_from_dict(body["tree"])
    return builtin_tree()


def run_tree(body: Mapping) -> dict:
    """Traverse with answers, or describe the tree when none are given."""
    tree = _tree_from(body)
    if "answers" not in body:
        return tree_to_dict(tree)
    answers = body["answers"]
    if not isinstance(answers, Mapping):
        raise ScenarioParseError("field answers must be an object")
    return traverse(tree, {str(k): str(v) for k, v in answers.items()}).as_dict()


def build_run_report(scenario: Scenario, body: Mapping) -> tuple[dict, bool]:
    """Assemble the full persistable report for one scenario run.

    Contains the selection, the frontier it chose from, and the fairness and
    welfare readouts of the chosen policy.  On infeasibility the per-policy
    sections are null and the selection section carries the explanation.
    """
    result = _selection(scenario, body)
    infeasible = isinstance(result, Infeasibility)
    params = resolve_params(scenario, body)
    if infeasible:
        metric = MetricId.DEMOGRAPHIC_PARITY
    else:
        metric = result.chosen_metric
    points = score_policies(scenario, metric, resolve_grid(body), params)
    frontier = pareto_frontier(points, metric)
    content: dict = {
        "scenarioId": scenario.id,
        "selection": result.as_dict(),
        "frontier": frontier.as_dict(),
        "fairness": None,
        "welfare": None,
    }
    if not infeasible:
        content["fairness"] = fairness_report(scenario, result.chosen_policy).as_dict()
        content["welfare"] = one_step_welfare(
            scenario, result.chosen_policy, params
        ).as_dict()
    return content, infeasible
