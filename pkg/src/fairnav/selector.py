"""Principled choice of fairness measure and operating point.

The procedure follows two lexically ordered principles.  When the decision
gates access to basic opportunities (education, jobs and the like), parity of
opportunity itself is what matters: the measure is conditional demographic
parity (plain demographic parity when no conditioning strata are tagged) and
the operating point is the best sustainable policy within the parity bound.
In the general case inequality is acceptable only insofar as it benefits the
worst-off, so measures are ranked by how much tracking them would move the
worst-off group's absolute welfare, and the operating point maximizes the
worst-off group's welfare subject to the institution staying viable.

Every selection carries a justification trace: an ordered list of fired
rules with the quantities they consumed.  ``replay`` re-executes a result's
recorded inputs and checks that the same selection comes out, which makes
the trace an audit log rather than prose.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

from .canonical import canonical_json, cents
from .grids import Grid, enumerate_policies, parse_grid
from .metrics import METRIC_CATALOG, MetricId
from .pareto import (
    Infeasibility,
    ParetoPoint,
    score_policy,
    utility_maximizer,
)
from .scenario import (
    Policy,
    Scenario,
    WelfareParams,
    welfare_params_from_dict,
    welfare_params_to_dict,
)
from .welfare import identify_worst_off

__all__ = [
    "Principle",
    "SustainabilityConstraint",
    "MetricImpact",
    "JustificationStep",
    "SelectionResult",
    "CrossCheck",
    "identify_worst_off",
    "rank_metrics_by_impact",
    "select",
    "replay",
    "cross_check",
    "DEFAULT_DISPARITY_BOUND",
]

DEFAULT_DISPARITY_BOUND = 0.01


class Principle(str, Enum):
    FAIR_EQUALITY_OF_OPPORTUNITY = "fair_equality_of_opportunity"
    DIFFERENCE_PRINCIPLE = "difference_principle"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SustainabilityConstraint:
    """Floor on institutional utility below which a policy is not viable."""

    min_institution_utility: float = 0.0

    def as_dict(self) -> dict:
        return {"minInstitutionUtilityCents": cents(self.min_institution_utility)}


@dataclass(frozen=True)
class MetricImpact:
    metric: MetricId
    impact: float | None  # None when the metric's bound is infeasible
    infeasible: bool = False

    def as_dict(self) -> dict:
        return {
            "metric": self.metric.value,
            "impact": self.impact,
            "infeasible": self.infeasible,
        }


@dataclass(frozen=True)
class JustificationStep:
    rule: str
    text: str
    data: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"rule": self.rule, "text": self.text, "data": self.data}


@dataclass(frozen=True)
class SelectionResult:
    principle: Principle
    chosen_metric: MetricId
    metric_ranking: tuple[MetricImpact, ...]
    chosen_policy: Policy
    chosen_point: ParetoPoint
    worst_off_group: str
    worst_off_welfare: float
    justification: tuple[JustificationStep, ...]

    def as_dict(self) -> dict:
        from .scenario import policy_to_dict

        return {
            "principle": self.principle.value,
            "chosenMetric": self.chosen_metric.value,
            "metricRanking": [r.as_dict() for r in self.metric_ranking],
            "chosenPolicy": policy_to_dict(self.chosen_policy),
            "chosenPoint": self.chosen_point.as_dict(),
            "worstOffGroup": self.worst_off_group,
            "worstOffWelfare": self.worst_off_welfare,
            "justification": [s.as_dict() for s in self.justification],
        }


def _default_candidates(scenario: Scenario) -> tuple[MetricId, ...]:
    candidates = [
        MetricId.DEMOGRAPHIC_PARITY,
        MetricId.EQUAL_OPPORTUNITY,
        MetricId.PREDICTIVE_EQUALITY,
        MetricId.EQUALIZED_ODDS,
        MetricId.PREDICTIVE_PARITY,
    ]
    if scenario.strata:
        candidates.append(MetricId.CONDITIONAL_DEMOGRAPHIC_PARITY)
    return tuple(sorted(candidates, key=METRIC_CATALOG.index))


def _constrained_best(
    scenario: Scenario,
    metric: MetricId,
    bound: float | None,
    min_utility: float | None,
    grid: Grid | None,
    params: WelfareParams | None,
) -> ParetoPoint | None:
    """Utility-max point within a disparity bound and a utility floor."""
    best: ParetoPoint | None = None
    best_key: tuple | None = None
    for policy in enumerate_policies(scenario, grid):
        point = score_policy(scenario, policy, metric, params)
        if bound is not None and point.disparity > bound:
            continue
        if min_utility is not None and point.utility < min_utility:
            continue
        key = (-point.utility, point.disparity, point.policy.encode())
        if best_key is None or key < best_key:
            best, best_key = point, key
    return best


def rank_metrics_by_impact(
    scenario: Scenario,
    candidates: Sequence[MetricId] | None = None,
    params: WelfareParams | None = None,
    grid: Grid | None = None,
    bound: float = DEFAULT_DISPARITY_BOUND,
) -> tuple[MetricImpact, ...]:
    """Order metrics by how much enforcing them moves worst-off welfare.

    impact(m) = worst-off welfare at the best policy with disparity(m) within
    the bound, minus worst-off welfare at the unconstrained utility maximizer.
    A positive impact means tracking the metric helps the worst-off; negative
    means enforcing it at this bound actively harms them.  Infeasible bounds
    rank last, marked.  Ties keep catalog order.
    """
    if candidates is None:
        candidates = _default_candidates(scenario)
    ordered = sorted(
        dict.fromkeys(MetricId(m) for m in candidates), key=METRIC_CATALOG.index
    )
    if not ordered:
        raise ValueError("candidates must be non-empty")
    reference = utility_maximizer(scenario, ordered[0], grid, params)
    impacts: list[MetricImpact] = []
    for metric in ordered:
        point = _constrained_best(scenario, metric, bound, None, grid, params)
        if point is None:
            impacts.append(MetricImpact(metric=metric, impact=None, infeasible=True))
        else:
            impacts.append(
                MetricImpact(
                    metric=metric,
                    impact=point.worst_off_welfare - reference.worst_off_welfare,
                )
            )
    impacts.sort(
        key=lambda mi: (
            mi.infeasible,
            -(mi.impact if mi.impact is not None else 0.0),
            METRIC_CATALOG.index(mi.metric),
        )
    )
    return tuple(impacts)


def select(
    scenario: Scenario,
    params: WelfareParams | None = None,
    constraint: SustainabilityConstraint | None = None,
    grid: Grid | None = None,
    bound: float = DEFAULT_DISPARITY_BOUND,
    candidates: Sequence[MetricId] | None = None,
) -> SelectionResult | Infeasibility:
    """Choose a fairness measure and an operating point, with reasons.

    Returns an explicit :class:`Infeasibility` when no grid policy satisfies
    the sustainability constraint (or, in the opportunity context, the parity
    bound); that is a result, not an exception, so callers can render it.
    """
    params = params if params is not None else scenario.welfare_params
    constraint = constraint if constraint is not None else SustainabilityConstraint()
    grid_obj = grid if grid is not None else parse_grid(None)
    min_utility = constraint.min_institution_utility

    steps: list[JustificationStep] = [
        JustificationStep(
            rule="inputs",
            text="Recorded inputs for audit replay.",
            data={
                "scenarioId": scenario.id,
                "contextClass": scenario.context_class,
                "gridSpec": grid_obj.as_dict(),
                "disparityBound": bound,
                "minInstitutionUtilityCents": cents(min_utility),
                "welfareParams": welfare_params_to_dict(params),
                "candidates": (
                    [MetricId(m).value for m in candidates]
                    if candidates is not None
                    else None
                ),
            },
        )
    ]

    opportunity = scenario.context_class == "opportunity"
    principle = (
        Principle.FAIR_EQUALITY_OF_OPPORTUNITY
        if opportunity
        else Principle.DIFFERENCE_PRINCIPLE
    )
    steps.append(
        JustificationStep(
            rule="context_classification",
            text=(
                "Context gates access to basic opportunities; fair equality "
                "of opportunity takes lexical priority."
                if opportunity
                else "Context is a general distribution problem; the "
                "difference principle governs."
            ),
            data={"contextClass": scenario.context_class, "principle": principle.value},
        )
    )

    worst_off = identify_worst_off(scenario, params)
    tagged = [g.id for g in scenario.groups if g.ses_tag]
    steps.append(
        JustificationStep(
            rule="worst_off_identification",
            text=f"Worst-off group is {worst_off!r}.",
            data={
                "worstOffGroup": worst_off,
                "method": (
                    "ses_tag_override"
                    if params.ses_override and tagged
                    else "baseline_welfare"
                    if worst_off in params.baseline_welfare
                    else "mean_score_proxy"
                ),
                "sesTagged": tagged,
            },
        )
    )

    ranking = rank_metrics_by_impact(scenario, candidates, params, grid_obj, bound)
    steps.append(
        JustificationStep(
            rule="metric_ranking",
            text=(
                "Measures ranked by impact on worst-off welfare relative to "
                "the unconstrained utility maximizer."
                + (
                    "  Informational only: the opportunity principle fixes "
                    "the measure regardless of ranking."
                    if opportunity
                    else ""
                )
            ),
            data={"ranking": [r.as_dict() for r in ranking]},
        )
    )

    reference = utility_maximizer(
        scenario, ranking[0].metric, grid_obj, params
    )

    if opportunity:
        if scenario.strata:
            metric = MetricId.CONDITIONAL_DEMOGRAPHIC_PARITY
            metric_note = "strata are tagged, so the conditional variant applies"
        else:
            metric = MetricId.DEMOGRAPHIC_PARITY
            metric_note = "no strata are tagged, so plain demographic parity applies"
        steps.append(
            JustificationStep(
                rule="metric_choice_opportunity",
                text=f"Parity of opportunity requires {metric} ({metric_note}).",
                data={"chosenMetric": metric.value},
            )
        )
        point = _constrained_best(
            scenario, metric, bound, min_utility, grid_obj, params
        )
        if point is None:
            within_bound = _constrained_best(
                scenario, metric, bound, None, grid_obj, params
            )
            if within_bound is None:
                return Infeasibility(
                    reason=(
                        f"no grid policy keeps {metric} disparity within {bound}"
                    ),
                    binding={"metric": metric.value, "bound": bound},
                )
            return Infeasibility(
                reason=(
                    f"every policy within the {metric} bound falls below the "
                    "sustainability floor"
                ),
                binding={"minInstitutionUtilityCents": cents(min_utility)},
            )
        steps.append(
            JustificationStep(
                rule="policy_selection",
                text=(
                    "Best sustainable policy within the parity bound "
                    f"(disparity {point.disparity:.9f})."
                ),
                data={
                    "policy": point.policy.encode(),
                    "utilityCents": cents(point.utility),
                    "disparity": point.disparity,
                },
            )
        )
        steps.append(
            JustificationStep(
                rule="welfare_verification",
                text=(
                    "Verification: resulting worst-off welfare compared "
                    "against the unconstrained utility maximizer."
                ),
                data={
                    "worstOffWelfare": point.worst_off_welfare,
                    "worstOffWelfareAtUtilityMax": reference.worst_off_welfare,
                    "delta": point.worst_off_welfare - reference.worst_off_welfare,
                },
            )
        )
        return SelectionResult(
            principle=principle,
            chosen_metric=metric,
            metric_ranking=ranking,
            chosen_policy=point.policy,
            chosen_point=point,
            worst_off_group=worst_off,
            worst_off_welfare=point.worst_off_welfare,
            justification=tuple(steps),
        )

    # Difference principle: measure is the ranking head, operating point is
    # the maximin policy over the grid subject to the sustainability floor.
    metric = ranking[0].metric
    steps.append(
        JustificationStep(
            rule="metric_choice_difference",
            text=(
                f"{metric} has the largest impact on worst-off welfare"
                + (" (bound infeasible for every candidate)" if ranking[0].infeasible else "")
                + "."
            ),
            data={
                "chosenMetric": metric.value,
                "impact": ranking[0].impact,
                "infeasible": ranking[0].infeasible,
            },
        )
    )

    best: ParetoPoint | None = None
    best_key: tuple | None = None
    for policy in enumerate_policies(scenario, grid_obj):
        point = score_policy(scenario, policy, metric, params)
        if point.utility < min_utility:
            continue
        key = (-point.worst_off_welfare, -point.utility, point.policy.encode())
        if best_key is None or key < best_key:
            best, best_key = point, key
    if best is None:
        return Infeasibility(
            reason=(
                "no grid policy meets the sustainability floor "
                f"(institution utility >= {min_utility})"
            ),
            binding={"minInstitutionUtilityCents": cents(min_utility)},
        )
    steps.append(
        JustificationStep(
            rule="policy_selection",
            text=(
                "Maximin: policy maximizing worst-off welfare among "
                "sustainable policies."
            ),
            data={
                "policy": best.policy.encode(),
                "utilityCents": cents(best.utility),
                "worstOffWelfare": best.worst_off_welfare,
                "worstOffWelfareAtUtilityMax": reference.worst_off_welfare,
            },
        )
    )
    if best.worst_off_welfare < reference.worst_off_welfare:
        # cannot happen: the utility maximizer is itself a sustainable
        # candidate whenever it clears the floor
        steps.append(
            JustificationStep(
                rule="anomaly",
                text="Maximin fell below the utility maximizer's worst-off welfare.",
            )
        )
    return SelectionResult(
        principle=principle,
        chosen_metric=metric,
        metric_ranking=ranking,
        chosen_policy=best.policy,
        chosen_point=best,
        worst_off_group=worst_off,
        worst_off_welfare=best.worst_off_welfare,
        justification=tuple(steps),
    )


def replay(scenario: Scenario, result: SelectionResult) -> SelectionResult | Infeasibility:
    """Re-run a selection from its own recorded inputs.

    The first justification step carries everything the selection consumed;
    replaying it on the same scenario must reproduce the result bit for bit
    (compare via canonical JSON).  Raises ValueError when the recorded
    scenario id does not match.
    """
    inputs = result.justification[0]
    if inputs.rule != "inputs":
        raise ValueError("justification trace does not start with an inputs record")
    data = inputs.data
    if data["scenarioId"] != scenario.id:
        raise ValueError(
            f"trace was recorded for scenario {data['scenarioId']!r}, "
            f"not {scenario.id!r}"
        )
    params = welfare_params_from_dict(data["welfareParams"])
    constraint = SustainabilityConstraint(
        min_institution_utility=data["minInstitutionUtilityCents"] / 100.0
    )
    candidates = data.get("candidates")
    return select(
        scenario,
        params=params,
        constraint=constraint,
        grid=parse_grid(data["gridSpec"]),
        bound=data["disparityBound"],
        candidates=(
            [MetricId(m) for m in candidates] if candidates is not None else None
        ),
    )


def replays_identically(scenario: Scenario, result: SelectionResult) -> bool:
    """True when the audit replay reproduces the selection exactly."""
    played = replay(scenario, result)
    if isinstance(played, Infeasibility):
        return False
    return canonical_json(played.as_dict()) == canonical_json(result.as_dict())


@dataclass(frozen=True)
class CrossCheck:
    """Agreement report between the questionnaire tree and the selector."""

    tree_metric: MetricId
    selector_metric: MetricId | None
    concordant: bool | None
    worst_off_welfare_delta: float | None
    tree_optimum_welfare: float | None
    selector_optimum_welfare: float | None

    @property
    def verdict(self) -> str:
        if self.concordant is None:
            return "unavailable"
        return "concordant" if self.concordant else "discordant"

    def as_dict(self) -> dict:
        return {
            "treeMetric": self.tree_metric.value,
            "selectorMetric": (
                self.selector_metric.value if self.selector_metric else None
            ),
            "verdict": self.verdict,
            "concordant": self.concordant,
            "worstOffWelfareDelta": self.worst_off_welfare_delta,
            "treeOptimumWorstOffWelfare": self.tree_optimum_welfare,
            "selectorOptimumWorstOffWelfare": self.selector_optimum_welfare,
        }


def cross_check(
    scenario: Scenario,
    tree_metric: MetricId,
    selection: SelectionResult | Infeasibility,
    params: WelfareParams | None = None,
    grid: Grid | None = None,
    bound: float = DEFAULT_DISPARITY_BOUND,
) -> CrossCheck:
    """Compare the tree's answer with the selector's, in welfare terms.

    On disagreement the number to look at is ``worst_off_welfare_delta``:
    selector metric's constrained optimum minus the tree metric's, in
    worst-off welfare.  Positive means the questionnaire's measure would
    leave the worst-off group worse off than the selector's choice.
    """
    tree_metric = MetricId(tree_metric)
    if isinstance(selection, Infeasibility):
        return CrossCheck(
            tree_metric=tree_metric,
            selector_metric=None,
            concordant=None,
            worst_off_welfare_delta=None,
            tree_optimum_welfare=None,
            selector_optimum_welfare=None,
        )
    if tree_metric == selection.chosen_metric:
        return CrossCheck(
            tree_metric=tree_metric,
            selector_metric=selection.chosen_metric,
            concordant=True,
            worst_off_welfare_delta=None,
            tree_optimum_welfare=None,
            selector_optimum_welfare=None,
        )
    tree_opt = _constrained_best(scenario, tree_metric, bound, None, grid, params)
    sel_opt = _constrained_best(
        scenario, selection.chosen_metric, bound, None, grid, params
    )
    delta = None
    if tree_opt is not None and sel_opt is not None:
        delta = sel_opt.worst_off_welfare - tree_opt.worst_off_welfare
    return CrossCheck(
        tree_metric=tree_metric,
        selector_metric=selection.chosen_metric,
        concordant=False,
        worst_off_welfare_delta=delta,
        tree_optimum_welfare=(
            tree_opt.worst_off_welfare if tree_opt is not None else None
        ),
        selector_optimum_welfare=(
            sel_opt.worst_off_welfare if sel_opt is not None else None
        ),
    )
