"""Policy scoring, Pareto frontier extraction, and constrained optima.

Dominance is two-dimensional on purpose: utility (maximized) against the
active metric's disparity (minimized).  Welfare is carried along on every
point for later stages but does not enter dominance; choosing between
frontier points on welfare grounds is the selection layer's job.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .canonical import canonical_json, cents
from .grids import Grid, enumerate_policies
from .metrics import MetricId, disparity, utility
from .scenario import Policy, Scenario, WelfareParams, policy_to_dict
from .welfare import one_step_welfare

__all__ = [
    "ParetoPoint",
    "Frontier",
    "Infeasibility",
    "score_policy",
    "score_policies",
    "pareto_frontier",
    "constrained_optimum",
    "utility_maximizer",
]


@dataclass(frozen=True)
class ParetoPoint:
    policy: Policy
    utility: float
    disparity: float
    worst_off_welfare: float

    def __post_init__(self) -> None:
        for name in ("utility", "disparity", "worst_off_welfare"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def as_dict(self) -> dict:
        return {
            "policy": policy_to_dict(self.policy),
            "utilityCents": cents(self.utility),
            "disparity": self.disparity,
            "worstOffWelfare": self.worst_off_welfare,
        }


@dataclass(frozen=True)
class Infeasibility:
    """No candidate satisfies a constraint; carries the binding constraint."""

    reason: str
    binding: dict

    def as_dict(self) -> dict:
        return {"infeasible": True, "reason": self.reason, "binding": self.binding}


@dataclass(frozen=True)
class Frontier:
    metric: MetricId
    points: tuple[ParetoPoint, ...]

    def as_dict(self) -> dict:
        return {
            "metric": self.metric.value,
            "points": [p.as_dict() for p in self.points],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["utility", "disparity", "worst_off_welfare", "policy_json"])
        for p in self.points:
            writer.writerow(
                [
                    f"{p.utility:.9f}",
                    f"{p.disparity:.9f}",
                    f"{p.worst_off_welfare:.9f}",
                    canonical_json(policy_to_dict(p.policy)),
                ]
            )
        return buf.getvalue()


def score_policy(
    scenario: Scenario,
    policy: Policy,
    metric: MetricId,
    params: WelfareParams | None = None,
) -> ParetoPoint:
    outcome = one_step_welfare(scenario, policy, params)
    return ParetoPoint(
        policy=policy,
        utility=outcome.institution_utility,
        disparity=disparity(metric, scenario, policy),
        worst_off_welfare=outcome.worst_off_welfare,
    )


def score_policies(
    scenario: Scenario,
    metric: MetricId,
    grid: Grid | None = None,
    params: WelfareParams | None = None,
) -> list[ParetoPoint]:
    return [
        score_policy(scenario, p, metric, params)
        for p in enumerate_policies(scenario, grid)
    ]


def _dominates(a: ParetoPoint, b: ParetoPoint) -> bool:
    return (
        a.utility >= b.utility
        and a.disparity <= b.disparity
        and (a.utility > b.utility or a.disparity < b.disparity)
    )


def pareto_frontier(points: list[ParetoPoint], metric: MetricId | None = None) -> Frontier:
    """Non-dominated subset, descending in utility.

    Sort-and-sweep: after sorting by utility descending (disparity, then
    policy encoding as tie-breaks), a point survives iff its disparity is
    strictly below everything seen so far.  Identical (utility, disparity)
    pairs keep only the lexicographically smallest policy encoding.
    """
    if not points:
        raise ValueError("pareto_frontier needs at least one point")
    ordered = sorted(
        points,
        key=lambda p: (-p.utility, p.disparity, p.policy.encode()),
    )
    kept: list[ParetoPoint] = []
    best_disparity = math.inf
    for p in ordered:
        if p.disparity < best_disparity:
            kept.append(p)
            best_disparity = p.disparity
    if metric is None:
        metric = MetricId.DEMOGRAPHIC_PARITY
    return Frontier(metric=MetricId(metric), points=tuple(kept))


def constrained_optimum(
    scenario: Scenario,
    metric: MetricId,
    bound: float | None,
    grid: Grid | None = None,
    params: WelfareParams | None = None,
) -> ParetoPoint | Infeasibility:
    """Utility-maximal grid policy with disparity within the bound.

    ``bound`` of None (or infinity) drops the constraint.  Ties break toward
    lower disparity, then the smaller policy encoding, so results are
    reproducible across runs and platforms.
    """
    if bound is not None and bound < 0.0:
        raise ValueError("bound must be >= 0")
    best: ParetoPoint | None = None
    best_key: tuple | None = None
    for policy in enumerate_policies(scenario, grid):
        point = score_policy(scenario, policy, metric, params)
        if bound is not None and point.disparity > bound:
            continue
        key = (-point.utility, point.disparity, point.policy.encode())
        if best_key is None or key < best_key:
            best, best_key = point, key
    if best is None:
        return Infeasibility(
            reason=(
                f"no grid policy keeps {metric} disparity within {bound}"
            ),
            binding={"metric": MetricId(metric).value, "bound": bound},
        )
    return best


def utility_maximizer(
    scenario: Scenario,
    metric: MetricId,
    grid: Grid | None = None,
    params: WelfareParams | None = None,
) -> ParetoPoint:
    """Unconstrained utility maximizer on the grid (same tie-breaks)."""
    point = constrained_optimum(scenario, metric, None, grid, params)
    assert not isinstance(point, Infeasibility)  # unconstrained cannot fail
    return point
