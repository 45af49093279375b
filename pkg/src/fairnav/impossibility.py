"""Joint satisfiability of parity metrics by exhaustive grid search.

A witness is a grid policy whose disparity is within epsilon for every
requested metric at once.  When base rates differ across groups, the only
threshold policies that reconcile acceptance-rate, true-positive-rate, and
false-positive-rate parity are the degenerate ones (accept everyone or
reject everyone); the report makes that visible instead of asserting it.

One structural caveat, which is why the default search space is the
threshold grid: a policy that accepts every bin with the same probability c
gives every group acceptance rate, TPR, and FPR all equal to c, so the
constant lotteries on a tau grid satisfy all three parities exactly on any
scenario whatsoever.  Lotteries are "fair" in this sense precisely because
they ignore the scores.  The joint-satisfiability question is therefore only
informative over score-responsive policies; tau grids stay available for
exploration, but their reports will always contain the lottery witnesses.

``minmax_error`` is rejected here: it is an error level, not a parity, so
"jointly satisfied within epsilon" has no meaning for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .grids import Grid, ThresholdGrid, enumerate_policies
from .metrics import ConfigurationError, ConfusionStats, MetricId, confusion
from .scenario import Policy, Scenario, policy_to_dict

__all__ = [
    "FeasibilityReport",
    "joint_feasible",
    "is_degenerate",
]

_CHECKABLE = (
    MetricId.DEMOGRAPHIC_PARITY,
    MetricId.CONDITIONAL_DEMOGRAPHIC_PARITY,
    MetricId.EQUAL_OPPORTUNITY,
    MetricId.PREDICTIVE_EQUALITY,
    MetricId.EQUALIZED_ODDS,
    MetricId.PREDICTIVE_PARITY,
)


@dataclass(frozen=True)
class FeasibilityReport:
    metrics: tuple[MetricId, ...]
    epsilon: float
    grid_spec: dict
    witnesses: tuple[Policy, ...]
    degenerate_only: bool

    def as_dict(self) -> dict:
        return {
            "metrics": [m.value for m in self.metrics],
            "epsilon": self.epsilon,
            "gridSpec": self.grid_spec,
            "witnesses": [policy_to_dict(p) for p in self.witnesses],
            "witnessCount": len(self.witnesses),
            "degenerateOnly": self.degenerate_only,
        }


def is_degenerate(scenario: Scenario, policy: Policy) -> bool:
    """True when the policy accepts everyone or rejects everyone."""
    taus: list[float] = []
    for g in scenario.groups:
        taus.extend(policy.taus(g))
    return all(t == 1.0 for t in taus) or all(t == 0.0 for t in taus)


def _spread(values: list[float]) -> float:
    if len(values) < 2:
        return 0.0
    return max(values) - min(values)


def _stratum_rates(group, taus, strata: tuple[str, ...]) -> dict[str, float]:
    out = {}
    for stratum in strata:
        mass_in = math.fsum(b.mass for b in group.bins if b.stratum == stratum)
        if mass_in <= 0.0:
            continue
        accepted = math.fsum(
            b.mass * t for b, t in zip(group.bins, taus) if b.stratum == stratum
        )
        out[stratum] = accepted / mass_in
    return out


def joint_feasible(
    scenario: Scenario,
    metrics: set[MetricId] | list[MetricId] | tuple[MetricId, ...],
    epsilon: float = 0.01,
    grid: Grid | None = None,
) -> FeasibilityReport:
    """Search the grid for policies satisfying every metric within epsilon.

    Witnesses come back sorted by policy encoding so reports are stable
    under any parallel evaluation order.  ``degenerate_only`` is the flag to
    read: it says whether anything beyond accept-all/reject-all survived.
    """
    if epsilon < 0.0:
        raise ValueError("epsilon must be >= 0")
    requested = tuple(dict.fromkeys(MetricId(m) for m in metrics))
    if not requested:
        raise ValueError("metrics must be non-empty")
    for m in requested:
        if m not in _CHECKABLE:
            raise ConfigurationError(
                f"{m} is an error level, not a parity metric; "
                "joint satisfiability is undefined for it"
            )
    if MetricId.CONDITIONAL_DEMOGRAPHIC_PARITY in requested and not scenario.strata:
        raise ConfigurationError(
            "conditional_demographic_parity needs bins tagged with strata; "
            "this scenario has none"
        )
    if grid is None:
        grid = ThresholdGrid()

    strata = scenario.strata
    stats_cache: dict[tuple[str, tuple[float, ...]], ConfusionStats] = {}
    strat_cache: dict[tuple[str, tuple[float, ...]], dict[str, float]] = {}

    def group_stats(g, taus):
        key = (g.id, taus)
        if key not in stats_cache:
            stats_cache[key] = confusion(g, _FixedTaus(taus))
        return stats_cache[key]

    def group_strat(g, taus):
        key = (g.id, taus)
        if key not in strat_cache:
            strat_cache[key] = _stratum_rates(g, taus, strata)
        return strat_cache[key]

    witnesses = []
    for policy in enumerate_policies(scenario, grid):
        per_group = [
            (g, policy.taus(g)) for g in scenario.groups
        ]
        stats = [group_stats(g, taus) for g, taus in per_group]
        ok = True
        for m in requested:
            if m is MetricId.DEMOGRAPHIC_PARITY:
                d = _spread([s.acceptance_rate for s in stats])
            elif m is MetricId.EQUAL_OPPORTUNITY:
                d = _spread([s.true_positive_rate for s in stats])
            elif m is MetricId.PREDICTIVE_EQUALITY:
                d = _spread([s.false_positive_rate for s in stats])
            elif m is MetricId.PREDICTIVE_PARITY:
                d = _spread([s.positive_predictive_value for s in stats])
            elif m is MetricId.EQUALIZED_ODDS:
                d = max(
                    _spread([s.true_positive_rate for s in stats]),
                    _spread([s.false_positive_rate for s in stats]),
                )
            else:  # conditional demographic parity
                rates = [group_strat(g, taus) for g, taus in per_group]
                d = 0.0
                for stratum in strata:
                    d = max(
                        d,
                        _spread([r[stratum] for r in rates if stratum in r]),
                    )
            if d > epsilon:
                ok = False
                break
        if ok:
            witnesses.append(policy)

    witnesses.sort(key=lambda p: p.encode())
    degenerate_only = all(is_degenerate(scenario, p) for p in witnesses)
    return FeasibilityReport(
        metrics=requested,
        epsilon=epsilon,
        grid_spec=grid.as_dict(),
        witnesses=tuple(witnesses),
        degenerate_only=degenerate_only,
    )


class _FixedTaus:
    """Adapter presenting a raw tau tuple as an acceptance rule."""

    def __init__(self, taus: tuple[float, ...]):
        self._taus = taus

    def taus(self, group) -> tuple[float, ...]:
        return self._taus
