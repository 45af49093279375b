"""Per-group confusion statistics and the statistical fairness catalog.

Everything here is an exact finite sum over score bins, so values can be
checked against hand-derived oracles.  Degenerate denominators follow a
0-convention (TPR with base rate 0 is 0, PPV with no accepts is 0) so that
every policy stays comparable.

``minmax_error`` is deliberately different in kind from the rest of the
catalog: it is the worst group's error *level*, not a between-group
difference, mirroring the demand that no sub-group suffers systematically
more errors.  It is reported alongside the parity measures but never treated
as one (in particular the impossibility checker rejects it).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .canonical import cents
from .scenario import GroupProfile, Policy, Rule, Scenario, ScenarioError

__all__ = [
    "MetricId",
    "METRIC_CATALOG",
    "PAIRWISE_METRICS",
    "ConfigurationError",
    "ConfusionStats",
    "FairnessReport",
    "confusion",
    "disparity",
    "utility",
    "accuracy",
    "fairness_report",
]


class ConfigurationError(ScenarioError):
    """A metric was requested on a scenario that cannot support it."""


class MetricId(str, Enum):
    """Stable identifiers for the fairness catalog, in presentation order."""

    DEMOGRAPHIC_PARITY = "demographic_parity"
    CONDITIONAL_DEMOGRAPHIC_PARITY = "conditional_demographic_parity"
    EQUAL_OPPORTUNITY = "equal_opportunity"
    PREDICTIVE_EQUALITY = "predictive_equality"
    EQUALIZED_ODDS = "equalized_odds"
    PREDICTIVE_PARITY = "predictive_parity"
    MINMAX_ERROR = "minmax_error"

    def __str__(self) -> str:  # argparse and f-strings print the bare id
        return self.value


METRIC_CATALOG: tuple[MetricId, ...] = tuple(MetricId)

# Metrics defined as a max over group pairs of |statistic difference|.
PAIRWISE_METRICS: tuple[MetricId, ...] = (
    MetricId.DEMOGRAPHIC_PARITY,
    MetricId.EQUAL_OPPORTUNITY,
    MetricId.PREDICTIVE_EQUALITY,
    MetricId.EQUALIZED_ODDS,
    MetricId.PREDICTIVE_PARITY,
)


@dataclass(frozen=True)
class ConfusionStats:
    acceptance_rate: float
    true_positive_rate: float
    false_positive_rate: float
    false_negative_rate: float
    positive_predictive_value: float
    error_rate: float
    expected_accepts: float

    def as_dict(self) -> dict:
        return {
            "acceptanceRate": self.acceptance_rate,
            "truePositiveRate": self.true_positive_rate,
            "falsePositiveRate": self.false_positive_rate,
            "falseNegativeRate": self.false_negative_rate,
            "positivePredictiveValue": self.positive_predictive_value,
            "errorRate": self.error_rate,
            "expectedAccepts": self.expected_accepts,
        }


def confusion(group: GroupProfile, rule: Rule) -> ConfusionStats:
    """Exact confusion statistics for one group under one acceptance rule."""
    taus = rule.taus(group)
    masses = [b.mass for b in group.bins]
    rates = [b.positive_rate for b in group.bins]
    acc = math.fsum(m * t for m, t in zip(masses, taus))
    pos = math.fsum(m * r for m, r in zip(masses, rates))
    neg = math.fsum(m * (1.0 - r) for m, r in zip(masses, rates))
    tp = math.fsum(m * r * t for m, r, t in zip(masses, rates, taus))
    fp = math.fsum(m * (1.0 - r) * t for m, r, t in zip(masses, rates, taus))
    err = math.fsum(
        m * (t * (1.0 - r) + (1.0 - t) * r)
        for m, r, t in zip(masses, rates, taus)
    )
    tpr = tp / pos if pos > 0.0 else 0.0
    fnr = (pos - tp) / pos if pos > 0.0 else 0.0
    fpr = fp / neg if neg > 0.0 else 0.0
    ppv = tp / acc if acc > 0.0 else 0.0
    return ConfusionStats(
        acceptance_rate=acc,
        true_positive_rate=tpr,
        false_positive_rate=fpr,
        false_negative_rate=fnr,
        positive_predictive_value=ppv,
        error_rate=err,
        expected_accepts=group.share * acc,
    )


def _stats_by_group(scenario: Scenario, policy: Policy) -> dict[str, ConfusionStats]:
    return {g.id: confusion(g, policy.rule_for(g.id)) for g in scenario.groups}


def _spread(values: list[float]) -> float:
    """Max over pairs of |a − b|; 0 with fewer than two values."""
    if len(values) < 2:
        return 0.0
    return max(values) - min(values)


def _conditional_dp(scenario: Scenario, policy: Policy) -> float:
    strata = scenario.strata
    if not strata:
        raise ConfigurationError(
            "conditional_demographic_parity needs bins tagged with strata; "
            "this scenario has none"
        )
    worst = 0.0
    for stratum in strata:
        rates = []
        for g in scenario.groups:
            taus = policy.taus(g)
            mass_in = math.fsum(b.mass for b in g.bins if b.stratum == stratum)
            if mass_in <= 0.0:
                continue
            accepted = math.fsum(
                b.mass * t for b, t in zip(g.bins, taus) if b.stratum == stratum
            )
            rates.append(accepted / mass_in)
        worst = max(worst, _spread(rates))
    return worst


def disparity(metric: MetricId, scenario: Scenario, policy: Policy) -> float:
    """Disparity of one metric under one policy.  Non-negative by construction.

    Pairwise metrics with fewer than two groups are trivially satisfied and
    return 0.
    """
    metric = MetricId(metric)
    if metric is MetricId.CONDITIONAL_DEMOGRAPHIC_PARITY:
        return _conditional_dp(scenario, policy)
    stats = _stats_by_group(scenario, policy)
    if metric is MetricId.MINMAX_ERROR:
        return max(s.error_rate for s in stats.values())
    if metric is MetricId.DEMOGRAPHIC_PARITY:
        return _spread([s.acceptance_rate for s in stats.values()])
    if metric is MetricId.EQUAL_OPPORTUNITY:
        return _spread([s.true_positive_rate for s in stats.values()])
    if metric is MetricId.PREDICTIVE_EQUALITY:
        return _spread([s.false_positive_rate for s in stats.values()])
    if metric is MetricId.PREDICTIVE_PARITY:
        return _spread([s.positive_predictive_value for s in stats.values()])
    if metric is MetricId.EQUALIZED_ODDS:
        return max(
            _spread([s.true_positive_rate for s in stats.values()]),
            _spread([s.false_positive_rate for s in stats.values()]),
        )
    raise ConfigurationError(f"unknown metric {metric!r}")


def utility(scenario: Scenario, policy: Policy) -> float:
    """Institutional expected utility per person, in currency units."""
    gain = scenario.utility_params.gain_tp
    loss = scenario.utility_params.loss_fp
    total = 0.0
    for g in scenario.groups:
        taus = policy.taus(g)
        total += g.share * math.fsum(
            b.mass * t * (b.positive_rate * gain - (1.0 - b.positive_rate) * loss)
            for b, t in zip(g.bins, taus)
        )
    return total


def accuracy(scenario: Scenario, policy: Policy) -> float:
    """1 minus the population-weighted error rate."""
    stats = _stats_by_group(scenario, policy)
    return 1.0 - math.fsum(
        g.share * stats[g.id].error_rate for g in scenario.groups
    )


@dataclass(frozen=True)
class FairnessReport:
    """Full metric readout for one (scenario, policy) pair.

    ``disparities`` carries every catalog metric; conditional demographic
    parity maps to None when the scenario has no strata, so the catalog stays
    closed without pretending the conditional variant was evaluated.
    """

    per_group: Mapping[str, ConfusionStats]
    disparities: Mapping[MetricId, float | None]
    accuracy: float
    utility: float

    def as_dict(self) -> dict:
        return {
            "perGroup": {gid: s.as_dict() for gid, s in self.per_group.items()},
            "disparities": {m.value: v for m, v in self.disparities.items()},
            "accuracy": self.accuracy,
            "utilityCents": cents(self.utility),
        }


def fairness_report(scenario: Scenario, policy: Policy) -> FairnessReport:
    disparities: dict[MetricId, float | None] = {}
    for metric in METRIC_CATALOG:
        if metric is MetricId.CONDITIONAL_DEMOGRAPHIC_PARITY and not scenario.strata:
            disparities[metric] = None
        else:
            disparities[metric] = disparity(metric, scenario, policy)
    return FairnessReport(
        per_group=_stats_by_group(scenario, policy),
        disparities=disparities,
        accuracy=accuracy(scenario, policy),
        utility=utility(scenario, policy),
    )
