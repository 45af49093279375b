"""Absolute welfare accounting: one-step impacts, score drift, loan ledgers.

The point of this module is the shift of perspective from comparative
fairness statistics to what a policy actually does to each group's welfare.
One-step welfare prices the four decision outcomes per person; drift tracks
how acceptance decisions move a group's score distribution over repeated
rounds; the ledger does exact currency arithmetic over approval volumes so
stated aggregate claims can be checked rather than trusted.

``identify_worst_off`` lives here because every welfare outcome reports the
worst-off group; the selection layer re-exports it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .canonical import cents
from .metrics import utility as institution_utility
from .scenario import (
    GroupProfile,
    Policy,
    Scenario,
    ScenarioParseError,
    WelfareParams,
)

__all__ = [
    "WelfareOutcome",
    "Trajectory",
    "LedgerEntry",
    "LedgerDelta",
    "LedgerComparison",
    "identify_worst_off",
    "baseline_welfare",
    "group_delta",
    "one_step_welfare",
    "long_run_drift",
    "compare_ledgers",
    "ledger_from_dict",
]


def baseline_welfare(scenario: Scenario, params: WelfareParams | None = None) -> dict[str, float]:
    """Pre-decision welfare level per group.

    Uses the configured baseline when one is given for the group and 0
    otherwise; the mean-score proxy is only used for *identifying* the
    worst-off group, never as a welfare level, since score units and welfare
    units are not comparable.
    """
    params = params if params is not None else scenario.welfare_params
    return {
        g.id: params.baseline_welfare.get(g.id, 0.0) for g in scenario.groups
    }


def identify_worst_off(scenario: Scenario, params: WelfareParams | None = None) -> str:
    """Group with the lowest baseline expected welfare.

    Ordering key: configured baseline welfare when present, otherwise the
    group's mean score as a proxy.  When ``ses_override`` is set and at least
    one group carries a sesTag, only tagged groups are considered.  Ties break
    lexicographically by group id.
    """
    params = params if params is not None else scenario.welfare_params
    pool: Sequence[GroupProfile] = scenario.groups
    if params.ses_override:
        tagged = [g for g in scenario.groups if g.ses_tag]
        if tagged:
            pool = tagged

    def key(g: GroupProfile) -> tuple[float, str]:
        level = params.baseline_welfare.get(g.id, g.mean_score)
        return (level, g.id)

    return min(pool, key=key).id


def group_delta(group: GroupProfile, taus: Sequence[float], params: WelfareParams) -> float:
    """Expected per-person welfare change for one group under given taus."""
    w = params.weights_for(group.id)
    return math.fsum(
        b.mass
        * (
            t * (b.positive_rate * w.w_tp + (1.0 - b.positive_rate) * w.w_fp)
            + (1.0 - t) * (b.positive_rate * w.w_fn + (1.0 - b.positive_rate) * w.w_tn)
        )
        for b, t in zip(group.bins, taus)
    )


@dataclass(frozen=True)
class WelfareOutcome:
    per_group_delta: Mapping[str, float]
    institution_utility: float
    worst_off_group: str
    worst_off_welfare: float

    def as_dict(self) -> dict:
        return {
            "perGroupDelta": dict(self.per_group_delta),
            "institutionUtilityCents": cents(self.institution_utility),
            "worstOffGroup": self.worst_off_group,
            "worstOffWelfare": self.worst_off_welfare,
        }


def one_step_welfare(
    scenario: Scenario,
    policy: Policy,
    params: WelfareParams | None = None,
) -> WelfareOutcome:
    """Expected welfare delta per group plus the worst-off readout."""
    params = params if params is not None else scenario.welfare_params
    deltas = {
        g.id: group_delta(g, policy.taus(g), params) for g in scenario.groups
    }
    worst = identify_worst_off(scenario, params)
    base = baseline_welfare(scenario, params)
    return WelfareOutcome(
        per_group_delta=deltas,
        institution_utility=institution_utility(scenario, policy),
        worst_off_group=worst,
        worst_off_welfare=base[worst] + deltas[worst],
    )


@dataclass(frozen=True)
class Trajectory:
    horizon: int
    per_group_mean_score: Mapping[str, tuple[float, ...]]

    def as_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "perGroupMeanScore": {
                gid: list(means) for gid, means in self.per_group_mean_score.items()
            },
        }

    def to_csv(self) -> str:
        lines = ["step,group,mean_score"]
        for step in range(self.horizon + 1):
            for gid in self.per_group_mean_score:
                mean = self.per_group_mean_score[gid][step]
                lines.append(f"{step},{gid},{mean:.9f}")
        return "\n".join(lines) + "\n"


def _nearest_bin(scores: Sequence[float], target: float) -> int:
    """Index of the support point closest to target; ties go to the lower bin."""
    if target <= scores[0]:
        return 0
    if target >= scores[-1]:
        return len(scores) - 1
    best = 0
    best_dist = abs(scores[0] - target)
    for i in range(1, len(scores)):
        d = abs(scores[i] - target)
        if d < best_dist - 1e-12:
            best = i
            best_dist = d
    return best


def long_run_drift(
    scenario: Scenario,
    policy: Policy,
    params: WelfareParams | None = None,
    horizon: int = 5,
) -> Trajectory:
    """Iterate the score-drift dynamic and record mean scores per step.

    Each round, the accepted slice of every bin splits: the fraction that
    succeeds (the bin's positive rate) moves up by cPlus, the fraction that
    fails moves down by cMinus.  Moved mass lands on the nearest point of the
    group's original support, clamped at the ends.  Rejected mass stays put.
    Bin positive rates are properties of the score location and do not move
    with the mass.
    """
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    params = params if params is not None else scenario.welfare_params
    trajectories: dict[str, tuple[float, ...]] = {}
    for g in scenario.groups:
        scores = [b.score for b in g.bins]
        rates = [b.positive_rate for b in g.bins]
        taus = policy.taus(g)
        masses = [b.mass for b in g.bins]
        means = [math.fsum(m * s for m, s in zip(masses, scores))]
        up = [_nearest_bin(scores, s + params.c_plus) for s in scores]
        down = [_nearest_bin(scores, s - params.c_minus) for s in scores]
        for _ in range(horizon):
            nxt = [0.0] * len(scores)
            for i, m in enumerate(masses):
                stay = m * (1.0 - taus[i])
                win = m * taus[i] * rates[i]
                lose = m * taus[i] * (1.0 - rates[i])
                nxt[i] += stay
                nxt[up[i]] += win
                nxt[down[i]] += lose
            masses = nxt
            means.append(math.fsum(m * s for m, s in zip(masses, scores)))
        trajectories[g.id] = tuple(means)
    return Trajectory(horizon=horizon, per_group_mean_score=trajectories)


# ---------------------------------------------------------------------------
# Ledger accounting, exact in integer cents
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LedgerEntry:
    """Approval volume line: count of approvals at an average amount."""

    label: str
    approved_count: int
    average_amount_cents: int
    false_positive_share: float | None = None

    def __post_init__(self) -> None:
        # exactness guarantee rests on staying in integer arithmetic
        if not isinstance(self.approved_count, int):
            raise ValueError("approvedCount must be an integer")
        if not isinstance(self.average_amount_cents, int):
            raise ValueError("averageAmountCents must be an integer")
        if self.approved_count < 0:
            raise ValueError("approvedCount must be >= 0")
        if self.false_positive_share is not None and not (
            0.0 <= self.false_positive_share <= 1.0
        ):
            raise ValueError("falsePositiveShare must be in [0, 1]")

    @property
    def total_volume_cents(self) -> int:
        return self.approved_count * self.average_amount_cents

    def as_dict(self) -> dict:
        doc = {
            "label": self.label,
            "approvedCount": self.approved_count,
            "averageAmountCents": self.average_amount_cents,
            "totalVolumeCents": self.total_volume_cents,
        }
        if self.false_positive_share is not None:
            doc["falsePositiveShare"] = self.false_positive_share
        return doc


@dataclass(frozen=True)
class LedgerDelta:
    label: str
    baseline: LedgerEntry
    fairness_aware: LedgerEntry
    stated_delta_cents: int | None = None

    @property
    def computed_delta_cents(self) -> int:
        return self.fairness_aware.total_volume_cents - self.baseline.total_volume_cents

    @property
    def matches_stated(self) -> bool | None:
        if self.stated_delta_cents is None:
            return None
        return self.stated_delta_cents == self.computed_delta_cents

    def as_dict(self) -> dict:
        doc = {
            "label": self.label,
            "baseline": self.baseline.as_dict(),
            "fairnessAware": self.fairness_aware.as_dict(),
            "computedDeltaCents": self.computed_delta_cents,
        }
        if self.stated_delta_cents is not None:
            doc["statedDeltaCents"] = self.stated_delta_cents
            doc["matchesStated"] = self.matches_stated
        return doc


@dataclass(frozen=True)
class LedgerComparison:
    deltas: tuple[LedgerDelta, ...]

    @property
    def any_mismatch(self) -> bool:
        return any(d.matches_stated is False for d in self.deltas)

    def as_dict(self) -> dict:
        return {
            "deltas": [d.as_dict() for d in self.deltas],
            "anyMismatch": self.any_mismatch,
        }


def compare_ledgers(pairs: Iterable[LedgerDelta]) -> LedgerComparison:
    """Total each entry, compute deltas, and check any stated deltas exactly.

    Stated deltas that disagree with the computed arithmetic are flagged, not
    reconciled; neither figure is adopted over the other.
    """
    return LedgerComparison(deltas=tuple(pairs))


def _entry_from_dict(doc: Mapping, where: str) -> LedgerEntry:
    if not isinstance(doc, Mapping):
        raise ScenarioParseError(f"field {where} must be an object")
    if "approvedCount" not in doc:
        raise ScenarioParseError(f"missing field {where}approvedCount")
    count = doc["approvedCount"]
    if isinstance(count, bool) or not isinstance(count, int):
        raise ScenarioParseError(f"field {where}approvedCount must be an integer")
    if "averageAmountCents" in doc:
        amount = doc["averageAmountCents"]
        if isinstance(amount, bool) or not isinstance(amount, int):
            raise ScenarioParseError(
                f"field {where}averageAmountCents must be an integer"
            )
    elif "averageAmount" in doc:
        amount = cents(float(doc["averageAmount"]))
    else:
        raise ScenarioParseError(
            f"field {where} needs averageAmountCents or averageAmount"
        )
    share = doc.get("falsePositiveShare")
    return LedgerEntry(
        label=str(doc.get("label", "")),
        approved_count=count,
        average_amount_cents=amount,
        false_positive_share=float(share) if share is not None else None,
    )


def ledger_from_dict(doc: Mapping) -> LedgerComparison:
    """Parse a ledger comparison request.

    Format: ``{"pairs": [{"label", "baseline": entry, "fairnessAware": entry,
    "statedDeltaCents"? | "statedDelta"?}]}`` where an entry carries
    ``approvedCount`` and ``averageAmountCents`` (or ``averageAmount`` in
    currency units).
    """
    if not isinstance(doc, Mapping) or "pairs" not in doc:
        raise ScenarioParseError("ledger document needs a 'pairs' array")
    pairs = doc["pairs"]
    if not isinstance(pairs, Sequence) or isinstance(pairs, (str, bytes)):
        raise ScenarioParseError("field pairs must be an array")
    deltas = []
    for i, pair in enumerate(pairs):
        if not isinstance(pair, Mapping):
            raise ScenarioParseError(f"field pairs[{i}] must be an object")
        label = str(pair.get("label", f"pair-{i}"))
        baseline = _entry_from_dict(
            pair.get("baseline"), f"pairs[{i}].baseline."
        )
        aware = _entry_from_dict(
            pair.get("fairnessAware"), f"pairs[{i}].fairnessAware."
        )
        stated: int | None
        if "statedDeltaCents" in pair:
            raw = pair["statedDeltaCents"]
            if isinstance(raw, bool) or not isinstance(raw, int):
                raise ScenarioParseError(
                    f"field pairs[{i}].statedDeltaCents must be an integer"
                )
            stated = raw
        elif "statedDelta" in pair:
            stated = cents(float(pair["statedDelta"]))
        else:
            stated = None
        deltas.append(
            LedgerDelta(
                label=label,
                baseline=baseline,
                fairness_aware=aware,
                stated_delta_cents=stated,
            )
        )
    return compare_ledgers(deltas)
