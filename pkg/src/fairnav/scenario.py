"""Scenario model: populations, score distributions, policies, and ingestion.

A scenario describes the world a decision policy acts on: one or more groups,
each with a discrete score distribution where every bin carries the fraction
of the group falling in it and the probability that a member of the bin is a
true positive.  Scores are kept discrete on purpose: every downstream quantity
(rates, utility, welfare) is then an exact finite sum, which keeps oracles
exact.

All types are frozen dataclasses and safe to share across workers.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence, Union

PROB_TOL = 1e-9

CONTEXT_CLASSES = ("opportunity", "general")

__all__ = [
    "PROB_TOL",
    "CONTEXT_CLASSES",
    "ScenarioError",
    "ScenarioParseError",
    "ScenarioValidationError",
    "IngestError",
    "ScoreBin",
    "GroupProfile",
    "UtilityParams",
    "WelfareParams",
    "GroupWeights",
    "ThresholdRule",
    "VectorRule",
    "Rule",
    "Policy",
    "Scenario",
    "load_scenario",
    "scenario_from_dict",
    "scenario_to_dict",
    "save_scenario",
    "policy_from_dict",
    "policy_to_dict",
    "welfare_params_from_dict",
    "welfare_params_to_dict",
    "ingest_csv",
    "SynthGroupSpec",
    "SynthSpec",
    "synth_scenario",
]


class ScenarioError(Exception):
    """Base class for scenario-layer failures."""


class ScenarioParseError(ScenarioError):
    """Document does not match the schema; message names the offending field."""


class ScenarioValidationError(ScenarioError):
    """Document parses but violates an invariant; message names the invariant."""


class IngestError(ScenarioError):
    """Raw records cannot be turned into a scenario."""


@dataclass(frozen=True)
class ScoreBin:
    """One support point of a group's score distribution.

    ``stratum`` optionally tags the bin with a legitimate conditioning stratum
    for conditional demographic parity; untagged bins are excluded from the
    conditional metric.
    """

    score: float
    mass: float
    positive_rate: float
    stratum: str | None = None

    def __post_init__(self) -> None:
        if not math.isfinite(self.score):
            raise ScenarioValidationError("bin score must be finite")
        if not 0.0 <= self.mass <= 1.0:
            raise ScenarioValidationError(
                f"bin mass range: mass={self.mass} outside [0, 1]"
            )
        if not 0.0 <= self.positive_rate <= 1.0:
            raise ScenarioValidationError(
                f"bin positiveRate range: positiveRate={self.positive_rate} outside [0, 1]"
            )


@dataclass(frozen=True)
class GroupProfile:
    id: str
    label: str
    share: float
    bins: tuple[ScoreBin, ...]
    ses_tag: bool = False

    def __post_init__(self) -> None:
        if not self.id:
            raise ScenarioValidationError("group id must be non-empty")
        if not self.bins:
            raise ScenarioValidationError(f"group {self.id}: needs at least one bin")
        if not 0.0 < self.share <= 1.0:
            raise ScenarioValidationError(
                f"group {self.id}: share range: share={self.share} outside (0, 1]"
            )
        scores = [b.score for b in self.bins]
        if any(s2 <= s1 for s1, s2 in zip(scores, scores[1:])):
            raise ScenarioValidationError(
                f"group {self.id}: bin scores must be strictly ascending"
            )
        total = math.fsum(b.mass for b in self.bins)
        if abs(total - 1.0) > PROB_TOL:
            raise ScenarioValidationError(
                f"group {self.id}: mass sum: bin masses sum to {total}, expected 1"
            )

    @property
    def base_rate(self) -> float:
        """Fraction of the group that is a true positive."""
        return math.fsum(b.mass * b.positive_rate for b in self.bins)

    @property
    def mean_score(self) -> float:
        return math.fsum(b.mass * b.score for b in self.bins)

    @property
    def strata(self) -> tuple[str, ...]:
        seen: list[str] = []
        for b in self.bins:
            if b.stratum is not None and b.stratum not in seen:
                seen.append(b.stratum)
        return tuple(seen)


@dataclass(frozen=True)
class UtilityParams:
    """Institutional gain per true positive and loss per false positive."""

    gain_tp: float
    loss_fp: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.gain_tp) and math.isfinite(self.loss_fp)):
            raise ScenarioValidationError("utility params must be finite")
        if self.loss_fp < 0.0:
            raise ScenarioValidationError(
                f"utility lossFP sign: lossFP={self.loss_fp} must be >= 0"
            )


@dataclass(frozen=True)
class GroupWeights:
    """Welfare effect of each decision outcome on one group member."""

    w_tp: float = 0.0
    w_fp: float = 0.0
    w_fn: float = 0.0
    w_tn: float = 0.0

    def __post_init__(self) -> None:
        for name in ("w_tp", "w_fp", "w_fn", "w_tn"):
            if not math.isfinite(getattr(self, name)):
                raise ScenarioValidationError(f"welfare weight {name} must be finite")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.w_tp, self.w_fp, self.w_fn, self.w_tn)


@dataclass(frozen=True)
class WelfareParams:
    """Welfare weights plus score-drift coefficients.

    ``c_plus`` is the score gain of a successfully accepted member, ``c_minus``
    the loss of an accepted member who fails.  ``baseline_welfare`` optionally
    fixes each group's pre-decision welfare level; when absent, mean score is
    used as a proxy for identifying the worst-off group.  ``ses_override``
    makes a ses-tagged group the worst-off regardless of the proxy.
    """

    weights: GroupWeights = field(default_factory=GroupWeights)
    per_group: Mapping[str, GroupWeights] = field(default_factory=dict)
    c_plus: float = 0.0
    c_minus: float = 0.0
    baseline_welfare: Mapping[str, float] = field(default_factory=dict)
    ses_override: bool = False

    def __post_init__(self) -> None:
        if not (math.isfinite(self.c_plus) and math.isfinite(self.c_minus)):
            raise ScenarioValidationError("drift coefficients must be finite")
        if self.c_minus < 0.0:
            raise ScenarioValidationError(
                f"drift cMinus sign: cMinus={self.c_minus} must be >= 0"
            )

    def weights_for(self, group_id: str) -> GroupWeights:
        return self.per_group.get(group_id, self.weights)


@dataclass(frozen=True)
class ThresholdRule:
    """Accept a member iff their bin score >= threshold (closed on the left)."""

    threshold: float

    def taus(self, group: GroupProfile) -> tuple[float, ...]:
        return tuple(1.0 if b.score >= self.threshold else 0.0 for b in group.bins)

    def encode(self) -> str:
        return f">={self.threshold!r}"


@dataclass(frozen=True)
class VectorRule:
    """Per-bin acceptance probabilities, aligned with the group's bins."""

    taus_: tuple[float, ...]

    def __post_init__(self) -> None:
        for t in self.taus_:
            if not 0.0 <= t <= 1.0:
                raise ScenarioValidationError(
                    f"acceptance probability range: tau={t} outside [0, 1]"
                )

    def taus(self, group: GroupProfile) -> tuple[float, ...]:
        if len(self.taus_) != len(group.bins):
            raise ScenarioValidationError(
                f"group {group.id}: acceptVector length {len(self.taus_)} "
                f"does not match bin count {len(group.bins)}"
            )
        return self.taus_

    def encode(self) -> str:
        return ",".join(repr(t) for t in self.taus_)


Rule = Union[ThresholdRule, VectorRule]


@dataclass(frozen=True)
class Policy:
    """Per-group acceptance rules.  Immutable; compared via its encoding."""

    rules: Mapping[str, Rule]

    def rule_for(self, group_id: str) -> Rule:
        try:
            return self.rules[group_id]
        except KeyError:
            raise ScenarioValidationError(
                f"policy missing rule for group {group_id}"
            ) from None

    def taus(self, group: GroupProfile) -> tuple[float, ...]:
        return self.rule_for(group.id).taus(group)

    def encode(self) -> str:
        """Stable, order-independent text encoding; used for tie-breaking."""
        parts = [f"{gid}:{self.rules[gid].encode()}" for gid in sorted(self.rules)]
        return "|".join(parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Policy):
            return NotImplemented
        return self.encode() == other.encode()

    def __hash__(self) -> int:
        return hash(self.encode())


@dataclass(frozen=True)
class Scenario:
    id: str
    context_class: str
    utility_params: UtilityParams
    welfare_params: WelfareParams
    groups: tuple[GroupProfile, ...]
    policies: Mapping[str, Policy] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.groups:
            raise ScenarioValidationError("scenario needs at least one group")
        if self.context_class not in CONTEXT_CLASSES:
            raise ScenarioValidationError(
                f"contextClass value: {self.context_class!r} not in {CONTEXT_CLASSES}"
            )
        ids = [g.id for g in self.groups]
        if len(set(ids)) != len(ids):
            raise ScenarioValidationError("group ids must be unique")
        total = math.fsum(g.share for g in self.groups)
        if abs(total - 1.0) > PROB_TOL:
            raise ScenarioValidationError(
                f"share sum: group shares sum to {total}, expected 1"
            )

    def group(self, group_id: str) -> GroupProfile:
        for g in self.groups:
            if g.id == group_id:
                return g
        raise KeyError(group_id)

    @property
    def group_ids(self) -> tuple[str, ...]:
        return tuple(g.id for g in self.groups)

    @property
    def strata(self) -> tuple[str, ...]:
        seen: list[str] = []
        for g in self.groups:
            for s in g.strata:
                if s not in seen:
                    seen.append(s)
        return tuple(seen)

    def check_policy(self, policy: Policy) -> None:
        """Raise unless the policy covers every group with a valid rule."""
        for g in self.groups:
            policy.taus(g)


# ---------------------------------------------------------------------------
# JSON (de)serialization.  File keys are camelCase; see README for the format.
# ---------------------------------------------------------------------------


def _require(doc: Mapping, key: str, where: str):
    if key not in doc:
        raise ScenarioParseError(f"missing field {where}{key}")
    return doc[key]


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioParseError(f"field {where} must be a number")
    return float(value)


def _bin_from_dict(doc: Mapping, where: str) -> ScoreBin:
    if not isinstance(doc, Mapping):
        raise ScenarioParseError(f"field {where} must be an object")
    stratum = doc.get("stratum")
    if stratum is not None and not isinstance(stratum, str):
        raise ScenarioParseError(f"field {where}stratum must be a string")
    return ScoreBin(
        score=_number(_require(doc, "score", where), where + "score"),
        mass=_number(_require(doc, "mass", where), where + "mass"),
        positive_rate=_number(
            _require(doc, "positiveRate", where), where + "positiveRate"
        ),
        stratum=stratum,
    )


def _group_from_dict(doc: Mapping, where: str) -> GroupProfile:
    if not isinstance(doc, Mapping):
        raise ScenarioParseError(f"field {where} must be an object")
    gid = _require(doc, "id", where)
    if not isinstance(gid, str):
        raise ScenarioParseError(f"field {where}id must be a string")
    bins_doc = _require(doc, "bins", where)
    if not isinstance(bins_doc, Sequence) or isinstance(bins_doc, (str, bytes)):
        raise ScenarioParseError(f"field {where}bins must be an array")
    bins = tuple(
        _bin_from_dict(b, f"{where}bins[{i}].") for i, b in enumerate(bins_doc)
    )
    return GroupProfile(
        id=gid,
        label=str(doc.get("label", gid)),
        share=_number(_require(doc, "share", where), where + "share"),
        bins=bins,
        ses_tag=bool(doc.get("sesTag", False)),
    )


def _weights_from_dict(doc: Mapping, where: str) -> GroupWeights:
    return GroupWeights(
        w_tp=_number(doc.get("wTP", 0.0), where + "wTP"),
        w_fp=_number(doc.get("wFP", 0.0), where + "wFP"),
        w_fn=_number(doc.get("wFN", 0.0), where + "wFN"),
        w_tn=_number(doc.get("wTN", 0.0), where + "wTN"),
    )


def _welfare_from_dict(doc: Mapping, where: str) -> WelfareParams:
    if not isinstance(doc, Mapping):
        raise ScenarioParseError(f"field {where} must be an object")
    per_group = {}
    for gid, sub in dict(doc.get("perGroup", {})).items():
        per_group[gid] = _weights_from_dict(sub, f"{where}perGroup.{gid}.")
    baseline = {}
    for gid, value in dict(doc.get("baselineWelfare", {})).items():
        baseline[gid] = _number(value, f"{where}baselineWelfare.{gid}")
    return WelfareParams(
        weights=_weights_from_dict(doc, where),
        per_group=per_group,
        c_plus=_number(doc.get("cPlus", 0.0), where + "cPlus"),
        c_minus=_number(doc.get("cMinus", 0.0), where + "cMinus"),
        baseline_welfare=baseline,
        ses_override=bool(doc.get("sesOverride", False)),
    )


def policy_from_dict(doc: Mapping) -> Policy:
    if not isinstance(doc, Mapping):
        raise ScenarioParseError("policy must be an object")
    per_group = doc.get("perGroup", doc)
    if not isinstance(per_group, Mapping) or not per_group:
        raise ScenarioParseError("policy perGroup must be a non-empty object")
    rules: dict[str, Rule] = {}
    for gid, rule_doc in per_group.items():
        if not isinstance(rule_doc, Mapping):
            raise ScenarioParseError(f"policy rule for group {gid} must be an object")
        if "threshold" in rule_doc:
            rules[gid] = ThresholdRule(
                _number(rule_doc["threshold"], f"policy.{gid}.threshold")
            )
        elif "acceptVector" in rule_doc:
            vec = rule_doc["acceptVector"]
            if not isinstance(vec, Sequence) or isinstance(vec, (str, bytes)):
                raise ScenarioParseError(
                    f"policy.{gid}.acceptVector must be an array"
                )
            rules[gid] = VectorRule(
                tuple(
                    _number(t, f"policy.{gid}.acceptVector[{i}]")
                    for i, t in enumerate(vec)
                )
            )
        else:
            raise ScenarioParseError(
                f"policy rule for group {gid} needs 'threshold' or 'acceptVector'"
            )
    return Policy(rules=rules)


def scenario_from_dict(doc: Mapping) -> Scenario:
    if not isinstance(doc, Mapping):
        raise ScenarioParseError("scenario document must be an object")
    sid = _require(doc, "id", "")
    if not isinstance(sid, str) or not sid:
        raise ScenarioParseError("field id must be a non-empty string")
    context = _require(doc, "contextClass", "")
    up_doc = _require(doc, "utilityParams", "")
    if not isinstance(up_doc, Mapping):
        raise ScenarioParseError("field utilityParams must be an object")
    utility = UtilityParams(
        gain_tp=_number(_require(up_doc, "gainTP", "utilityParams."), "utilityParams.gainTP"),
        loss_fp=_number(_require(up_doc, "lossFP", "utilityParams."), "utilityParams.lossFP"),
    )
    welfare = _welfare_from_dict(doc.get("welfareParams", {}), "welfareParams.")
    groups_doc = _require(doc, "groups", "")
    if not isinstance(groups_doc, Sequence) or isinstance(groups_doc, (str, bytes)):
        raise ScenarioParseError("field groups must be an array")
    groups = tuple(
        _group_from_dict(g, f"groups[{i}].") for i, g in enumerate(groups_doc)
    )
    policies = {
        name: policy_from_dict(p) for name, p in dict(doc.get("policies", {})).items()
    }
    return Scenario(
        id=sid,
        context_class=str(context),
        utility_params=utility,
        welfare_params=welfare,
        groups=groups,
        policies=policies,
    )


def load_scenario(source: str | Path | Mapping) -> Scenario:
    """Load and validate a scenario from a JSON file, JSON text, or dict."""
    if isinstance(source, Mapping):
        return scenario_from_dict(source)
    text = Path(source).read_text() if isinstance(source, Path) or (
        isinstance(source, str) and not source.lstrip().startswith("{")
    ) else str(source)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"invalid JSON: {exc}") from exc
    return scenario_from_dict(doc)


def welfare_params_from_dict(doc: Mapping) -> WelfareParams:
    """Public counterpart of the scenario loader's welfareParams parsing."""
    return _welfare_from_dict(doc, "welfareParams.")


def welfare_params_to_dict(wp: WelfareParams) -> dict:
    doc: dict = {
        "wTP": wp.weights.w_tp,
        "wFP": wp.weights.w_fp,
        "wFN": wp.weights.w_fn,
        "wTN": wp.weights.w_tn,
        "cPlus": wp.c_plus,
        "cMinus": wp.c_minus,
    }
    if wp.per_group:
        doc["perGroup"] = {
            gid: {"wTP": w.w_tp, "wFP": w.w_fp, "wFN": w.w_fn, "wTN": w.w_tn}
            for gid, w in sorted(wp.per_group.items())
        }
    if wp.baseline_welfare:
        doc["baselineWelfare"] = dict(sorted(wp.baseline_welfare.items()))
    if wp.ses_override:
        doc["sesOverride"] = True
    return doc


def _rule_to_dict(rule: Rule) -> dict:
    if isinstance(rule, ThresholdRule):
        return {"threshold": rule.threshold}
    return {"acceptVector": list(rule.taus_)}


def policy_to_dict(policy: Policy) -> dict:
    return {"perGroup": {gid: _rule_to_dict(policy.rules[gid]) for gid in sorted(policy.rules)}}


def scenario_to_dict(scenario: Scenario) -> dict:
    welfare = welfare_params_to_dict(scenario.welfare_params)
    doc: dict = {
        "id": scenario.id,
        "contextClass": scenario.context_class,
        "utilityParams": {
            "gainTP": scenario.utility_params.gain_tp,
            "lossFP": scenario.utility_params.loss_fp,
        },
        "welfareParams": welfare,
        "groups": [
            {
                "id": g.id,
                "label": g.label,
                "share": g.share,
                "sesTag": g.ses_tag,
                "bins": [
                    {
                        "score": b.score,
                        "mass": b.mass,
                        "positiveRate": b.positive_rate,
                        **({"stratum": b.stratum} if b.stratum is not None else {}),
                    }
                    for b in g.bins
                ],
            }
            for g in scenario.groups
        ],
    }
    if scenario.policies:
        doc["policies"] = {
            name: policy_to_dict(p) for name, p in sorted(scenario.policies.items())
        }
    return doc


def save_scenario(scenario: Scenario, path: str | Path) -> None:
    Path(path).write_text(json.dumps(scenario_to_dict(scenario), indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# Empirical ingestion
# ---------------------------------------------------------------------------


def ingest_csv(
    rows: Iterable[Mapping[str, object]] | str | Path,
    *,
    scenario_id: str = "ingested",
    context_class: str = "general",
    utility_params: UtilityParams | None = None,
    welfare_params: WelfareParams | None = None,
    n_quantile_bins: int | None = None,
) -> Scenario:
    """Build a scenario from ``group,score,outcome`` records.

    Bins are the distinct score values per group (or ``n_quantile_bins``
    equal-count bins when configured); ``mass`` is the empirical frequency and
    ``positiveRate`` the empirical outcome mean per bin.  Group shares are the
    empirical group frequencies.
    """
    import csv as _csv

    if isinstance(rows, (str, Path)):
        with open(rows, newline="") as fh:
            records = list(_csv.DictReader(fh))
    else:
        records = [dict(r) for r in rows]
    if not records:
        raise IngestError("no rows to ingest")

    per_group: dict[str, list[tuple[float, int]]] = {}
    for i, rec in enumerate(records):
        try:
            gid = str(rec["group"])
            score = float(rec["score"])  # type: ignore[arg-type]
            outcome_raw = rec["outcome"]
        except (KeyError, TypeError, ValueError) as exc:
            raise IngestError(f"row {i}: expected group,score,outcome fields") from exc
        if not math.isfinite(score):
            raise IngestError(f"row {i}: score must be finite")
        outcome = int(float(outcome_raw))  # type: ignore[arg-type]
        if outcome not in (0, 1) or float(outcome_raw) != outcome:  # type: ignore[arg-type]
            raise IngestError(f"row {i}: outcome must be 0 or 1, got {outcome_raw!r}")
        per_group.setdefault(gid, []).append((score, outcome))

    total_rows = len(records)
    groups = []
    for gid in sorted(per_group):
        obs = per_group[gid]
        if not obs:
            raise IngestError(f"group {gid}: no rows")
        obs.sort(key=lambda so: so[0])
        if n_quantile_bins is not None and n_quantile_bins >= 1:
            chunks: list[list[tuple[float, int]]] = []
            n = len(obs)
            for k in range(n_quantile_bins):
                lo = k * n // n_quantile_bins
                hi = (k + 1) * n // n_quantile_bins
                if hi > lo:
                    chunks.append(obs[lo:hi])
            # merge chunks that share a representative score
            grouped: dict[float, list[tuple[float, int]]] = {}
            for chunk in chunks:
                rep = math.fsum(s for s, _ in chunk) / len(chunk)
                grouped.setdefault(rep, []).extend(chunk)
        else:
            grouped = {}
            for score, outcome in obs:
                grouped.setdefault(score, []).append((score, outcome))
        bins = []
        n = len(obs)
        for rep in sorted(grouped):
            chunk = grouped[rep]
            mass = len(chunk) / n
            rate = math.fsum(o for _, o in chunk) / len(chunk)
            bins.append(ScoreBin(score=rep, mass=mass, positive_rate=rate))
        groups.append(
            GroupProfile(
                id=gid,
                label=gid,
                share=len(obs) / total_rows,
                bins=tuple(bins),
            )
        )
    return Scenario(
        id=scenario_id,
        context_class=context_class,
        utility_params=utility_params or UtilityParams(gain_tp=1.0, loss_fp=1.0),
        welfare_params=welfare_params or WelfareParams(),
        groups=tuple(groups),
    )


# ---------------------------------------------------------------------------
# Synthetic scenarios
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SynthGroupSpec:
    id: str
    n_bins: int
    base_rate: float
    score_range: tuple[float, float] = (0.0, 1.0)
    share: float | None = None
    ses_tag: bool = False


@dataclass(frozen=True)
class SynthSpec:
    groups: tuple[SynthGroupSpec, ...]
    scenario_id: str = "synthetic"
    context_class: str = "general"
    utility_params: UtilityParams = field(
        default_factory=lambda: UtilityParams(gain_tp=1.0, loss_fp=1.0)
    )
    welfare_params: WelfareParams = field(default_factory=WelfareParams)


def _adjust_rates_to_base(rates: list[float], masses: list[float], target: float) -> list[float]:
    """Rescale rates so the mass-weighted mean hits ``target`` exactly.

    Scales rates toward 0 when the draw overshoots and complements toward 1
    when it undershoots; both transforms keep rates in [0, 1] and monotone.
    """
    base = math.fsum(m * r for m, r in zip(masses, rates))
    if base <= 0.0:
        return [target for _ in rates]
    if target <= base:
        scale = target / base
        return [r * scale for r in rates]
    rest = 1.0 - base
    if rest <= 0.0:
        return rates
    scale = (1.0 - target) / rest
    return [1.0 - (1.0 - r) * scale for r in rates]


def synth_scenario(spec: SynthSpec, seed: int) -> Scenario:
    """Deterministically generate a scenario from a :class:`SynthSpec`.

    Pure function of ``(spec, seed)``: the same pair always yields the same
    scenario.  Realized per-group base rates match the targets to well within
    0.02 (the adjustment is exact up to float rounding).
    """
    rng = random.Random(seed)
    groups = []
    free_share = [g for g in spec.groups if g.share is None]
    fixed = math.fsum(g.share for g in spec.groups if g.share is not None)
    default_share = (1.0 - fixed) / len(free_share) if free_share else 0.0
    for gspec in spec.groups:
        if not 0.0 <= gspec.base_rate <= 1.0:
            raise ScenarioValidationError(
                f"base-rate target {gspec.base_rate} outside [0, 1]"
            )
        if gspec.n_bins < 1:
            raise ScenarioValidationError("n_bins must be >= 1")
        lo, hi = gspec.score_range
        if not lo < hi:
            raise ScenarioValidationError("score range must be increasing")
        n = gspec.n_bins
        if n == 1:
            scores = [(lo + hi) / 2.0]
        else:
            scores = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
        raw = [rng.uniform(0.2, 1.0) for _ in range(n)]
        total = math.fsum(raw)
        masses = [x / total for x in raw]
        masses[-1] = 1.0 - math.fsum(masses[:-1])  # close the sum exactly
        rates = sorted(rng.uniform(0.0, 1.0) for _ in range(n))
        rates = _adjust_rates_to_base(rates, masses, gspec.base_rate)
        share = gspec.share if gspec.share is not None else default_share
        groups.append(
            GroupProfile(
                id=gspec.id,
                label=gspec.id,
                share=share,
                bins=tuple(
                    ScoreBin(score=s, mass=m, positive_rate=r)
                    for s, m, r in zip(scores, masses, rates)
                ),
                ses_tag=gspec.ses_tag,
            )
        )
    return Scenario(
        id=f"{spec.scenario_id}-{seed}",
        context_class=spec.context_class,
        utility_params=spec.utility_params,
        welfare_params=spec.welfare_params,
        groups=tuple(groups),
    )
