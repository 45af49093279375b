"""Finite policy grids: the search spaces every enumeration walks.

Three families:

* threshold grids: one cut point per group, drawn from the group's own bin
  scores plus a sentinel above the top score (the reject-all rule).  This is
  the default space and the one all shipped fixtures use.
* tau grids: per-bin acceptance probabilities on a regular step.  Much
  richer (it contains every randomized policy on the step lattice) and
  correspondingly explosive, hence the hard cap.
* explicit grids: a fixed list of policies, either inlined or named in the
  scenario file.  Used when the comparison of interest is between a handful
  of described policies rather than a whole space.

Enumeration order is deterministic for every grid so downstream tie-breaks
on "first in enumeration order" are reproducible.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .scenario import (
    Policy,
    Scenario,
    ScenarioError,
    ThresholdRule,
    VectorRule,
    policy_from_dict,
    policy_to_dict,
)

POLICY_CAP = 200_000

__all__ = [
    "POLICY_CAP",
    "GridSpecError",
    "GridCapError",
    "ThresholdGrid",
    "TauGrid",
    "ExplicitGrid",
    "Grid",
    "parse_grid",
    "enumerate_policies",
]


class GridSpecError(ScenarioError):
    """The grid description itself is unusable."""


class GridCapError(ScenarioError):
    """The grid would enumerate more policies than the cap allows."""


@dataclass(frozen=True)
class ThresholdGrid:
    """One threshold per group; ``thresholds`` overrides the derived ones."""

    thresholds: tuple[float, ...] | None = None

    def _candidates(self, scenario: Scenario) -> list[list[float]]:
        if self.thresholds is not None:
            if not self.thresholds:
                raise GridSpecError("threshold grid needs at least one threshold")
            fixed = sorted(self.thresholds)
            return [list(fixed) for _ in scenario.groups]
        out = []
        for g in scenario.groups:
            scores = [b.score for b in g.bins]
            out.append(scores + [scores[-1] + 1.0])
        return out

    def size(self, scenario: Scenario) -> int:
        return math.prod(len(c) for c in self._candidates(scenario))

    def policies(self, scenario: Scenario) -> list[Policy]:
        _check_cap(self.size(scenario))
        candidates = self._candidates(scenario)
        gids = scenario.group_ids
        out = []
        for combo in itertools.product(*candidates):
            out.append(
                Policy(rules={g: ThresholdRule(t) for g, t in zip(gids, combo)})
            )
        return out

    def as_dict(self) -> dict:
        doc: dict = {"kind": "threshold"}
        if self.thresholds is not None:
            doc["thresholds"] = list(self.thresholds)
        return doc


@dataclass(frozen=True)
class TauGrid:
    """Per-bin acceptance probabilities in {0, step, 2·step, ..., 1}."""

    step: float = 0.1

    def __post_init__(self) -> None:
        if not 0.0 < self.step <= 1.0:
            raise GridSpecError(f"tau step {self.step} outside (0, 1]")
        n = round(1.0 / self.step)
        if abs(n * self.step - 1.0) > 1e-9:
            raise GridSpecError(f"tau step {self.step} does not divide 1 evenly")

    def _levels(self) -> list[float]:
        n = round(1.0 / self.step)
        return [i / n for i in range(n + 1)]

    def size(self, scenario: Scenario) -> int:
        n_levels = len(self._levels())
        total_bins = sum(len(g.bins) for g in scenario.groups)
        return n_levels**total_bins

    def policies(self, scenario: Scenario) -> list[Policy]:
        _check_cap(self.size(scenario))
        levels = self._levels()
        per_group_vectors = []
        for g in scenario.groups:
            per_group_vectors.append(
                [tuple(v) for v in itertools.product(levels, repeat=len(g.bins))]
            )
        gids = scenario.group_ids
        out = []
        for combo in itertools.product(*per_group_vectors):
            out.append(
                Policy(rules={g: VectorRule(v) for g, v in zip(gids, combo)})
            )
        return out

    def as_dict(self) -> dict:
        return {"kind": "tau", "step": self.step}


@dataclass(frozen=True)
class ExplicitGrid:
    """A fixed policy list.  ``names`` pins which scenario policies, in order."""

    policies_: tuple[Policy, ...] = ()
    names: tuple[str, ...] | None = None

    def _resolve(self, scenario: Scenario) -> list[Policy]:
        if self.policies_:
            return list(self.policies_)
        names = self.names if self.names is not None else tuple(sorted(scenario.policies))
        if not names:
            raise GridSpecError(
                "explicit grid is empty and the scenario declares no named policies"
            )
        out = []
        for name in names:
            if name not in scenario.policies:
                raise GridSpecError(f"scenario has no policy named {name!r}")
            out.append(scenario.policies[name])
        return out

    def size(self, scenario: Scenario) -> int:
        return len(self._resolve(scenario))

    def policies(self, scenario: Scenario) -> list[Policy]:
        _check_cap(self.size(scenario))
        return self._resolve(scenario)

    def as_dict(self) -> dict:
        if self.policies_:
            return {
                "kind": "explicit",
                "policies": [policy_to_dict(p) for p in self.policies_],
            }
        doc: dict = {"kind": "named"}
        if self.names is not None:
            doc["names"] = list(self.names)
        return doc


Grid = Union[ThresholdGrid, TauGrid, ExplicitGrid]


def _check_cap(size: int) -> None:
    if size > POLICY_CAP:
        raise GridCapError(
            f"grid enumerates {size} policies, above the cap of {POLICY_CAP}; "
            "use a coarser grid (fewer thresholds or a larger tau step)"
        )


def parse_grid(doc: Mapping | None) -> Grid:
    """Parse a grid description; None means the default threshold grid."""
    if doc is None:
        return ThresholdGrid()
    if not isinstance(doc, Mapping):
        raise GridSpecError("grid spec must be an object")
    kind = doc.get("kind", "threshold")
    if kind == "threshold":
        thresholds = doc.get("thresholds")
        if thresholds is None:
            return ThresholdGrid()
        if not isinstance(thresholds, Sequence) or isinstance(thresholds, (str, bytes)):
            raise GridSpecError("grid thresholds must be an array of numbers")
        return ThresholdGrid(tuple(float(t) for t in thresholds))
    if kind == "tau":
        return TauGrid(step=float(doc.get("step", 0.1)))
    if kind == "named":
        names = doc.get("names")
        if names is None:
            return ExplicitGrid()
        return ExplicitGrid(names=tuple(str(n) for n in names))
    if kind == "explicit":
        policies = doc.get("policies")
        if not isinstance(policies, Sequence) or not policies:
            raise GridSpecError("explicit grid needs a non-empty policies array")
        return ExplicitGrid(policies_=tuple(policy_from_dict(p) for p in policies))
    raise GridSpecError(f"unknown grid kind {kind!r}")


def enumerate_policies(scenario: Scenario, grid: Grid | Mapping | None = None) -> list[Policy]:
    """All policies of the grid, in the grid's deterministic order."""
    if grid is None or isinstance(grid, Mapping):
        grid = parse_grid(grid)
    return grid.policies(scenario)
