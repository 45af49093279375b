"""Questionnaire-style metric picker: a small answer-token decision tree.

The built-in tree contains only the branches whose outcomes are actually
settled: a representation-boosting policy with proportional goals points to
demographic parity, and the no-policy route through ground truth, label
annotation, and a recall focus where false positives are the sensitive error
points to predictive equality.  Other answer tokens exist in richer trees;
load one from a file rather than guessing what unlisted branches conclude.

A tree answer is advice about which measure fits the situation, nothing
more.  Pair it with the welfare-based selection and the cross-check before
acting on it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .metrics import MetricId
from .scenario import ScenarioError

__all__ = [
    "TreeError",
    "DecisionNode",
    "DecisionTree",
    "TraversalResult",
    "builtin_tree",
    "tree_from_dict",
    "tree_to_dict",
    "load_tree",
    "traverse",
]


class TreeError(ScenarioError):
    """Malformed tree or invalid traversal input."""


_METRIC_VALUES = {m.value for m in MetricId}


@dataclass(frozen=True)
class DecisionNode:
    id: str
    question: str
    answers: Mapping[str, str]  # token -> child node id or leaf metric id

    def __post_init__(self) -> None:
        if not self.id:
            raise TreeError("node id must be non-empty")
        if self.id in _METRIC_VALUES:
            raise TreeError(f"node id {self.id!r} collides with a metric id")
        if not self.answers:
            raise TreeError(f"node {self.id}: needs at least one answer")


@dataclass(frozen=True)
class DecisionTree:
    nodes: Mapping[str, DecisionNode]
    root: str

    def __post_init__(self) -> None:
        if self.root not in self.nodes:
            raise TreeError(f"root {self.root!r} is not a node")
        for node in self.nodes.values():
            for token, target in node.answers.items():
                if target in self.nodes:
                    continue
                if target not in _METRIC_VALUES:
                    raise TreeError(
                        f"node {node.id}: answer {token!r} targets {target!r}, "
                        "which is neither a node nor a metric"
                    )
        self._check_acyclic()

    def _check_acyclic(self) -> None:
        state: dict[str, int] = {}  # 1 = on stack, 2 = done

        def visit(node_id: str) -> None:
            if state.get(node_id) == 2:
                return
            if state.get(node_id) == 1:
                raise TreeError(f"tree has a cycle through node {node_id!r}")
            state[node_id] = 1
            for target in self.nodes[node_id].answers.values():
                if target in self.nodes:
                    visit(target)
            state[node_id] = 2

        visit(self.root)

    def node(self, node_id: str) -> DecisionNode:
        return self.nodes[node_id]


@dataclass(frozen=True)
class TraversalResult:
    leaf: MetricId | None
    path: tuple[tuple[str, str], ...]  # (node id, answer token) in order
    remaining: tuple[tuple[str, str], ...]  # (node id, question) still open

    @property
    def complete(self) -> bool:
        return self.leaf is not None

    def as_dict(self) -> dict:
        return {
            "leaf": self.leaf.value if self.leaf is not None else None,
            "path": [{"node": n, "answer": a} for n, a in self.path],
            "remaining": [
                {"node": n, "question": q} for n, q in self.remaining
            ],
        }


def builtin_tree() -> DecisionTree:
    nodes = [
        DecisionNode(
            id="boost_policy",
            question=(
                "Is there a policy to actively boost the representation of "
                "specific groups?"
            ),
            answers={"yes": "representation", "no": "ground_truth"},
        ),
        DecisionNode(
            id="representation",
            question="Is the goal proportional representation of the groups?",
            answers={"proportional": "demographic_parity"},
        ),
        DecisionNode(
            id="ground_truth",
            question="Is a reliable ground truth for the decision available?",
            answers={"available": "label_annotation"},
        ),
        DecisionNode(
            id="label_annotation",
            question="Did annotating the outcome labels succeed?",
            answers={"succeeded": "evaluation"},
        ),
        DecisionNode(
            id="evaluation",
            question="Is the evaluation focused on recall or on precision?",
            answers={"recall": "sensitive_error"},
        ),
        DecisionNode(
            id="sensitive_error",
            question=(
                "Which error type is the sensitive one, false positives or "
                "false negatives?"
            ),
            answers={"false_positive": "predictive_equality"},
        ),
    ]
    return DecisionTree(nodes={n.id: n for n in nodes}, root="boost_policy")


def tree_from_dict(doc: Mapping) -> DecisionTree:
    if not isinstance(doc, Mapping):
        raise TreeError("tree document must be an object")
    if "nodes" not in doc or "root" not in doc:
        raise TreeError("tree document needs 'nodes' and 'root'")
    nodes = {}
    for i, node_doc in enumerate(doc["nodes"]):
        if not isinstance(node_doc, Mapping):
            raise TreeError(f"nodes[{i}] must be an object")
        try:
            node = DecisionNode(
                id=str(node_doc["id"]),
                question=str(node_doc["question"]),
                answers={
                    str(k): str(v) for k, v in dict(node_doc["answers"]).items()
                },
            )
        except KeyError as exc:
            raise TreeError(f"nodes[{i}] missing field {exc.args[0]!r}") from exc
        if node.id in nodes:
            raise TreeError(f"duplicate node id {node.id!r}")
        nodes[node.id] = node
    return DecisionTree(nodes=nodes, root=str(doc["root"]))


def tree_to_dict(tree: DecisionTree) -> dict:
    return {
        "root": tree.root,
        "nodes": [
            {
                "id": n.id,
                "question": n.question,
                "answers": dict(n.answers),
            }
            for n in tree.nodes.values()
        ],
    }


def load_tree(path: str | Path) -> DecisionTree:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise TreeError(f"invalid tree JSON: {exc}") from exc
    return tree_from_dict(doc)


def _reachable_questions(tree: DecisionTree, start: str) -> tuple[tuple[str, str], ...]:
    """Breadth-first (node, question) list from ``start``, start included."""
    seen = [start]
    queue = [start]
    while queue:
        node_id = queue.pop(0)
        for target in tree.node(node_id).answers.values():
            if target in tree.nodes and target not in seen:
                seen.append(target)
                queue.append(target)
    return tuple((nid, tree.node(nid).question) for nid in seen)


def traverse(tree: DecisionTree, answers: Mapping[str, str]) -> TraversalResult:
    """Walk the tree with per-node answer tokens.

    Stops at the first node without an answer and lists the questions still
    reachable from there; reaching a metric closes the traversal.
    """
    path: list[tuple[str, str]] = []
    current = tree.root
    while True:
        node = tree.node(current)
        if node.id not in answers:
            return TraversalResult(
                leaf=None,
                path=tuple(path),
                remaining=_reachable_questions(tree, current),
            )
        token = answers[node.id]
        if token not in node.answers:
            raise TreeError(
                f"node {node.id!r} has no answer token {token!r}; "
                f"valid tokens: {sorted(node.answers)}"
            )
        path.append((node.id, token))
        target = node.answers[token]
        if target in tree.nodes:
            current = target
            continue
        return TraversalResult(
            leaf=MetricId(target), path=tuple(path), remaining=()
        )
