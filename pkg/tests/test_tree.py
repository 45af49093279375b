"""Decision-tree loading, validation, and traversal."""

import json

import pytest

from fairnav import (
    DecisionNode,
    DecisionTree,
    TreeError,
    builtin_tree,
    load_tree,
    traverse,
)
from fairnav.tree import tree_from_dict, tree_to_dict


class TestWorkedPaths:
    def test_representation_path(self):
        res = traverse(builtin_tree(), {
            "boost_policy": "yes",
            "representation": "proportional",
        })
        assert res.leaf == "demographic_parity"
        assert res.complete

    def test_error_type_path(self):
        res = traverse(builtin_tree(), {
            "boost_policy": "no",
            "ground_truth": "available",
            "label_annotation": "succeeded",
            "evaluation": "recall",
            "sensitive_error": "false_positive",
        })
        assert res.leaf == "predictive_equality"

    def test_path_records_each_hop(self):
        res = traverse(builtin_tree(), {
            "boost_policy": "yes",
            "representation": "proportional",
        })
        assert res.path == (
            ("boost_policy", "yes"),
            ("representation", "proportional"),
        )

    def test_extra_answers_for_unvisited_nodes_are_ignored(self):
        res = traverse(builtin_tree(), {
            "boost_policy": "yes",
            "representation": "proportional",
            "evaluation": "recall",  # not on this path
        })
        assert res.leaf == "demographic_parity"


class TestPartialTraversal:
    def test_empty_answers_stop_at_root(self):
        res = traverse(builtin_tree(), {})
        assert res.leaf is None
        assert not res.complete
        assert res.remaining[0][0] == "boost_policy"
        assert len(res.remaining) == 6  # every question still reachable

    def test_partial_path_lists_downstream_questions(self):
        res = traverse(builtin_tree(), {"boost_policy": "no"})
        assert res.leaf is None
        assert [n for n, _ in res.remaining] == [
            "ground_truth", "label_annotation", "evaluation", "sensitive_error",
        ]

    def test_as_dict_shapes(self):
        doc = traverse(builtin_tree(), {"boost_policy": "no"}).as_dict()
        assert doc["leaf"] is None
        assert doc["path"] == [{"node": "boost_policy", "answer": "no"}]
        assert doc["remaining"][0]["node"] == "ground_truth"
        assert "question" in doc["remaining"][0]


class TestErrors:
    def test_unknown_token_names_node_and_token(self):
        with pytest.raises(TreeError, match=r"boost_policy.*maybe"):
            traverse(builtin_tree(), {"boost_policy": "maybe"})

    def test_unknown_token_lists_valid_ones(self):
        with pytest.raises(TreeError, match="yes"):
            traverse(builtin_tree(), {"boost_policy": "maybe"})

    def test_missing_root(self):
        node = DecisionNode(id="a", question="?", answers={"x": "demographic_parity"})
        with pytest.raises(TreeError):
            DecisionTree(nodes={"a": node}, root="nope")

    def test_unresolved_target(self):
        node = DecisionNode(id="a", question="?", answers={"x": "nowhere"})
        with pytest.raises(TreeError, match="nowhere"):
            DecisionTree(nodes={"a": node}, root="a")

    def test_cycle_detected(self):
        a = DecisionNode(id="a", question="?", answers={"x": "b"})
        b = DecisionNode(id="b", question="?", answers={"x": "a"})
        with pytest.raises(TreeError, match="cycle"):
            DecisionTree(nodes={"a": a, "b": b}, root="a")

    def test_node_id_may_not_shadow_a_metric(self):
        with pytest.raises(TreeError):
            DecisionNode(id="demographic_parity", question="?", answers={"x": "equal_opportunity"})

    def test_node_needs_answers(self):
        with pytest.raises(TreeError):
            DecisionNode(id="a", question="?", answers={})


class TestSerialization:
    def test_roundtrip(self):
        t = builtin_tree()
        again = tree_from_dict(tree_to_dict(t))
        assert tree_to_dict(again) == tree_to_dict(t)

    def test_file_format(self, tmp_path):
        doc = tree_to_dict(builtin_tree())
        assert set(doc) == {"nodes", "root"}
        assert all(set(n) == {"id", "question", "answers"} for n in doc["nodes"])
        path = tmp_path / "tree.json"
        path.write_text(json.dumps(doc))
        loaded = load_tree(path)
        assert traverse(loaded, {"boost_policy": "yes", "representation": "proportional"}).leaf == "demographic_parity"

    def test_custom_tree_usable(self):
        doc = {
            "root": "only",
            "nodes": [
                {"id": "only", "question": "Pick one?",
                 "answers": {"left": "equal_opportunity", "right": "predictive_parity"}},
            ],
        }
        t = tree_from_dict(doc)
        assert traverse(t, {"only": "right"}).leaf == "predictive_parity"

    def test_missing_fields_named(self):
        with pytest.raises(TreeError, match="question"):
            tree_from_dict({"root": "a", "nodes": [{"id": "a", "answers": {"x": "demographic_parity"}}]})
