"""Canonical JSON: the byte-level contract all three entry points share."""

import json

import pytest

from fairnav import canonical_bytes, canonical_json, cents, dollars


class TestEncoding:
    def test_keys_sorted_no_whitespace(self):
        assert canonical_json({"b": 1, "a": 2}) == '{"a":2,"b":1}'

    def test_floats_nine_decimals(self):
        assert canonical_json(0.1) == "0.100000000"
        assert canonical_json(1 / 3) == "0.333333333"

    def test_negative_zero_collapses(self):
        assert canonical_json(-0.0) == "0.000000000"

    def test_tiny_negatives_do_not_leave_a_signed_zero(self):
        # found by the round-trip property: -3e-123 used to render "-0.000000000"
        assert canonical_json(-3.097357449851235e-123) == "0.000000000"

    def test_integers_stay_integers(self):
        assert canonical_json({"cents": 82716892000}) == '{"cents":82716892000}'

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            canonical_json(float("nan"))

    def test_infinity_rejected(self):
        with pytest.raises(ValueError):
            canonical_json({"x": float("inf")})

    def test_nested_containers(self):
        doc = {"xs": [1, 2.5, None, True], "inner": {"k": "v"}}
        assert canonical_json(doc) == '{"inner":{"k":"v"},"xs":[1,2.500000000,null,true]}'

    def test_tuples_encode_as_arrays(self):
        assert canonical_json((1, 2)) == "[1,2]"

    def test_non_string_keys_rejected(self):
        with pytest.raises(TypeError):
            canonical_json({1: "x"})

    def test_unencodable_types_rejected(self):
        with pytest.raises(TypeError):
            canonical_json({"x": object()})

    def test_bytes_is_utf8_of_text(self):
        doc = {"label": "group-é"}
        assert canonical_bytes(doc) == canonical_json(doc).encode("utf-8")

    def test_output_parses_back(self):
        doc = {"a": [0.5, {"b": None}], "c": "str"}
        assert json.loads(canonical_json(doc)) == {"a": [0.5, {"b": None}], "c": "str"}

    def test_deterministic(self):
        doc = {"z": 1.0, "a": [3, 2.0], "m": {"y": True, "x": False}}
        assert canonical_bytes(doc) == canonical_bytes(json.loads(json.dumps(doc)))


class TestCurrency:
    def test_cents_rounding(self):
        assert cents(12.34) == 1234
        assert cents(0.0) == 0
        assert cents(-1.5) == -150

    def test_dollars_inverse_on_integers(self):
        assert dollars(1234) == 12.34
        assert cents(dollars(82716892000)) == 82716892000

    def test_cents_is_integral(self):
        assert isinstance(cents(0.3075), int)
