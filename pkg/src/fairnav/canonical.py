"""Canonical JSON encoding shared by the library, the CLI and the HTTP service.

Every report that leaves the engine goes through :func:`canonical_json`, so the
three entry points produce byte-identical output for identical inputs.  The
encoding is deliberately rigid:

* object keys are sorted,
* floats are written with exactly nine decimal places (probabilities,
  disparities and welfare values never need more at desk scale),
* currency amounts are integers in cents (callers convert with :func:`cents`),
* no whitespace.
"""

from __future__ import annotations

import json
import math
from typing import Any

__all__ = ["canonical_json", "canonical_bytes", "cents", "dollars"]


def _format_float(value: float) -> str:
    if not math.isfinite(value):
        raise ValueError(f"canonical JSON requires finite numbers, got {value!r}")
    text = f"{value:.9f}"
    # collapse signed zero AFTER formatting: tiny negatives round to zero at
    # nine decimals and would otherwise keep their sign
    if text == "-0.000000000":
        return "0.000000000"
    return text


def _encode(obj: Any, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):  # bool handled above
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        first = True
        for key in sorted(obj):
            if not isinstance(key, str):
                raise TypeError(f"canonical JSON keys must be strings, got {key!r}")
            if not first:
                out.append(",")
            first = False
            out.append(json.dumps(key))
            out.append(":")
            _encode(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _encode(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot canonicalize {type(obj).__name__}")


def canonical_json(obj: Any) -> str:
    """Render ``obj`` (plain dicts/lists/scalars) as canonical JSON text."""
    out: list[str] = []
    _encode(obj, out)
    return "".join(out)


def canonical_bytes(obj: Any) -> bytes:
    return canonical_json(obj).encode("utf-8")


def cents(amount: float) -> int:
    """Convert a currency amount to integer cents.

    Rounds to the nearest cent; ledger inputs are whole dollars or exact cent
    fractions so the conversion is exact where exactness matters.
    """
    return round(amount * 100)


def dollars(amount_cents: int) -> float:
    return amount_cents / 100.0
