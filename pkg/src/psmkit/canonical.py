"""Canonical JSON encoding shared by logs, snapshots, and hashing.

One byte form per value: keys sorted, no whitespace, UTF-8 text as-is,
floats quantized to 12 significant digits. NaN/Infinity never serialize.
"""
from __future__ import annotations

import json
import math
from typing import Any

from .errors import ParseError


def quantize(x: float) -> float:
    """Round to 12 significant digits; -0.0 collapses to 0.0."""
    if not math.isfinite(x):
        raise ValueError(f"non-finite number {x!r} cannot be canonicalized")
    q = float(f"{x:.12g}")
    return 0.0 if q == 0.0 else q


def _normalize(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return quantize(value)
    if isinstance(value, str):
        return value
    if isinstance(value, (list, tuple)):
        return [_normalize(v) for v in value]
    if isinstance(value, dict):
        out = {}
        for key, v in value.items():
            if not isinstance(key, str):
                raise ValueError(f"non-string key {key!r}")
            out[key] = _normalize(v)
        return out
    raise ValueError(f"unserializable value of type {type(value).__name__}")


def canonical_dumps(value: Any) -> str:
    """Serialize to the canonical single-line form (no trailing newline)."""
    return json.dumps(_normalize(value), sort_keys=True,
                      separators=(",", ":"), ensure_ascii=False,
                      allow_nan=False)


def canonical_loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}",
                         line=exc.lineno, column=exc.colno) from None


def canonicalize(value: Any) -> Any:
    """Normalize a JSON-like tree in place of a dump/load round trip."""
    return _normalize(value)
