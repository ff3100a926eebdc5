"""Stable JSON report serialization.

Keys are sorted and floats rendered as fixed 6-decimal values so golden
files are byte-identical across runs and platforms.
"""

from __future__ import annotations

import json
from typing import Mapping


def _format_value(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if value == 0.0:
            value = 0.0  # normalize -0.0
        return f"{value:.6f}"
    return json.dumps(value, ensure_ascii=False)


def format_report(data: Mapping[str, object]) -> str:
    lines = [f"  {json.dumps(key)}: {_format_value(data[key])}" for key in sorted(data)]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def display_table(data: Mapping[str, object], scale_keys: frozenset[str] | None = None) -> str:
    """Human-readable table; scores are shown x100, the usual presentation."""
    rows = []
    for key in sorted(data):
        value = data[key]
        if isinstance(value, float) and (scale_keys is None or key in scale_keys):
            rows.append(f"{key:<20} {100.0 * value:8.2f}")
        else:
            rows.append(f"{key:<20} {value!s:>8}")
    return "\n".join(rows)
