"""Structured run reports: one text rendering, one JSON rendering.

The JSON form is deterministic — keys sorted, values canonicalized — so two
runs with identical inputs, flags, and field configuration produce
byte-identical documents once the single top-level "timings" key is
removed. Fractions render as exact "p/q" strings; nothing is rounded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

SCHEMA_VERSION = 1


@dataclass
class RunReport:
    command: str
    parameters: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    certificates: list[dict[str, Any]] = field(default_factory=list)
    rank_ledger: dict[str, tuple[int, int, int]] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    def to_jsonable(self, include_timings: bool = True) -> dict[str, Any]:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "parameters": _jsonify(self.parameters),
            "results": _jsonify(self.results),
            "certificates": _jsonify(self.certificates),
            "rank_ledger": {
                label: {"rows": r, "cols": c, "rank": k}
                for label, (r, c, k) in self.rank_ledger.items()
            },
        }
        if include_timings:
            doc["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return doc

    def render_json(self, include_timings: bool = True) -> str:
        return json.dumps(self.to_jsonable(include_timings), indent=2, sort_keys=True)

    def render_text(self) -> str:
        lines = [f"== nodalcert {self.command} report (schema {SCHEMA_VERSION}) =="]
        for key in sorted(self.parameters):
            lines.append(f"{key}: {_textify(self.parameters[key])}")
        if self.results:
            lines.append("-- results --")
            for key in sorted(self.results):
                lines.append(f"{key}: {_textify(self.results[key])}")
        for cert in self.certificates:
            lines.append("-- certificate --")
            for key in sorted(cert):
                lines.append(f"{key}: {_textify(cert[key])}")
        if self.rank_ledger:
            lines.append(f"-- rank ledger ({len(self.rank_ledger)} entries) --")
            for label, (r, c, k) in self.rank_ledger.items():
                lines.append(f"{label}: {r} x {c} -> rank {k}")
        if self.timings:
            lines.append("-- timings (s) --")
            for key in sorted(self.timings):
                lines.append(f"{key}: {self.timings[key]:.3f}")
        return "\n".join(lines) + "\n"


def _jsonify(obj: Any) -> Any:
    """Canonicalize to JSON-safe types; exact values stay exact."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonify(v) for v in obj.tolist()]
    return repr(obj)


def _textify(obj: Any) -> str:
    if isinstance(obj, dict):
        return ", ".join(f"{k}={_textify(v)}" for k, v in obj.items())
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_textify(v) for v in obj) + "]"
    return str(obj)
