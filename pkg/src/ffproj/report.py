"""Structured results with a stable JSON shape and a CSV projection of rows."""
from __future__ import annotations

import csv
import io
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .subspace import Subspace


def jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return round(x, 12)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Subspace):
        return x.literal()
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (set, frozenset)):
        return [jsonable(v) for v in sorted(x)]
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "points"):  # PointSet
        return [list(v) for v in x.points]
    raise TypeError(f"cannot serialize {type(x).__name__}")


@dataclass
class Report:
    command: str
    params: dict = field(default_factory=dict)
    seed: int | None = None
    rows: list[dict] = field(default_factory=list)
    passed: bool | None = None
    timing_ms: float = 0.0

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "command": self.command,
            "params": jsonable(self.params),
            "seed": self.seed,
            "rows": jsonable(self.rows),
            "pass": self.passed,
        }
        if timing:
            d["timing_ms"] = round(self.timing_ms, 3)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2)

    def to_csv(self) -> str:
        rows = jsonable(self.rows)
        keys: list[str] = []
        for r in rows:
            keys.extend(k for k in r if k not in keys)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        return buf.getvalue()

    def all_pass(self) -> bool | None:
        """Fold row-level ``pass`` flags: False if any False, None if none checked."""
        flags = [r["pass"] for r in self.rows if r.get("pass") is not None]
        if not flags:
            return None
        return all(flags)


@contextmanager
def timed(report: Report):
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.timing_ms = (time.perf_counter() - t0) * 1000.0
