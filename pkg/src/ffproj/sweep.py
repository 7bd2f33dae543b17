"""Seeded instance sweeps driven by a JSON config.

Example config::

    {
      "seed": 0,
      "check": "bound",
      "floor": "1/4",
      "require_hypotheses": true,
      "cells": [
        {"name": "line p=7 n=2",
         "points": {"generator": "random_pointset",
                    "params": {"n": 2, "p": 7, "size": {"range": [3, 21]}}},
         "family": {"generator": "random_family",
                    "params": {"n": 2, "m": 1, "p": 7, "size": {"range": [2, 8]}}},
         "bound": {"name": "line"},
         "instances": 50}
      ]
    }

``{"range": [lo, hi]}`` anywhere in ``params`` is drawn uniformly per
attempt. ``points`` may also be a list of generator specs, used round-robin
over attempts. Attempt ``a`` of cell ``c`` draws from ``Rng(seed).child(c).child(a)``,
so every instance is fixed by the config alone, whatever the scheduling.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .bounds import BoundSpec
from .errors import ParseError
from .gen import GENERATORS, Rng
from .grassmann import sample_uniform
from .report import Report, timed
from .subspace import is_transverse
from .verify import (bound_report, chen_verify, intersection_bound_check,
                     lemma37_check, sum_bound_check)

CHECKS = ("bound", "intersection", "lemma37", "sum_bound", "chen")


@dataclass
class SweepConfig:
    cells: list[dict]
    check: str = "bound"
    seed: int = 0
    floor: Fraction = Fraction(1, 4)
    require_hypotheses: bool = True
    max_attempts: int = 5000
    jobs: int = 1

    @classmethod
    def from_dict(cls, d: dict) -> SweepConfig:
        if "cells" not in d:
            raise ParseError("sweep config needs 'cells'", "<config>")
        cfg = cls(cells=d["cells"], check=d.get("check", "bound"), seed=int(d.get("seed", 0)),
                  floor=Fraction(str(d.get("floor", "1/4"))),
                  require_hypotheses=bool(d.get("require_hypotheses", True)),
                  max_attempts=int(d.get("max_attempts", 5000)), jobs=int(d.get("jobs", 1)))
        if cfg.check not in CHECKS:
            raise ParseError(f"unknown check {cfg.check!r}; expected one of {CHECKS}", "<config>")
        return cfg

    @classmethod
    def load(cls, path) -> SweepConfig:
        try:
            return cls.from_dict(json.loads(Path(path).read_text()))
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, str(path), exc.lineno, exc.colno) from None


def resolve(value, rng: Rng):
    if isinstance(value, dict):
        if set(value) == {"range"}:
            lo, hi = value["range"]
            return rng.randint(lo, hi)
        return {k: resolve(v, rng) for k, v in value.items()}
    if isinstance(value, list):
        return [resolve(v, rng) for v in value]
    return value


def _generate(spec: dict, rng: Rng):
    name = spec["generator"]
    params = resolve(spec.get("params", {}), rng)
    if name == "random_subspace":
        return sample_uniform(params["n"], params["m"], params["p"], rng)
    if name not in GENERATORS:
        raise ParseError(f"unknown generator {name!r}", "<config>")
    return GENERATORS[name](params, rng)


def _attempt(cfg: SweepConfig, cell: dict, rng: Rng, attempt: int):
    """One draw; returns (accepted, row, passed)."""
    pts = cell["points"]
    if isinstance(pts, list):
        pts = pts[attempt % len(pts)]
    K = _generate(pts, rng)
    if not len(K):
        return False, None, None
    if cfg.check == "bound":
        E = _generate(cell["family"], rng)
        if not len(E):
            return False, None, None
        spec = BoundSpec(**{k: (Fraction(str(v)) if k in ("eps", "delta", "kappa") else v)
                            for k, v in cell["bound"].items()})
        r = bound_report(K, E, spec).rows[0]
        if cfg.require_hypotheses and not r["hypotheses_hold"]:
            return False, None, None
        ok = r["ratio"] >= cfg.floor
        row = {"K": len(K), "E": len(E), "max_projection": r["max_projection"],
               "bound": r["bound"], "ratio": r["ratio"], "pass": ok}
        return True, row, ok
    if cfg.check == "chen":
        rep = chen_verify(K, cell["m"], cell["statement"])
        if rep.passed is None:
            return False, None, None
        return True, {"K": len(K), "rows": rep.rows, "pass": rep.passed}, rep.passed
    W1 = _generate(cell["W1"], rng)
    W2 = _generate(cell["W2"], rng)
    if cfg.check in ("lemma37", "sum_bound") and not is_transverse(W1, W2):
        return False, None, None
    fn = {"intersection": intersection_bound_check, "lemma37": lemma37_check,
          "sum_bound": sum_bound_check}[cfg.check]
    rep = fn(K, W1, W2)
    return True, {"K": len(K), "W1": W1, "W2": W2, **rep.rows[0]}, rep.passed


def run_cell(cfg: SweepConfig, index: int) -> tuple[list[dict], dict]:
    cell = cfg.cells[index]
    want = int(cell.get("instances", 1))
    base = Rng(cfg.seed).child(index)
    rows = []
    attempt = 0
    while len(rows) < want and attempt < cfg.max_attempts:
        accepted, row, _ = _attempt(cfg, cell, base.child(attempt), attempt)
        if accepted:
            rows.append({"cell": index, "instance": len(rows), "attempt": attempt, **row})
        attempt += 1
    summary = {"kind": "cell", "cell": index, "name": cell.get("name", str(index)),
               "instances": len(rows), "attempts": attempt, "complete": len(rows) == want}
    if cfg.check == "bound" and rows:
        summary["min_ratio"] = min(r["ratio"] for r in rows)
        summary["max_ratio"] = max(r["ratio"] for r in rows)
    summary["pass"] = summary["complete"] and all(r["pass"] for r in rows)
    return rows, summary


def _run_cell_star(args):
    return run_cell(*args)


def run_sweep(cfg: SweepConfig) -> Report:
    rep = Report("sweep", {"check": cfg.check, "floor": cfg.floor, "cells": len(cfg.cells),
                           "require_hypotheses": cfg.require_hypotheses}, seed=cfg.seed)
    with timed(rep):
        jobs = [(cfg, i) for i in range(len(cfg.cells))]
        if cfg.jobs > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
                results = list(ex.map(_run_cell_star, jobs))
        else:
            results = [run_cell(*j) for j in jobs]
        summaries = []
        for rows, summary in results:
            rep.rows.extend(rows)
            summaries.append(summary)
        rep.rows.extend(summaries)
        rep.passed = all(s["pass"] for s in summaries)
    return rep
