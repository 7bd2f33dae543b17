"""Run the implicit-constant probe sweep and record per-cell minimum ratios.

Each cell draws K (uniform random or random product) and a random family E,
keeps only instances meeting the bound's hypotheses, and reports
max_W |pi^W K| / bound. This is a probe of unspecified constants, not a
check of a proven inequality.

    python scripts/run_probe.py                 # compare against the baseline
    python scripts/run_probe.py --write         # refresh the baseline
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ffproj.sweep import SweepConfig, run_sweep

HERE = Path(__file__).resolve().parent
CONFIG = HERE / "probe_config.json"
BASELINE = HERE.parent / "baselines" / "probe_baseline.json"


def summarize(report) -> dict:
    cells = [r for r in report.rows if r.get("kind") == "cell"]
    return {
        "label": "probe of implicit constants (not a theorem check)",
        "config": "scripts/probe_config.json",
        "seed": report.seed,
        "floor": str(report.params["floor"]),
        "pass": report.passed,
        "cells": [{"name": c["name"], "instances": c["instances"], "attempts": c["attempts"],
                   "min_ratio": round(c["min_ratio"], 12), "max_ratio": round(c["max_ratio"], 12)}
                  for c in cells],
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config", default=str(CONFIG))
    ap.add_argument("--baseline", default=str(BASELINE))
    ap.add_argument("--write", action="store_true", help="overwrite the baseline")
    ap.add_argument("--jobs", type=int, default=1)
    a = ap.parse_args(argv)

    cfg = SweepConfig.load(a.config)
    cfg.jobs = a.jobs
    summary = summarize(run_sweep(cfg))
    for c in summary["cells"]:
        print(f"{c['name']:<28} n={c['instances']:>3}  min ratio {c['min_ratio']:.4f}")
    print("floor", summary["floor"], "pass" if summary["pass"] else "FAIL")

    path = Path(a.baseline)
    if a.write:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(summary, indent=2) + "\n")
        print("wrote", path)
    elif path.exists():
        old = json.loads(path.read_text())
        if old["cells"] != summary["cells"]:
            print("baseline differs from this run", file=sys.stderr)
            return 1
        print("matches", path)
    return 0 if summary["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
