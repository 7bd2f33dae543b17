"""Print the count of m-subspaces meeting a fixed m'-subspace nontrivially, next to its bound.

For each (p, n, m, m') the exact count comes from enumeration and is cross-checked
against the transverse-count identity. The ``x2`` column flags cells where the
exact count exceeds twice the bound.

    python scripts/intersecting_grid.py --primes 2,3,5 --max-n 4
"""
from __future__ import annotations

import argparse
import sys

from ffproj.grassmann import count_intersecting
from ffproj.subspace import coordinate_subspace, zero


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", default="2,3,5")
    ap.add_argument("--max-n", type=int, default=4)
    a = ap.parse_args(argv)

    worst = 0
    print(f"{'p':>2} {'n':>2} {'m':>2} {'mp':>2} {'exact':>8} {'bound':>10}  x2")
    for p in (int(s) for s in a.primes.split(",")):
        for n in range(1, a.max_n + 1):
            for mp in range(n + 1):
                V = coordinate_subspace(range(mp), p, n) if mp else zero(p, n)
                for m in range(n - mp + 1):
                    exact, bound = count_intersecting(V, m, method="enumerate")
                    if exact != count_intersecting(V, m, method="identity")[0]:
                        print("identity mismatch", p, n, m, mp, file=sys.stderr)
                        return 2
                    over = exact > 2 * bound
                    worst += over
                    print(f"{p:>2} {n:>2} {m:>2} {mp:>2} {exact:>8} {float(bound):>10.2f}  {'OVER' if over else 'ok'}")
    print(f"{worst} cell(s) exceed twice the bound")
    return 1 if worst else 0


if __name__ == "__main__":
    sys.exit(main())
