"""Exact checks of the explicit-constant inequalities and ratio reports for the rest.

Checks that compare integers (exceptional-set counts, the intersection
bound, the three-projection inequality, the refinement pipeline) set
``Report.passed``. Lower bounds with unspecified constants only report a
ratio and leave ``passed`` as ``None``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce as _fold
from itertools import combinations
from typing import Mapping, Sequence

from . import fflinalg as fl
from .bounds import BoundSpec, eps0, evaluate, powers_le, small_set_bound
from .errors import (AmbientMismatch, BudgetExceeded, EmptySet, NotTransverse,
                     RangeError, SpecMismatch)
from .families import SubspaceFamily, is_nondegenerate
from .grassmann import count, enumerate_subspaces
from .incidence import (LineFamily, grosu_regime, incidences, slice_lines,
                        stevens_bound)
from .project import (DEFAULT_BUDGET, PointSet, bounding_product, dyadic_refine,
                      fiber_sizes, mass_floor, nice_basis, projection_profile,
                      projection_size, slice_decompose, to_frame)
from .report import Report, timed
from .subspace import (Subspace, coordinate_subspace, from_vectors, intersect,
                       is_transverse, subspace_sum)


# --- exceptional sets -------------------------------------------------------

def chen_verify(K: PointSet, m: int, statement: int, budget: int | None = DEFAULT_BUDGET) -> Report:
    """Exact check of the three exceptional-set estimates for ``|K| = p**s``.

    1. ``s <= m``: ``#{W : |pi^W K| <= p^t/10} <= (1/2) p^(m(n-m)-(m-t))`` for t in (0, s]
    2. ``s > m``:  ``#{W : |pi^W K| <= p^m/10} <= (1/2) p^(m(n-m)-(s-m))``
    3. ``s > 2m``: ``#{W : |pi^W K| != p^m}   <= 4 p^(m(n-m)-(s-2m))``

    W ranges over Gr(n, n - m). Since ``p^s = |K|`` every comparison clears
    to integers. In (1) the count only changes where ``floor(p^t/10)`` hits
    an attained projection size j, i.e. at ``p^t = 10 j``; these breakpoints
    are where the inequality is tightest, so only they are checked.
    """
    if statement not in (1, 2, 3):
        raise RangeError(f"statement must be 1, 2 or 3, got {statement}")
    n, p, size = K.n, K.p, len(K)
    if size == 0:
        raise EmptySet("chen_verify needs a nonempty set")
    rep = Report("verify chen", {"p": p, "n": n, "m": m, "statement": statement, "size": size})
    with timed(rep):
        s = math.log(size) / math.log(p)
        base = m * (n - m)
        hyp = {1: size <= p ** m, 2: size > p ** m, 3: size > p ** (2 * m)}[statement]
        rep.params["s"] = s
        if not hyp:
            rep.rows.append({"statement": statement, "hypothesis": False, "skipped": True})
            return rep
        sizes = [sz for _, sz in projection_profile(K, m, budget)]

        if statement == 1:
            breaks = [j for j in sorted(set(sizes)) if 10 * j <= size]
            if not breaks:
                rep.rows.append({"statement": 1, "hypothesis": True, "vacuous": True,
                                 "pass": True, "count": 0})
            for j in breaks:
                cnt = sum(1 for sz in sizes if sz <= j)
                # (1/2) p^(base - m + t) with p^t = 10 j
                rhs = 5 * j * p ** (base - m)
                rep.rows.append({"statement": 1, "hypothesis": True, "t": math.log(10 * j, p),
                                 "threshold": j, "count": cnt, "bound": rhs, "pass": cnt <= rhs})
        elif statement == 2:
            thr = p ** m // 10
            cnt = sum(1 for sz in sizes if sz <= thr)
            ok = 2 * cnt * size <= p ** (base + m)
            rep.rows.append({"statement": 2, "hypothesis": True, "threshold": thr, "count": cnt,
                             "bound": 0.5 * p ** (base + m) / size, "pass": ok})
        else:
            full = p ** m
            cnt = sum(1 for sz in sizes if sz != full)
            ok = cnt * size <= 4 * p ** (base + 2 * m)
            rep.rows.append({"statement": 3, "hypothesis": True, "count": cnt,
                             "bound": 4 * p ** (base + 2 * m) / size, "pass": ok})
        rep.passed = rep.all_pass()
    return rep


# --- lower-bound reports ----------------------------------------------------

def _max_projection(K: PointSet, members: Sequence[Subspace]) -> tuple[int, Subspace | None]:
    best, arg = -1, None
    for W in members:
        sz = projection_size(K, W)
        if sz > best:
            best, arg = sz, W
    return best, arg


def bound_report(K: PointSet, E, spec: BoundSpec, budget: int | None = DEFAULT_BUDGET) -> Report:
    """``max_W |pi^W(K)|`` against the named lower bound; never asserts the bound."""
    fams = list(E) if isinstance(E, (list, tuple)) else [E]
    if not fams:
        raise SpecMismatch("no family given")
    if len(fams) > 1:
        if spec.name != "improvement":
            raise SpecMismatch("a list of families is only meaningful for the improvement bound")
        if len({F.dim for F in fams}) != 1:
            raise SpecMismatch("families for a single bound must share a dimension")
        fam = SubspaceFamily(fams[0].p, fams[0].n, fams[0].dim, (W for F in fams for W in F))
    else:
        fam = fams[0]
    if fam.ambient != K.ambient:
        raise AmbientMismatch("point set and family in different spaces")
    rep = Report("verify bound", {"bound": spec.name, **spec.params(), "p": K.p, "n": K.n,
                                  "K": len(K), "E": len(fam)})
    with timed(rep):
        bound, flags = evaluate(spec, len(K), fam, budget)
        best, arg = _max_projection(K, fam.members)
        ratio = best / bound
        row = {"max_projection": best, "witness": arg, "bound": bound, "ratio": ratio,
               "hypotheses": flags, "hypotheses_hold": all(flags.values())}
        if spec.name == "planar":
            small = small_set_bound(len(K), len(fam))
            row["bound_small_set"] = small
            row["ratio_small_set"] = best / small
            row["grosu_regime"] = grosu_regime(len(K), len(fam), K.p)
        rep.rows.append(row)
        rep.passed = None if ratio > 0 else False
    return rep


def bourgain_holds(max_proj: int, K_size: int, E_size: int, m: int, n: int, eps: Fraction) -> bool:
    """Exact ``max_proj >= |K|^(m/n) |E|^eps``."""
    return powers_le([(K_size, Fraction(m, n)), (E_size, eps)], [(max_proj, 1)])


def divisor_scan(K: PointSet, E_by_m: Mapping[int, SubspaceFamily], eps,
                 budget: int | None = DEFAULT_BUDGET) -> Report:
    """Which divisors d != 1 of n are consistent with the observed bound failures.

    ``E_by_m[m]`` is a family in Gr(n, n - m). A divisor d is consistent when
    the bound ``|K|^(m/n)|E|^eps`` is met for every tested m that d does not
    divide.
    """
    n = K.n
    eps = Fraction(str(eps)) if isinstance(eps, float) else Fraction(eps)
    rep = Report("verify divisors", {"p": K.p, "n": n, "eps": eps, "K": len(K),
                                     "ms": sorted(E_by_m)})
    with timed(rep):
        holds = {}
        for m in sorted(E_by_m):
            E = E_by_m[m]
            if E.dim != n - m or E.ambient != K.ambient:
                raise SpecMismatch(f"family for m={m} must live in Gr({n}, {n - m})")
            best, arg = _max_projection(K, E.members)
            nondeg = is_nondegenerate(E, budget)[0]
            bound = len(K) ** (m / n) * len(E) ** float(eps)
            holds[m] = bourgain_holds(best, len(K), len(E), m, n, eps)
            rep.rows.append({"kind": "m", "m": m, "family_size": len(E), "nondegenerate": nondeg,
                             "max_projection": best, "witness": arg, "bound": bound,
                             "ratio": best / bound, "holds": holds[m]})
        consistent = []
        for d in range(2, n + 1):
            if n % d:
                continue
            tested = [m for m in holds if m % d]
            ok = all(holds[m] for m in tested)
            if ok:
                consistent.append(d)
            rep.rows.append({"kind": "divisor", "d": d, "tested_m": tested, "consistent": ok})
        rep.params["consistent_divisors"] = consistent
    return rep


# --- divisor sequences ------------------------------------------------------

def sequence_reduce(n: int, S) -> dict:
    """Close S under ``a + b`` (if <= n - 1) and ``a + b - n`` (if >= 1).

    ``reachable`` says whether 1 is in the closure. A reachable result comes
    with a witness ``path`` in which each entry is either given or derived
    from two earlier entries. Otherwise ``divisor = gcd(S + {n})`` is a
    nontrivial divisor of n dividing the whole closure.
    """
    S = sorted(set(S))
    if any(not 1 <= s <= n - 1 for s in S):
        raise RangeError(f"S must lie in [1, {n - 1}]")
    how: dict[int, tuple] = {s: ("given",) for s in S}
    order = list(S)
    frontier = True
    while frontier:
        frontier = False
        for i in range(len(order)):
            for j in range(i, len(order)):
                a, b = order[i], order[j]
                for val, rule in ((a + b, "sum"), (a + b - n, "sum-minus-n")):
                    if 1 <= val <= n - 1 and val not in how:
                        how[val] = (rule, a, b)
                        order.append(val)
                        frontier = True
    reachable = 1 in how
    out = {"n": n, "S": S, "closure": sorted(how), "reachable": reachable,
           "path": [], "divisor": None}
    if not reachable:
        out["divisor"] = _fold(math.gcd, S, n)
        return out
    index: dict[int, int] = {}
    path: list[dict] = []

    def emit(v):
        if v in index:
            return
        rule = how[v]
        if rule[0] != "given":
            emit(rule[1])
            emit(rule[2])
        index[v] = len(path)
        entry = {"value": v, "rule": rule[0]}
        if rule[0] != "given":
            entry["from"] = [index[rule[1]], index[rule[2]]]
        path.append(entry)

    emit(1)
    out["path"] = path
    return out


def validate_path(n: int, S, path: Sequence[dict]) -> bool:
    """Rule-by-rule check of a sequence: each entry in S or built from earlier ones."""
    S = set(S)
    if not path or path[-1]["value"] != 1:
        return False
    seen: list[int] = []
    for entry in path:
        v = entry["value"]
        if not 1 <= v <= n - 1:
            return False
        if v in S:
            pass
        elif not any(a + b == v or a + b - n == v for a in seen for b in seen):
            return False
        seen.append(v)
    return True


# --- elementary inequalities ------------------------------------------------

def intersection_bound_check(K: PointSet, W1: Subspace, W2: Subspace) -> Report:
    """``|pi^(W1 & W2)(K)| <= |pi^W1(K)| |pi^W2(K)|``."""
    if not (K.ambient == W1.ambient == W2.ambient):
        raise AmbientMismatch("K, W1, W2 must share the ambient space")
    rep = Report("verify intersection", {"p": K.p, "n": K.n, "K": len(K),
                                         "W1": W1, "W2": W2})
    with timed(rep):
        M1, M2 = projection_size(K, W1), projection_size(K, W2)
        Mc = projection_size(K, intersect(W1, W2))
        rep.rows.append({"M_cap": Mc, "M1": M1, "M2": M2, "pass": Mc <= M1 * M2})
        rep.passed = rep.all_pass()
    return rep


def lemma37_check(K: PointSet, W1: Subspace, W2: Subspace) -> Report:
    """``|K|^3 <= |pi^W1 K| |pi^W2 K| sum_x |K & (x + W1 + W2)|^2`` for transverse W1, W2.

    A violation is recorded as a finding in the row rather than raised.
    """
    if not (K.ambient == W1.ambient == W2.ambient):
        raise AmbientMismatch("K, W1, W2 must share the ambient space")
    if not is_transverse(W1, W2):
        raise NotTransverse("W1 and W2 must intersect trivially")
    rep = Report("verify lemma37", {"p": K.p, "n": K.n, "K": len(K), "W1": W1, "W2": W2})
    with timed(rep):
        M1, M2 = projection_size(K, W1), projection_size(K, W2)
        energy = sum(f * f for f in fiber_sizes(K, subspace_sum(W1, W2)))
        lhs, rhs = len(K) ** 3, M1 * M2 * energy
        rep.rows.append({"lhs": lhs, "rhs": rhs, "M1": M1, "M2": M2, "sum_sq": energy,
                         "slack": rhs - lhs, "equality": lhs == rhs, "pass": lhs <= rhs,
                         "finding": lhs > rhs})
        rep.passed = rep.all_pass()
    return rep


SUM_BOUND_CONSTANT = 4


def sum_bound_check(K: PointSet, W1: Subspace, W2: Subspace) -> Report:
    """Refine K dyadically along ``W1 + W2`` and check both guarantees.

    * mass: ``|K'| (floor(log2 |K|) + 1) >= |K|``
    * size: ``|pi^(W1+W2)(K')| |K'| <= 4 M1 M2`` with ``M_i = |pi^Wi(K)|``

    All fibers of K' are within a factor 2 of each other, so
    ``sum |fiber|^2 <= 2 |K'|^2 / N`` and the three-projection inequality
    gives ``N <= 2 M1 M2 / |K'|``; 4 leaves a factor 2 of room.
    """
    if not (K.ambient == W1.ambient == W2.ambient):
        raise AmbientMismatch("K, W1, W2 must share the ambient space")
    if not is_transverse(W1, W2):
        raise NotTransverse("W1 and W2 must intersect trivially")
    if not len(K):
        raise EmptySet("sum_bound_check needs a nonempty set")
    rep = Report("verify sum-bound", {"p": K.p, "n": K.n, "K": len(K), "W1": W1, "W2": W2})
    with timed(rep):
        U = subspace_sum(W1, W2)
        Kp, level = dyadic_refine(K, U)
        M1, M2 = projection_size(K, W1), projection_size(K, W2)
        N = projection_size(Kp, U)
        mass_ok = len(Kp) * mass_floor(len(K)) >= len(K)
        size_ok = N * len(Kp) <= SUM_BOUND_CONSTANT * M1 * M2
        rep.rows.append({"refined": len(Kp), "level": level, "M1": M1, "M2": M2,
                         "M_sum": N, "mass_ok": mass_ok, "size_ok": size_ok,
                         "pass": mass_ok and size_ok})
        rep.passed = rep.all_pass()
    return rep


# --- hyperplane slicing machinery -------------------------------------------

def pick_trivial_hyperplanes(E: SubspaceFamily) -> list[Subspace] | None:
    """n members whose intersection is zero, chosen greedily in family order."""
    n, p = E.n, E.p
    acc = from_vectors([tuple(int(i == j) for j in range(n)) for i in range(n)], p, n)
    chosen = []
    for W in E:
        nxt = intersect(acc, W)
        if nxt.dim < acc.dim:
            chosen.append(W)
            acc = nxt
            if acc.dim == 0:
                return chosen
    return None


def line_proof_check(K: PointSet, E: SubspaceFamily) -> Report:
    """Run the slicing argument for hyperplane families and check its exact steps.

    With M the largest projection over E: the frame built from n members
    gives coordinate sets with ``|A_i| <= M``; each planar slice is covered by
    one translate per fiber (at most M per member); and the incidence count
    of ``A_i x A_j`` with the union of covers is at least ``|E'| |K_x|``.
    """
    n, p = K.n, K.p
    if E.dim != n - 1 or E.ambient != K.ambient:
        raise SpecMismatch("line_proof_check needs a hyperplane family in K's space")
    if n < 2:
        raise RangeError("need n >= 2")
    rep = Report("verify line-proof", {"p": p, "n": n, "K": len(K), "E": len(E)})
    with timed(rep):
        Ws = pick_trivial_hyperplanes(E)
        if Ws is None:
            rep.rows.append({"kind": "summary", "no_common_line": False, "skipped": True})
            return rep
        frame = nice_basis(Ws)
        M = max(projection_size(K, W) for W in E)
        A = bounding_product(K, frame)
        prod_ok = all(len(A[i]) == projection_size(K, Ws[i]) <= M for i in range(n))

        # the frame vector missed by the most members, then the partner plane
        # on which those members cut out the most distinct lines
        outside = [[W for W in E if frame[i] not in W] for i in range(n)]
        i = max(range(n), key=lambda t: (len(outside[t]), -t))
        inv = fl.inverse(frame, p)
        best = None
        for j in range(n):
            if j == i:
                continue
            plane = from_vectors([frame[i], frame[j]], p, n)
            cut: dict[Subspace, Subspace] = {}
            for W in outside[i]:
                cut.setdefault(intersect(W, plane), W)
            if best is None or len(cut) > len(best[1]):
                best = (j, cut)
        j, cut = best
        Eprime = list(cut.items())

        Kc = to_frame(K, frame)
        slices = slice_decompose(Kc, coordinate_subspace([i, j], p, n))
        grid = PointSet(p, 2, ((a, b) for a in A[i] for b in A[j]))
        rows, all_ok = [], prod_ok
        total_I = 0
        for rep_x, Kx in slices.items():
            flat = PointSet(p, 2, ((c[i], c[j]) for c in Kx))
            Lx = LineFamily(p)
            cover_ok = True
            for line, W in Eprime:
                g = fl.vec_mat(line.basis[0], inv, p)
                direction = from_vectors([(g[i], g[j])], p, 2)
                Lw = slice_lines(flat, direction)
                cover_ok &= len(Lw) <= M and incidences(flat, Lw) == len(flat)
                Lx = Lx | Lw
            I = incidences(grid, Lx)
            total_I += I
            lower_ok = I >= len(Eprime) * len(flat)
            all_ok &= cover_ok and lower_ok
            rows.append({"kind": "slice", "slice": list(rep_x), "size": len(flat),
                         "lines": len(Lx), "incidences": I,
                         "lower": len(Eprime) * len(flat),
                         "stevens_ratio": I / stevens_bound(len(A[i]), len(A[j]), len(Lx)),
                         "pass": cover_ok and lower_ok})
        e1 = len(Eprime)
        rhs = M ** n * e1 ** 0.75 + M ** (n - 1) * e1
        rep.rows.append({"kind": "summary", "no_common_line": True, "frame": [list(v) for v in frame],
                         "pivot": i, "partner": j, "M": M, "A_sizes": [len(a) for a in A],
                         "E_prime": e1, "product_ok": prod_ok, "total_incidences": total_I,
                         "final_ratio": (e1 * len(K)) / rhs if rhs else 0.0, "pass": prod_ok})
        rep.rows.extend(rows)
        rep.passed = all_ok
    return rep


# --- hypotheses of the very-small-projection argument -----------------------

def improvement_hypotheses(E_by_dim: Sequence[SubspaceFamily], k: int, d: int,
                           budget: int | None = DEFAULT_BUDGET) -> Report:
    """Check the two covering hypotheses on ``E = union of E_by_dim``.

    * lines: every set S of at most k lines has some W in E missing all of S
    * transverse: every V with ``dim V <= d`` has some W in E with ``W & V = 0``

    Both are monotone, so only |S| = k and dim V = d are scanned. When the
    k-subsets of lines exceed the budget, a union bound over exact per-line
    counts (the k largest sum to less than |E|) decides the lines hypothesis
    if it can; otherwise it is left undecided (``None``).
    """
    if not E_by_dim:
        raise SpecMismatch("need at least one family")
    p, n = E_by_dim[0].p, E_by_dim[0].n
    if any(F.ambient != (p, n) for F in E_by_dim):
        raise AmbientMismatch("families in different spaces")
    members = [W for F in E_by_dim for W in F]
    rep = Report("verify improvement", {"p": p, "n": n, "k": k, "d": d, "E": len(members),
                                        "dims": [F.dim for F in E_by_dim]})
    with timed(rep):
        if any(W.dim == 0 for W in members):
            rep.rows.append({"hypothesis": "lines", "holds": True, "path": "zero-member"})
            rep.rows.append({"hypothesis": "transverse", "holds": True, "path": "zero-member"})
            return rep
        lines = list(enumerate_subspaces(n, 1, p))
        meets = [[not is_transverse(W, L) for L in lines] for W in members]
        kk = min(k, len(lines))
        combos = math.comb(len(lines), kk)
        row = {"hypothesis": "lines", "holds": None, "witness": None}
        if budget is None or combos <= budget:
            row["path"] = "enumeration"
            row["holds"] = True
            for S in combinations(range(len(lines)), kk):
                if not any(all(not mw[s] for s in S) for mw in meets):
                    row["holds"] = False
                    row["witness"] = [lines[s] for s in S]
                    break
        else:
            per_line = sorted((sum(mw[t] for mw in meets) for t in range(len(lines))), reverse=True)
            row["path"] = "union-bound"
            if sum(per_line[:kk]) < len(members):
                row["holds"] = True
        rep.rows.append(row)

        dd = min(d, n)
        total = count(n, dd, p)
        if budget is not None and total > budget:
            raise BudgetExceeded(total, budget, f"Gr({n}, {dd}) scan")
        row = {"hypothesis": "transverse", "holds": True, "witness": None, "path": "enumeration"}
        for V in enumerate_subspaces(n, dd, p):
            if not any(is_transverse(W, V) for W in members):
                row["holds"] = False
                row["witness"] = V
                break
        rep.rows.append(row)
    return rep


__all__ = [
    "chen_verify", "bound_report", "divisor_scan", "sequence_reduce", "validate_path",
    "intersection_bound_check", "lemma37_check", "sum_bound_check", "line_proof_check",
    "improvement_hypotheses", "pick_trivial_hyperplanes", "bourgain_holds", "eps0",
]
