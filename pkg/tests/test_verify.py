import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ffproj.bounds import BoundSpec, eps0, evaluate, powers_le
from ffproj.errors import (AmbientMismatch, EmptySet, NotTransverse, RangeError,
                           SpecMismatch)
from ffproj.families import SubspaceFamily, coordinate_family
from ffproj.gen import Rng, extremal_pair, random_family, random_pointset
from ffproj.grassmann import enumerate_subspaces, sample_uniform
from ffproj.project import PointSet, projection_size
from ffproj.subspace import (coordinate_subspace, full, is_transverse,
                             zero)
from ffproj.verify import (bound_report, chen_verify, divisor_scan, improvement_hypotheses,
                           intersection_bound_check, lemma37_check, line_proof_check,
                           sequence_reduce, sum_bound_check, validate_path)
from conftest import setups
from oracles import closure, divisor_free


def plane(p):
    return PointSet(p, 2, itertools.product(range(p), repeat=2))


# --- exact rational powers -------------------------------------------------

def test_powers_le():
    assert powers_le([(8, Fraction(1, 3))], [(2, 1)])
    assert not powers_le([(9, Fraction(1, 2))], [(2, 1)])
    assert powers_le([(2, -1)], [(1, 1)])
    assert powers_le([], [])
    assert eps0(2) == Fraction(1, 8) and eps0(3) == Fraction(1, 144)


@given(st.integers(1, 50), st.integers(1, 50), st.fractions(-3, 3, max_denominator=6),
       st.fractions(-3, 3, max_denominator=6))
def test_powers_le_matches_logs(a, b, x, y):
    la, lb = float(x) * math.log(a), float(y) * math.log(b)
    if abs(la - lb) > 1e-9:
        assert powers_le([(a, x)], [(b, y)]) == (la <= lb)


# --- exceptional-set estimates --------------------------------------------

def test_chen_full_space_passes():
    for p, n in [(2, 3), (3, 2), (3, 3), (5, 2)]:
        K = PointSet(p, n, itertools.product(range(p), repeat=n))
        for m in range(1, n):
            for s in (1, 2, 3):
                assert chen_verify(K, m, s).passed in (True, None)
            assert chen_verify(K, m, 3).rows[0].get("count", 0) == 0


def test_chen_grid_3x3():
    G = plane(3)
    # s = 2: statement 2 applies (s > m); statement 3 needs s > 2m = 2 and is skipped
    r2 = chen_verify(G, 1, 2)
    assert r2.passed and r2.rows[0]["count"] == 0
    r3 = chen_verify(G, 1, 3)
    assert r3.passed is None and r3.rows[0]["hypothesis"] is False


def test_chen_statement1_random_p5():
    rng = Rng(55)
    for t in range(50):
        K = random_pointset(3, 5, rng.randint(1, 5), rng)
        assert chen_verify(K, 1, 1).passed


def concentrated(p, n, m, cosets, per, rng):
    """Points on ``cosets`` random translates of a random (n - m)-dim W, ``per`` on each."""
    W = sample_uniform(n, n - m, p, rng)
    elems = W.elements()
    pts = set()
    for _ in range(cosets):
        x = tuple(rng.randbelow(p) for _ in range(n))
        for w in rng.sample(elems, per):
            pts.add(tuple((a + b) % p for a, b in zip(x, w)))
    return PointSet(p, n, pts)


@pytest.mark.parametrize("p,n,m", [(11, 2, 1), (13, 2, 1), (11, 3, 1), (11, 3, 2)])
def test_chen_statement1_nonvacuous(p, n, m):
    # a breakpoint needs a size j with 10 j <= |K| <= p^m, i.e. K packed into few cosets
    rng = Rng(p * 100 + n * 10 + m)
    checked = 0
    for _ in range(20):
        cosets = rng.randint(1, 2) if m == 2 else 1
        K = concentrated(p, n, m, cosets, rng.randint(10, p), rng)
        if len(K) > p ** m:
            continue
        rep = chen_verify(K, m, 1)
        assert rep.passed
        checked += sum(1 for r in rep.rows if "threshold" in r)
    assert checked >= 10


def test_chen_statement1_breakpoint_values():
    # ten collinear points in F_11^2: the W along the line gives 1 coset
    K = PointSet(11, 2, [(x, 0) for x in range(10)])
    rep = chen_verify(K, 1, 1)
    (row,) = rep.rows
    assert row["threshold"] == 1 and row["count"] == 1 and row["bound"] == 5
    assert rep.passed


def test_chen_statement3_counts():
    K = PointSet(3, 3, list(coordinate_subspace([0, 1], 3, 3).elements()) + [(0, 0, 1)])
    rep = chen_verify(K, 1, 3)
    (row,) = rep.rows
    brute = sum(1 for W in enumerate_subspaces(3, 2, 3) if projection_size(K, W) != 3)
    assert row["count"] == brute
    assert rep.passed


def test_chen_errors():
    with pytest.raises(RangeError):
        chen_verify(plane(3), 1, 4)
    with pytest.raises(EmptySet):
        chen_verify(PointSet(3, 2), 1, 1)


# --- bound reports ---------------------------------------------------------

def test_bound_report_extremal_pair():
    for p in (2, 3, 5, 7):
        for d in (1, 2):
            n = d + 1
            K, E = extremal_pair(d, n, p)
            spec = BoundSpec("improvement", m=n - 1, d=d, eps=Fraction(1, 10), delta=Fraction(1, 2))
            (row,) = bound_report(K, E, spec).rows
            assert row["max_projection"] == p ** d
            assert row["ratio"] == pytest.approx(len(K) ** (d / (d + 1)) / row["bound"])


def test_bound_report_single_point():
    K = PointSet(5, 2, [(1, 1)])
    E = coordinate_family(2, 1, 5)
    (row,) = bound_report(K, E, BoundSpec("bourgain", m=1, eps=Fraction(1, 16))).rows
    assert row["max_projection"] == 1
    assert row["ratio"] == pytest.approx(1 / 2 ** (1 / 16))


def test_bound_report_planar_records_ratio():
    K = random_pointset(2, 11, 30, Rng(1))
    E = random_family(2, 1, 11, 10, Rng(2))
    rep = bound_report(K, E, BoundSpec("planar", delta=Fraction(1, 10)))
    (row,) = rep.rows
    # every projection of a planar set has at most p = 11 cosets
    assert row["max_projection"] <= 11
    assert row["ratio"] == pytest.approx(row["max_projection"] / math.sqrt(300))
    assert not row["hypotheses"]["set_upper"] and row["grosu_regime"] is False
    assert rep.passed is None


def test_bound_hypothesis_flags():
    K = PointSet(7, 2, [(0, 0), (1, 2), (3, 3)])
    E = coordinate_family(2, 1, 7)
    _, flags = evaluate(BoundSpec("line"), len(K), E)
    assert flags == {"no_common_line": True, "size_condition": True}
    _, flags = evaluate(BoundSpec("lpv"), len(K), E)
    assert flags["range"]
    with pytest.raises(SpecMismatch):
        BoundSpec("bourgain", m=1)
    with pytest.raises(SpecMismatch):
        evaluate(BoundSpec("bourgain", m=1, eps=Fraction(1, 8)), 3, E)
    with pytest.raises(SpecMismatch):
        BoundSpec("nope")
    with pytest.raises(SpecMismatch):
        bound_report(K, [E, E], BoundSpec("line"))


def test_chen_induced_bound_value():
    E = coordinate_family(3, 2, 3)
    b, flags = evaluate(BoundSpec("chen-induced"), 5, E)
    assert b == pytest.approx(3 / 3) and flags == {}


def test_divisor_scan_subspace_K():
    K = PointSet(3, 4, coordinate_subspace([0, 1], 3, 4).elements())
    E = {m: random_family(4, 4 - m, 3, 6, Rng(m)) for m in (1, 2, 3)}
    rep = divisor_scan(K, E, Fraction(1, 1000))
    assert 2 in rep.params["consistent_divisors"]
    assert [r["d"] for r in rep.rows if r["kind"] == "divisor"] == [2, 4]


def test_divisor_scan_prime_n_covers_all_m():
    K = random_pointset(3, 3, 12, Rng(8))
    E = {m: random_family(3, 3 - m, 3, 5, Rng(m)) for m in (1, 2)}
    rep = divisor_scan(K, E, Fraction(1, 300))
    (drow,) = [r for r in rep.rows if r["kind"] == "divisor"]
    assert drow["d"] == 3 and drow["tested_m"] == [1, 2]


# --- sequences -------------------------------------------------------------

def test_sequence_examples():
    out = sequence_reduce(6, {2, 3})
    assert out["reachable"] and validate_path(6, {2, 3}, out["path"])
    assert out["path"][-1]["value"] == 1
    out = sequence_reduce(4, {2})
    assert not out["reachable"] and out["divisor"] == 2 and out["closure"] == [2]
    out = sequence_reduce(5, {2})
    assert out["reachable"] and out["closure"] == [1, 2, 3, 4]
    with pytest.raises(RangeError):
        sequence_reduce(4, {4})


def test_validate_path_rejects_bad_steps():
    assert validate_path(6, {2, 3}, [{"value": 2}, {"value": 3}, {"value": 5}, {"value": 4}, {"value": 1}])
    assert not validate_path(6, {2, 3}, [{"value": 2}, {"value": 1}])
    assert not validate_path(6, {2, 3}, [{"value": 2}, {"value": 3}])


@pytest.mark.parametrize("n", range(2, 10))
def test_sequence_matches_oracles(n):
    for k in range(n):
        for S in itertools.combinations(range(1, n), k):
            out = sequence_reduce(n, S)
            assert set(out["closure"]) == closure(n, S)
            assert out["reachable"] == divisor_free(n, S) == (math.gcd(n, *S) == 1)


# --- elementary inequalities ----------------------------------------------

def test_intersection_examples():
    K = PointSet(5, 3, [(0, 0, 0), (1, 2, 3), (4, 4, 1)])
    W = coordinate_subspace([0], 5, 3)
    (row,) = intersection_bound_check(K, W, W).rows
    assert row["M_cap"] == row["M1"] and row["pass"]
    diag = PointSet(3, 2, [(0, 0), (1, 1), (2, 2)])
    (row,) = intersection_bound_check(diag, coordinate_subspace([0], 3, 2), coordinate_subspace([1], 3, 2)).rows
    assert (row["M_cap"], row["M1"], row["M2"]) == (3, 3, 3)


@given(setups(primes=(2, 3, 5, 7), n_subspaces=2))
def test_intersection_never_fails(case):
    K, (W1, W2) = case
    assert intersection_bound_check(K, W1, W2).passed in (True, None)


def test_lemma37_equality_cases():
    for p in (2, 3, 5):
        rep = lemma37_check(plane(p), coordinate_subspace([0], p, 2), coordinate_subspace([1], p, 2))
        (row,) = rep.rows
        assert row["lhs"] == row["rhs"] == p ** 6 and row["equality"]
    K = PointSet(3, 2, [(0, 0), (1, 0)])
    (row,) = lemma37_check(K, coordinate_subspace([0], 3, 2), coordinate_subspace([1], 3, 2)).rows
    assert (row["lhs"], row["M1"], row["M2"], row["sum_sq"]) == (8, 1, 2, 4) and row["equality"]
    with pytest.raises(NotTransverse):
        lemma37_check(K, full(3, 2), coordinate_subspace([1], 3, 2))


@given(setups(primes=(2, 3, 5, 7), n_subspaces=2))
def test_lemma37_never_fails(case):
    K, (W1, W2) = case
    if is_transverse(W1, W2):
        assert lemma37_check(K, W1, W2).passed in (True, None)


def test_sum_bound_examples():
    W1, W2 = coordinate_subspace([0], 3, 3), coordinate_subspace([1], 3, 3)
    U = W1 + W2
    (row,) = sum_bound_check(PointSet(3, 3, U.elements()), W1, W2).rows
    assert row["refined"] == 9 and row["M_sum"] == 1 and row["pass"]
    (row,) = sum_bound_check(PointSet(3, 3, [(1, 1, 1)]), W1, W2).rows
    assert row["refined"] == row["M1"] == row["M2"] == row["M_sum"] == 1 and row["pass"]
    with pytest.raises(EmptySet):
        sum_bound_check(PointSet(3, 3), W1, W2)
    with pytest.raises(AmbientMismatch):
        sum_bound_check(PointSet(3, 2, [(0, 0)]), W1, W2)


@given(setups(primes=(2, 3, 5), n_subspaces=2, min_points=1))
def test_sum_bound_never_fails(case):
    K, (W1, W2) = case
    if is_transverse(W1, W2):
        assert sum_bound_check(K, W1, W2).passed


# --- slicing machinery -----------------------------------------------------

@pytest.mark.parametrize("seed", range(8))
def test_line_proof_checks_pass(seed):
    rng = Rng(seed)
    K = random_pointset(3, 5, rng.randint(5, 40), rng)
    E = random_family(3, 2, 5, rng.randint(3, 10), rng)
    rep = line_proof_check(K, E)
    if rep.rows[0].get("skipped"):
        return
    assert rep.passed
    summary = [r for r in rep.rows if r["kind"] == "summary"][0]
    assert summary["product_ok"] and summary["E_prime"] >= 1


def test_line_proof_skips_common_line():
    H = [h for h in enumerate_subspaces(3, 2, 3) if (1, 0, 0) in h]
    rep = line_proof_check(random_pointset(3, 3, 8, Rng(0)), SubspaceFamily(3, 3, 2, H))
    assert rep.rows[0]["skipped"] and rep.passed is None


# --- covering hypotheses ---------------------------------------------------

def test_improvement_hypotheses_examples():
    with_zero = [SubspaceFamily(3, 3, 0, [zero(3, 3)]), coordinate_family(3, 1, 3)]
    rows = improvement_hypotheses(with_zero, 5, 2).rows
    assert all(r["holds"] and r["path"] == "zero-member" for r in rows)
    rows = improvement_hypotheses([coordinate_family(3, 1, 3)], 1, 1).rows
    assert [r["holds"] for r in rows] == [True, True]
    assert rows[0]["path"] == "enumeration"
    rows = improvement_hypotheses([SubspaceFamily(3, 3, 1, [])], 1, 1).rows
    assert [r["holds"] for r in rows] == [False, False]
    assert rows[1]["witness"] is not None


def test_improvement_lines_hypothesis_fails_when_k_large():
    # three coordinate lines: S = those three lines blocks every member
    rows = improvement_hypotheses([coordinate_family(3, 1, 3)], 3, 1).rows
    assert rows[0]["holds"] is False
    assert set(rows[0]["witness"]) == set(coordinate_family(3, 1, 3))


def test_improvement_union_bound_path():
    E = random_family(3, 1, 5, 25, Rng(3))
    rows = improvement_hypotheses([E], 2, 1, budget=100).rows
    assert rows[0]["path"] == "union-bound" and rows[0]["holds"] is True
