import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ffproj import fflinalg as fl
from ffproj.errors import (AmbientMismatch, BudgetExceeded, CommonLine, EmptySet,
                           NotABasis, NotHyperplanes, RangeError)
from ffproj.gen import Rng, product_set, random_pointset
from ffproj.grassmann import count, enumerate_subspaces, sample_uniform
from ffproj.project import (PointSet, bounding_product, coset_rep, dyadic_refine,
                            exceptional_set, fiber_sizes, mass_floor, nice_basis,
                            project, projection_profile, projection_size,
                            slice_decompose, to_frame)
from ffproj.subspace import (coordinate_subspace, from_vectors, full, intersect,
                             is_subspace_of, zero)
from conftest import setups
from oracles import coset_classes


def test_coset_rep_examples():
    x = (2, 1, 0)
    assert coset_rep(x, zero(3, 3)) == x
    assert coset_rep(x, full(3, 3)) == (0, 0, 0)
    assert coset_rep((2, 1), from_vectors([(1, 0)], 3, 2)) == (0, 1)
    with pytest.raises(AmbientMismatch):
        coset_rep((1, 2, 0), from_vectors([(1, 0)], 3, 2))


def test_project_examples():
    Fp = PointSet(3, 3, itertools.product(range(3), repeat=3))
    for m in range(4):
        for W in enumerate_subspaces(3, m, 3):
            assert projection_size(Fp, W) == 3 ** (3 - m)
    U = coordinate_subspace([0, 1], 3, 3)
    K = PointSet(3, 3, U.elements())
    assert projection_size(K, coordinate_subspace([0], 3, 3)) == 3
    diag = PointSet(3, 2, [(0, 0), (1, 1), (2, 2)])
    img = project(diag, from_vectors([(1, 1)], 3, 2))
    assert img.size == 1 and len(img.translate_cover()) == 1


@given(setups(primes=(2, 3, 5, 7)))
def test_projection_image_invariants(case):
    K, (W,) = case
    img = project(K, W)
    assert img.size == projection_size(K, W) == len(img.representatives)
    assert sum(len(f) for f in img.fibers.values()) == len(K)
    for r, fib in img.fibers.items():
        assert all(r[c] == 0 for c in W.pivots)
        assert all(coset_rep(x, W) == r for x in fib)
    if len(K):
        assert 1 <= img.size <= min(len(K), K.p ** (K.n - W.dim))
    # the translate cover covers K
    for x in K:
        assert any(coset_rep(x, U) == coset_rep(r, U) for r, U in img.translate_cover())


@given(setups(primes=(2, 3, 5, 7)))
def test_projection_matches_union_find(case):
    K, (W,) = case
    assert projection_size(K, W) == coset_classes(K.points, set(W.elements()), K.p)


@given(setups(primes=(2, 3, 5), n_subspaces=2), st.data())
def test_monotone_and_nesting(case, data):
    K, (W1, W2) = case
    sub = PointSet(K.p, K.n, data.draw(st.lists(st.sampled_from(K.points))) if len(K) else [])
    assert projection_size(sub, W1) <= projection_size(K, W1)
    big = W1 + W2
    assert is_subspace_of(W1, big)
    assert projection_size(K, big) <= projection_size(K, W1)
    assert projection_size(K, intersect(W1, W2)) <= projection_size(K, W1) * projection_size(K, W2)


def test_exceptional_examples():
    F = PointSet(5, 2, itertools.product(range(5), repeat=2))
    assert exceptional_set(F, 1, 4) == []
    one = PointSet(3, 3, [(1, 2, 0)])
    for m in (1, 2):
        assert len(exceptional_set(one, m, 1)) == count(3, 3 - m, 3)
    plane = PointSet(3, 3, coordinate_subspace([0, 1], 3, 3).elements())
    # quotients by planes of F_3^3 have 3 cosets, so threshold 3 keeps all 13
    assert len(exceptional_set(plane, 1, 3)) == 13
    sizes = {W: s for W, s in projection_profile(plane, 1)}
    assert sorted(sizes.values()) == [1] + [3] * 12
    assert exceptional_set(plane, 1, mode="not-full") == [coordinate_subspace([0, 1], 3, 3)]
    with pytest.raises(RangeError):
        exceptional_set(plane, 1, 0)
    with pytest.raises(RangeError):
        exceptional_set(plane, 3, 1)
    with pytest.raises(BudgetExceeded):
        exceptional_set(plane, 1, 1, budget=12)


def test_nice_basis_examples():
    Ws = [coordinate_subspace([j for j in range(3) if j != i], 5, 3) for i in range(3)]
    assert nice_basis(Ws) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    W = from_vectors([(1, 1)], 3, 2)
    with pytest.raises(CommonLine) as exc:
        nice_basis([W, W])
    assert exc.value.witness == W
    with pytest.raises(NotHyperplanes):
        nice_basis([coordinate_subspace([0], 5, 3)] * 3)


def test_nice_basis_random_triples():
    rng = Rng(11)
    done = 0
    while done < 40:
        Ws = [sample_uniform(3, 2, 5, rng) for _ in range(3)]
        if intersect(intersect(Ws[0], Ws[1]), Ws[2]).dim:
            continue
        vs = nice_basis(Ws)
        assert fl.rank(vs, 5, 3) == 3
        for i, j in itertools.product(range(3), repeat=2):
            assert (vs[i] in Ws[j]) == (i != j)
        done += 1


def test_dyadic_examples():
    W = from_vectors([(0, 1)], 5, 2)
    # column x has fiber size: x=0 -> 1, x=1 -> 1, x=2 -> 2, x=3 -> 4
    K = PointSet(5, 2, [(0, 0), (1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2), (3, 3)])
    assert sorted(fiber_sizes(K, W)) == [1, 1, 2, 4]
    Kp, level = dyadic_refine(K, W)
    assert level == 2 and Kp == PointSet(5, 2, [(3, 0), (3, 1), (3, 2), (3, 3)])
    assert len(Kp) * mass_floor(len(K)) >= len(K)
    even = PointSet(5, 2, [(0, 0), (0, 1), (1, 0), (1, 4)])
    assert dyadic_refine(even, W) == (even, 1)
    pt = PointSet(5, 2, [(2, 2)])
    assert dyadic_refine(pt, W) == (pt, 0)
    with pytest.raises(EmptySet):
        dyadic_refine(PointSet(5, 2), W)


def test_dyadic_tie_goes_to_lower_level():
    W = from_vectors([(0, 1)], 5, 2)
    K = PointSet(5, 2, [(0, 0), (1, 0), (2, 0), (2, 1)])  # masses 2 and 2
    assert dyadic_refine(K, W)[1] == 0


@given(setups(primes=(2, 3, 5), min_points=1))
def test_dyadic_guarantees(case):
    K, (W,) = case
    Kp, level = dyadic_refine(K, W)
    assert Kp <= K
    assert len(Kp) * mass_floor(len(K)) >= len(K)
    sizes = fiber_sizes(Kp, W)
    assert max(sizes) < 2 * min(sizes)
    assert all(2 ** level <= s < 2 ** (level + 1) for s in sizes)


def test_slice_examples():
    K = PointSet(3, 3, [(0, 0, 0), (0, 1, 2), (1, 0, 0)])
    sl = slice_decompose(K, coordinate_subspace([1, 2], 3, 3))
    assert sorted(map(lambda s: s.points, sl.values())) == [((0, 0, 0), (0, 1, 2)), ((1, 0, 0),)]
    assert list(slice_decompose(K, full(3, 3)).values()) == [K]
    assert len(slice_decompose(K, zero(3, 3))) == 3


def test_bounding_product_examples():
    std = [(1, 0), (0, 1)]
    assert bounding_product(PointSet(3, 2, [(0, 0), (1, 2)]), std) == [{0, 1}, {0, 2}]
    As = [{0, 1}, {2}, {1, 3, 4}]
    assert bounding_product(product_set(As, 5), [(1, 0, 0), (0, 1, 0), (0, 0, 1)]) == As
    K = random_pointset(3, 5, 10, Rng(3))
    got = bounding_product(K, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert got == [{x[i] for x in K} for i in range(3)]
    with pytest.raises(NotABasis):
        bounding_product(K, [(1, 0, 0), (2, 0, 0), (0, 0, 1)])


def test_bounding_product_sizes_match_projections():
    rng = Rng(5)
    for _ in range(30):
        Ws = [sample_uniform(3, 2, 5, rng) for _ in range(3)]
        if intersect(intersect(Ws[0], Ws[1]), Ws[2]).dim:
            continue
        frame = nice_basis(Ws)
        K = random_pointset(3, 5, 12, rng)
        As = bounding_product(K, frame)
        # W_i here is the span of the frame without v_i, which is Ws[i]
        for i in range(3):
            assert len(As[i]) == projection_size(K, Ws[i])
        Kc = to_frame(K, frame)
        assert all(c[i] in As[i] for c in Kc for i in range(3))


def test_pointset_dedup_and_ambient():
    K = PointSet(3, 2, [(1, 1), (1, 1), (0, 2)])
    assert len(K) == 2 and K.points == ((0, 2), (1, 1))
    with pytest.raises(AmbientMismatch):
        PointSet(3, 2, [(3, 0)])
    with pytest.raises(AmbientMismatch):
        projection_size(K, zero(3, 3))
