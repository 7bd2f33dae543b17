import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ffproj import fflinalg as fl
from ffproj.errors import NotABasis, RangeError, ZeroInverse
from oracles import span_set


def test_inverse_examples():
    assert fl.mod_inv(1, 7) == 1
    assert fl.mod_inv(2, 5) == 3
    with pytest.raises(ZeroInverse):
        fl.mod_inv(0, 7)


def test_check_prime():
    assert fl.check_prime(2) == 2
    for bad in (0, 1, 4, 9, 1 << 15, 32771 * 0 + 65537):
        with pytest.raises(RangeError):
            fl.check_prime(bad)


@given(st.sampled_from([2, 3, 5, 7, 13, 101, 32749]), st.integers(1, 10**6))
def test_inverse_involution(p, a):
    a %= p
    if a == 0:
        return
    inv = fl.mod_inv(a, p)
    assert a * inv % p == 1
    assert fl.mod_inv(inv, p) == a


def test_rref_examples():
    I3 = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert fl.rref(I3, 5) == (tuple(I3), (0, 1, 2), 3)
    R, piv, r = fl.rref([(0, 0), (0, 0)], 3)
    assert (tuple(R), piv, r) == ((), (), 0)
    R, piv, r = fl.rref([(1, 1), (1, 2)], 3)
    assert tuple(R) == ((1, 0), (0, 1)) and r == 2
    # the oracle: the input rows already span all 9 vectors
    assert len(span_set([(1, 1), (1, 2)], 3, 2)) == 9


def test_kernel_examples():
    assert len(fl.kernel([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 5, 3)) == 0
    assert sorted(fl.kernel([(0, 0)], 3, 2)) == [(0, 1), (1, 0)]
    assert tuple(fl.kernel([(1, 1)], 3, 2)) == ((1, 2),)
    # oracle: exhaust the 9 vectors with x + y = 0
    assert {v for v in itertools.product(range(3), repeat=2) if sum(v) % 3 == 0} == span_set([(1, 2)], 3, 2)


matrices = st.sampled_from([2, 3, 5, 7]).flatmap(
    lambda p: st.tuples(st.just(p), st.integers(1, 4)).flatmap(
        lambda pn: st.tuples(st.just(pn[0]), st.just(pn[1]),
                             st.lists(st.tuples(*[st.integers(0, pn[0] - 1)] * pn[1]), max_size=5))))


@given(matrices)
def test_rref_properties(pnM):
    p, n, M = pnM
    R, piv, r = fl.rref(M, p, n)
    assert r == len(piv) == len(R)
    assert list(piv) == sorted(set(piv))
    assert tuple(fl.rref(R, p, n)[0]) == tuple(R)
    for i, c in enumerate(piv):
        assert R[i][c] == 1
        assert all(R[k][c] == 0 for k in range(r) if k != i)
    if n <= 3 and p <= 5:
        assert span_set(R, p, n) == span_set(M, p, n)


@given(matrices)
def test_kernel_properties(pnM):
    p, n, M = pnM
    Kr = fl.kernel(M, p, n)
    assert fl.rank(M, p, n) + len(Kr) == n
    for v in Kr:
        assert all(x == 0 for x in fl.mat_vec(M, v, p))
    assert tuple(fl.rref(Kr, p, n)[0]) == tuple(Kr)


def test_rref_canonical_exhaustive():
    # every 2x2 and 3x2 matrix over F_3: equal spans give identical RREF
    p, n = 3, 2
    rows = list(itertools.product(range(p), repeat=n))
    by_span = {}
    for k in (1, 2):
        for M in itertools.product(rows, repeat=k):
            key = span_set(M, p, n)
            R = tuple(fl.rref(M, p, n)[0])
            assert by_span.setdefault(key, R) == R
    assert len(by_span) == 1 + 4 + 1


def test_rref_canonical_3d():
    p, n = 2, 3
    rows = list(itertools.product(range(p), repeat=n))
    by_span = {}
    for M in itertools.product(rows, repeat=3):
        key = span_set(M, p, n)
        R = tuple(fl.rref(M, p, n)[0])
        assert by_span.setdefault(key, R) == R
    assert len(by_span) == 1 + 7 + 7 + 1


@given(st.sampled_from([2, 3, 5]), st.integers(1, 3), st.data())
def test_inverse_matrix(p, n, data):
    M = [data.draw(st.tuples(*[st.integers(0, p - 1)] * n)) for _ in range(n)]
    if fl.rank(M, p, n) < n:
        with pytest.raises(NotABasis):
            fl.inverse(M, p)
        return
    inv = fl.inverse(M, p)
    for i in range(n):
        e = tuple(int(i == j) for j in range(n))
        assert fl.vec_mat(fl.vec_mat(e, M, p), inv, p) == e
