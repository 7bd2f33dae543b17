"""Counting, enumerating and sampling Gr(n, m) over F_p."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator

from . import fflinalg as fl
from .errors import RangeError
from .subspace import Subspace, is_transverse, zero

ENUM_LIMIT = 10**6


def _check_range(n: int, m: int) -> None:
    if not 0 <= m <= n:
        raise RangeError(f"need 0 <= m <= n, got n={n}, m={m}")


def count(n: int, m: int, p: int) -> int:
    """Gaussian binomial ``[n choose m]_p``."""
    _check_range(n, m)
    fl.check_prime(p)
    num = den = 1
    for i in range(m):
        num *= p ** (n - i) - 1
        den *= p ** (m - i) - 1
    return num // den


def free_positions(pivots: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    """(row, col) entries of an RREF matrix with these pivots that may be arbitrary."""
    pset = set(pivots)
    return [(i, j) for i, pc in enumerate(pivots)
            for j in range(pc + 1, n) if j not in pset]


def enumerate_subspaces(n: int, m: int, p: int) -> Iterator[Subspace]:
    """Stream every element of Gr(n, m) exactly once.

    Pivot patterns come in lexicographic order; within a pattern the free
    entries run as an odometer (last position fastest).
    """
    return iter(GrassmannCursor(n, m, p))


class GrassmannCursor:
    """Resumable single-consumer cursor over Gr(n, m).

    ``split(k)`` partitions the pivot patterns into ``k`` disjoint cursors
    for parallel scans.
    """

    def __init__(self, n: int, m: int, p: int, patterns=None):
        _check_range(n, m)
        self.n, self.m, self.p = n, m, fl.check_prime(p)
        self.patterns = list(patterns if patterns is not None
                             else itertools.combinations(range(n), m))

    def __iter__(self) -> Iterator[Subspace]:
        n, p = self.n, self.p
        for pivots in self.patterns:
            free = free_positions(pivots, n)
            for values in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * n for _ in range(self.m)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = 1
                for (i, j), val in zip(free, values):
                    rows[i][j] = val
                yield Subspace(p, n, tuple(tuple(r) for r in rows), pivots)

    def split(self, k: int) -> list[GrassmannCursor]:
        return [GrassmannCursor(self.n, self.m, self.p, self.patterns[i::k]) for i in range(k)]


def sample_uniform(n: int, m: int, p: int, rng) -> Subspace:
    """Uniform element of Gr(n, m): reject random m x n matrices until full rank."""
    _check_range(n, m)
    if m == 0:
        return zero(p, n)
    while True:
        rows = [[rng.randbelow(p) for _ in range(n)] for _ in range(m)]
        R, pivots, rk = fl.rref(rows, p, n)
        if rk == m:
            return Subspace(p, n, R, pivots)


def transverse_count(n: int, m: int, mp: int, p: int) -> int:
    """Number of W in Gr(n, m) with W & V = 0 for a fixed V of dimension mp."""
    if m + mp > n:
        return 0
    return p ** (m * mp) * count(n - mp, m, p)


def intersecting_bound(n: int, m: int, mp: int, p: int) -> Fraction:
    """``p**(mp - 1 + (m - 1)(n - m))``; exponent may be negative for m = 0."""
    return Fraction(p) ** (mp - 1 + (m - 1) * (n - m))


def count_intersecting(V: Subspace, m: int, *, method: str = "auto") -> tuple[int, Fraction]:
    """Exact ``|{W in Gr(n, m) : W & V != 0}|`` and the subspace-counting bound.

    ``method`` is ``"enumerate"``, ``"identity"`` or ``"auto"`` (enumerate when
    Gr(n, m) has at most ENUM_LIMIT elements).
    """
    n, p, mp = V.n, V.p, V.dim
    if m < 0 or m + mp > n:
        raise RangeError(f"need m + dim V <= n, got m={m}, dim V={mp}, n={n}")
    if method == "auto":
        method = "enumerate" if count(n, m, p) <= ENUM_LIMIT else "identity"
    if method == "enumerate":
        exact = sum(1 for W in enumerate_subspaces(n, m, p) if not is_transverse(W, V))
    elif method == "identity":
        exact = count(n, m, p) - transverse_count(n, m, mp, p)
    else:
        raise ValueError(f"unknown method {method!r}")
    return exact, intersecting_bound(n, m, mp, p)
