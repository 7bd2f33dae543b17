"""Exact arithmetic in F_p and dense row reduction.

Scalars are plain ``int`` residues in ``[0, p)`` and vectors are tuples of
them. Matrices are sequences of row tuples; since an empty matrix has no rows
to infer the width from, routines take ``ncols`` explicitly where it matters.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .errors import AmbientMismatch, NotABasis, RangeError, ZeroInverse

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]

MAX_PRIME = 1 << 15


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool):
        raise RangeError(f"modulus must be an int, got {p!r}")
    if not is_prime(p):
        raise RangeError(f"{p} is not prime")
    if p >= MAX_PRIME:
        raise RangeError(f"p = {p} exceeds the supported bound {MAX_PRIME}")
    return p


def mod_inv(a: int, p: int) -> int:
    """Inverse of ``a`` modulo ``p`` by the extended Euclidean algorithm."""
    a %= p
    if a == 0:
        raise ZeroInverse(f"0 has no inverse mod {p}")
    r0, r1 = p, a
    s0, s1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    return s0 % p


def as_vector(v: Sequence[int], p: int, n: int | None = None) -> Vector:
    vec = tuple(int(x) % p for x in v)
    if n is not None and len(vec) != n:
        raise AmbientMismatch(f"vector of length {len(vec)} in F_{p}^{n}")
    return vec


def rref(rows: Sequence[Sequence[int]], p: int, ncols: int | None = None
         ) -> tuple[Matrix, tuple[int, ...], int]:
    """Reduced row echelon form over F_p.

    Returns ``(R, pivots, rank)`` where ``R`` holds only the nonzero rows.
    """
    if ncols is None:
        if not rows:
            return (), (), 0
        ncols = len(rows[0])
    work = []
    for r in rows:
        if len(r) != ncols:
            raise AmbientMismatch(f"row of length {len(r)} in a {ncols}-column matrix")
        work.append([x % p for x in r])

    pivots = []
    top = 0
    for col in range(ncols):
        if top == len(work):
            break
        sel = next((i for i in range(top, len(work)) if work[i][col]), None)
        if sel is None:
            continue
        work[top], work[sel] = work[sel], work[top]
        prow = work[top]
        inv = mod_inv(prow[col], p)
        if inv != 1:
            prow[:] = [(x * inv) % p for x in prow]
        for i, row in enumerate(work):
            if i != top and row[col]:
                f = row[col]
                work[i] = [(x - f * y) % p for x, y in zip(row, prow)]
        pivots.append(col)
        top += 1
    return tuple(tuple(r) for r in work[:top]), tuple(pivots), top


def rank(rows: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> int:
    return rref(rows, p, ncols)[2]


def kernel(rows: Sequence[Sequence[int]], p: int, ncols: int) -> Matrix:
    """Right kernel ``{v : M v = 0}`` as an RREF basis."""
    R, pivots, _ = rref(rows, p, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return rref(basis, p, ncols)[0]


def mat_vec(rows: Sequence[Sequence[int]], v: Sequence[int], p: int) -> Vector:
    return tuple(sum(a * b for a, b in zip(r, v)) % p for r in rows)


def vec_mat(v: Sequence[int], rows: Sequence[Sequence[int]], p: int) -> Vector:
    """Row vector times matrix: ``sum_i v[i] * rows[i]``."""
    if not rows:
        return ()
    out = [0] * len(rows[0])
    for c, r in zip(v, rows):
        if c:
            for j, x in enumerate(r):
                out[j] += c * x
    return tuple(x % p for x in out)


def inverse(rows: Sequence[Sequence[int]], p: int) -> Matrix:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotABasis("matrix is not square")
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    R, pivots, rk = rref(aug, p, 2 * n)
    if rk < n or pivots[n - 1] != n - 1:
        raise NotABasis("matrix is singular")
    return tuple(tuple(r[n:]) for r in R)
