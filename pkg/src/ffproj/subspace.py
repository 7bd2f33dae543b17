"""Linear subspaces of F_p^n in canonical RREF form.

Two subspaces are equal exactly when their stored bases are equal, so
``Subspace`` values can be hashed, deduplicated and used as dict keys.
Intersection goes through orthogonal complements,
``W1 & W2 = perp(perp(W1) + perp(W2))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import fflinalg as fl
from .errors import AmbientMismatch, ParseError


@dataclass(frozen=True)
class Subspace:
    p: int
    n: int
    basis: fl.Matrix
    pivots: tuple[int, ...]

    def __post_init__(self):
        fl.check_prime(self.p)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient(self) -> tuple[int, int]:
        return (self.p, self.n)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __add__(self, other: Subspace) -> Subspace:
        return subspace_sum(self, other)

    def __and__(self, other: Subspace) -> Subspace:
        return intersect(self, other)

    def perp(self) -> Subspace:
        return perp(self)

    def elements(self) -> list[fl.Vector]:
        """All ``p**dim`` vectors of the subspace (small cases only)."""
        out = [tuple([0] * self.n)]
        for b in self.basis:
            out = [tuple((x + c * y) % self.p for x, y in zip(v, b))
                   for v in out for c in range(self.p)]
        return out

    def literal(self) -> str:
        return format_literal(self.basis)

    def __repr__(self) -> str:
        return f"Subspace(p={self.p}, n={self.n}, [{self.literal()}])"


def _check_same(a: Subspace, b: Subspace) -> None:
    if a.ambient != b.ambient:
        raise AmbientMismatch(f"F_{a.p}^{a.n} vs F_{b.p}^{b.n}")


def from_vectors(vs: Iterable[Sequence[int]], p: int, n: int) -> Subspace:
    rows = []
    for v in vs:
        if len(v) != n:
            raise AmbientMismatch(f"vector {tuple(v)} is not in F_{p}^{n}")
        rows.append(v)
    R, pivots, _ = fl.rref(rows, p, n)
    return Subspace(p, n, R, pivots)


def zero(p: int, n: int) -> Subspace:
    return Subspace(p, n, (), ())


def full(p: int, n: int) -> Subspace:
    return from_vectors(standard_basis(n), p, n)


def standard_basis(n: int) -> list[fl.Vector]:
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def coordinate_subspace(indices: Iterable[int], p: int, n: int) -> Subspace:
    e = standard_basis(n)
    return from_vectors([e[i] for i in indices], p, n)


def reduce(W: Subspace, v: Sequence[int]) -> fl.Vector:
    """Subtract basis multiples from ``v`` so that W's pivot coordinates vanish."""
    p = W.p
    x = [c % p for c in v]
    for row, pc in zip(W.basis, W.pivots):
        c = x[pc]
        if c:
            for j in range(pc, W.n):
                if row[j]:
                    x[j] = (x[j] - c * row[j]) % p
    return tuple(x)


def contains(W: Subspace, v: Sequence[int]) -> bool:
    if len(v) != W.n:
        raise AmbientMismatch(f"vector of length {len(v)} vs F_{W.p}^{W.n}")
    return not any(reduce(W, v))


def subspace_sum(W1: Subspace, W2: Subspace) -> Subspace:
    _check_same(W1, W2)
    if W2.dim == 0:
        return W1
    if W1.dim == 0:
        return W2
    return from_vectors(W1.basis + W2.basis, W1.p, W1.n)


def perp(W: Subspace) -> Subspace:
    """Orthogonal complement under ``<x, y> = sum x_i y_i``."""
    K = fl.kernel(W.basis, W.p, W.n)
    return from_vectors(K, W.p, W.n)


def intersect(W1: Subspace, W2: Subspace) -> Subspace:
    _check_same(W1, W2)
    return perp(subspace_sum(perp(W1), perp(W2)))


def is_transverse(W: Subspace, V: Subspace) -> bool:
    """True iff ``W & V`` is the zero subspace."""
    _check_same(W, V)
    if W.dim + V.dim > W.n:
        return False
    if W.dim == 0 or V.dim == 0:
        return True
    # modularity: dim(W & V) = dim W + dim V - dim(W + V)
    return fl.rank(W.basis + V.basis, W.p, W.n) == W.dim + V.dim


def is_subspace_of(W: Subspace, V: Subspace) -> bool:
    _check_same(W, V)
    return all(contains(V, b) for b in W.basis)


def format_literal(rows: Iterable[Sequence[int]]) -> str:
    return "; ".join(" ".join(str(x) for x in r) for r in rows)


def parse_literal(text: str, p: int, n: int, source: str = "<literal>", line: int = 0) -> Subspace:
    """Parse ``"1 0 0; 0 1 0"`` into a canonical subspace.

    An empty or whitespace-only literal is the zero subspace.
    """
    rows = []
    col = 1
    for chunk in text.split(";"):
        stripped = chunk.strip()
        if stripped:
            try:
                row = [int(tok) for tok in stripped.split()]
            except ValueError:
                raise ParseError(f"non-integer entry in {stripped!r}", source, line, col) from None
            if len(row) != n:
                raise ParseError(f"expected {n} coordinates, got {len(row)}", source, line, col)
            if any(not 0 <= x < p for x in row):
                raise ParseError(f"coordinate outside [0, {p})", source, line, col)
            rows.append(row)
        col += len(chunk) + 1
    return from_vectors(rows, p, n)
