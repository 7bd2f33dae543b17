"""Quotient projections x -> x + W of finite point sets.

A coset ``x + W`` is named by its canonical representative: the unique
element whose coordinates at W's pivot columns are zero. Counting
``|pi^W(K)|`` is then counting distinct representatives.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import fflinalg as fl
from .errors import (AmbientMismatch, BudgetExceeded, CommonLine, EmptySet,
                     NotABasis, NotHyperplanes, RangeError)
from .grassmann import count, enumerate_subspaces
from .subspace import Subspace, from_vectors, intersect, reduce

DEFAULT_BUDGET = 10**6


class PointSet:
    """Deduplicated finite subset of F_p^n; points are kept sorted."""

    __slots__ = ("p", "n", "points", "_set")

    def __init__(self, p: int, n: int, points: Iterable[Sequence[int]] = ()):
        fl.check_prime(p)
        uniq = set()
        for x in points:
            v = tuple(x)
            if len(v) != n or any(not 0 <= c < p for c in v):
                raise AmbientMismatch(f"point {v} is not in F_{p}^{n}")
            uniq.add(v)
        self.p, self.n = p, n
        self.points = tuple(sorted(uniq))
        self._set = frozenset(uniq)

    @property
    def ambient(self) -> tuple[int, int]:
        return (self.p, self.n)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x) -> bool:
        return tuple(x) in self._set

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and self.ambient == other.ambient and self._set == other._set

    def __hash__(self) -> int:
        return hash((self.p, self.n, self._set))

    def __le__(self, other: PointSet) -> bool:
        return self.ambient == other.ambient and self._set <= other._set

    def __repr__(self) -> str:
        return f"PointSet(p={self.p}, n={self.n}, |K|={len(self)})"


def _check(K: PointSet, W: Subspace) -> None:
    if K.ambient != W.ambient:
        raise AmbientMismatch(f"points in F_{K.p}^{K.n}, subspace in F_{W.p}^{W.n}")


def coset_rep(x: Sequence[int], W: Subspace) -> tuple[int, ...]:
    if len(x) != W.n:
        raise AmbientMismatch(f"vector of length {len(x)} vs F_{W.p}^{W.n}")
    return reduce(W, x)


@dataclass(frozen=True)
class ProjectionImage:
    W: Subspace
    fibers: dict  # representative -> PointSet, in first-seen order of sorted K

    @property
    def representatives(self) -> tuple:
        return tuple(self.fibers)

    @property
    def size(self) -> int:
        return len(self.fibers)

    def __len__(self) -> int:
        return len(self.fibers)

    def translate_cover(self) -> list[tuple[tuple[int, ...], Subspace]]:
        """Cosets ``r + W`` covering K, one per nonempty fiber."""
        return [(r, self.W) for r in self.fibers]


def _group(K: PointSet, W: Subspace) -> dict:
    groups: dict = {}
    for x in K.points:
        groups.setdefault(reduce(W, x), []).append(x)
    return groups


def project(K: PointSet, W: Subspace) -> ProjectionImage:
    _check(K, W)
    fibers = {r: PointSet(K.p, K.n, pts) for r, pts in _group(K, W).items()}
    return ProjectionImage(W, fibers)


def projection_size(K: PointSet, W: Subspace) -> int:
    """``|pi^W(K)|`` without materializing fibers."""
    _check(K, W)
    if W.dim == 0:
        return len(K)
    return len({reduce(W, x) for x in K.points})


def fiber_sizes(K: PointSet, W: Subspace) -> list[int]:
    _check(K, W)
    return [len(v) for v in _group(K, W).values()]


def slice_decompose(K: PointSet, U: Subspace) -> dict:
    """Slices ``K & (x + U)`` keyed by coset representative."""
    return project(K, U).fibers


def guard_budget(n: int, m: int, p: int, budget: int | None, what: str = "Gr enumeration") -> int:
    total = count(n, m, p)
    if budget is not None and total > budget:
        raise BudgetExceeded(total, budget, what)
    return total


def projection_profile(K: PointSet, m: int, budget: int | None = DEFAULT_BUDGET
                       ) -> list[tuple[Subspace, int]]:
    """``(W, |pi^W(K)|)`` for every W in Gr(n, n - m), in enumeration order."""
    n, p = K.n, K.p
    if not 1 <= m <= n - 1:
        raise RangeError(f"need 1 <= m <= n - 1, got m={m}, n={n}")
    guard_budget(n, n - m, p, budget)
    return [(W, projection_size(K, W)) for W in enumerate_subspaces(n, n - m, p)]


def exceptional_set(K: PointSet, m: int, threshold: int | None = None, mode: str = "at-most",
                    budget: int | None = DEFAULT_BUDGET) -> list[Subspace]:
    """Members W of Gr(n, n - m) whose projection is small.

    ``mode="at-most"``: ``|pi^W(K)| <= threshold``.
    ``mode="not-full"``: ``|pi^W(K)| != p**m`` (threshold ignored).
    """
    if mode == "at-most":
        if threshold is None or threshold < 1:
            raise RangeError("at-most mode needs threshold >= 1")
        keep = lambda size: size <= threshold
    elif mode == "not-full":
        full = K.p ** m
        keep = lambda size: size != full
    else:
        raise RangeError(f"unknown mode {mode!r}")
    return [W for W, size in projection_profile(K, m, budget) if keep(size)]


def nice_basis(Ws: Sequence[Subspace]) -> list[tuple[int, ...]]:
    """Basis v_1..v_n with ``v_i in W_j`` iff ``i != j``.

    ``v_i`` is the canonical generator of the line ``cap_{j != i} W_j``.
    """
    if not Ws:
        raise NotHyperplanes("need n hyperplanes, got none")
    p, n = Ws[0].p, Ws[0].n
    if len(Ws) != n:
        raise NotHyperplanes(f"need exactly {n} hyperplanes, got {len(Ws)}")
    for W in Ws:
        if W.ambient != (p, n):
            raise AmbientMismatch("hyperplanes in different ambient spaces")
        if W.dim != n - 1:
            raise NotHyperplanes(f"subspace of dim {W.dim} is not a hyperplane of F_{p}^{n}")
    common = _intersect_all(Ws)
    if common.dim:
        raise CommonLine(common)
    out = []
    for i in range(n):
        others = [W for j, W in enumerate(Ws) if j != i]
        line = _intersect_all(others) if others else from_vectors([[1]], p, 1)
        out.append(line.basis[0])
    return out


def _intersect_all(Ws: Sequence[Subspace]) -> Subspace:
    acc = Ws[0]
    for W in Ws[1:]:
        acc = intersect(acc, W)
    return acc


def dyadic_refine(K: PointSet, W: Subspace) -> tuple[PointSet, int]:
    """Keep the fibers of the dyadic size class ``[2**l, 2**(l+1))`` with the most mass.

    Ties go to the smaller ``l``.
    """
    if not len(K):
        raise EmptySet("dyadic_refine needs a nonempty set")
    _check(K, W)
    classes: dict[int, list] = {}
    for pts in _group(K, W).values():
        classes.setdefault(len(pts).bit_length() - 1, []).extend(pts)
    level = min(classes, key=lambda lv: (-len(classes[lv]), lv))
    return PointSet(K.p, K.n, classes[level]), level


def mass_floor(size: int) -> int:
    """Denominator ``floor(log2 size) + 1`` in the refinement mass guarantee."""
    return size.bit_length()


def coordinates_in(frame: Sequence[Sequence[int]], p: int) -> fl.Matrix:
    """Inverse of the frame matrix; ``x -> vec_mat(x, inv)`` gives frame coordinates."""
    return fl.inverse(frame, p)


def bounding_product(K: PointSet, frame: Sequence[Sequence[int]]) -> list[set[int]]:
    """Coordinate sets ``A_i`` with ``K subset A_1 x ... x A_n`` in the given frame."""
    p, n = K.p, K.n
    if len(frame) != n or any(len(f) != n for f in frame):
        raise NotABasis(f"frame must be {n} vectors of length {n}")
    inv = coordinates_in(frame, p)
    As: list[set[int]] = [set() for _ in range(n)]
    for x in K.points:
        c = fl.vec_mat(x, inv, p)
        for i in range(n):
            As[i].add(c[i])
    return As


def to_frame(K: PointSet, frame: Sequence[Sequence[int]]) -> PointSet:
    """K rewritten in the coordinates of ``frame``."""
    inv = coordinates_in(frame, K.p)
    return PointSet(K.p, K.n, (fl.vec_mat(x, inv, K.p) for x in K.points))
