"""Families of equal-dimension subspaces and their constructions.

Covers non-degeneracy (every complementary-dimension V is transverse to
some member), non-concentration, and the sum / intersection / complement
constructions that preserve non-degeneracy.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator

from .errors import (AmbientMismatch, BudgetExceeded, DimOverflow, DimUnderflow,
                     EmptyFamily, RangeError)
from .grassmann import count, enumerate_subspaces
from .subspace import (Subspace, coordinate_subspace, intersect, is_transverse,
                       perp, subspace_sum)

DEFAULT_BUDGET = 10**6


class SubspaceFamily:
    """Deduplicated collection of subspaces of one dimension, in insertion order."""

    __slots__ = ("p", "n", "dim", "members")

    def __init__(self, p: int, n: int, dim: int, members: Iterable[Subspace] = ()):
        if not 0 <= dim <= n:
            raise RangeError(f"member dimension {dim} outside [0, {n}]")
        seen: dict[Subspace, None] = {}
        for W in members:
            if W.ambient != (p, n):
                raise AmbientMismatch(f"member in F_{W.p}^{W.n}, family in F_{p}^{n}")
            if W.dim != dim:
                raise RangeError(f"member of dim {W.dim} in a dim-{dim} family")
            seen.setdefault(W)
        self.p, self.n, self.dim = p, n, dim
        self.members = tuple(seen)

    @property
    def ambient(self) -> tuple[int, int]:
        return (self.p, self.n)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.members)

    def __contains__(self, W) -> bool:
        return W in self.members

    def __eq__(self, other) -> bool:
        return (isinstance(other, SubspaceFamily) and self.ambient == other.ambient
                and self.dim == other.dim and set(self.members) == set(other.members))

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.dim, frozenset(self.members)))

    def __repr__(self) -> str:
        return f"SubspaceFamily(p={self.p}, n={self.n}, dim={self.dim}, size={len(self)})"


def _complements(E: SubspaceFamily, budget: int | None) -> Iterator[Subspace]:
    total = count(E.n, E.n - E.dim, E.p)
    if budget is not None and total > budget:
        raise BudgetExceeded(total, budget, f"Gr({E.n}, {E.n - E.dim}) scan")
    return enumerate_subspaces(E.n, E.n - E.dim, E.p)


def is_nondegenerate(E: SubspaceFamily, budget: int | None = DEFAULT_BUDGET
                     ) -> tuple[bool, Subspace | None]:
    """Check that every V in Gr(n, n - m) misses some member; else return a V meeting all."""
    members = list(E.members)
    if not members:
        V = next(_complements(E, budget))
        return False, V
    last = 0
    for V in _complements(E, budget):
        # the member that worked for the previous V usually works again
        if is_transverse(members[last], V):
            continue
        for i, W in enumerate(members):
            if is_transverse(W, V):
                last = i
                break
        else:
            return False, V
    return True, None


def nonconcentration_check(E: SubspaceFamily, kappa, budget: int | None = DEFAULT_BUDGET
                           ) -> tuple[bool, Subspace | None, int]:
    """Is ``|{W in E : W & V != 0}| <= p**(-kappa) |E|`` for every V in Gr(n, n - m)?

    ``kappa`` is taken as an exact rational; the comparison is done in integers.
    Returns the worst V and its count regardless of the verdict.
    """
    kappa = Fraction(kappa) if not isinstance(kappa, float) else Fraction(str(kappa))
    worst_V, worst = None, -1
    for V in _complements(E, budget):
        c = sum(1 for W in E.members if not is_transverse(W, V))
        if c > worst:
            worst_V, worst = V, c
    return _le_scaled(worst, E.p, kappa, len(E)), worst_V, worst


def _le_scaled(c: int, p: int, kappa: Fraction, size: int) -> bool:
    # c <= p**(-kappa) * size  <=>  c**q * p**a <= size**q   (kappa = a/q)
    a, q = kappa.numerator, kappa.denominator
    if a >= 0:
        return c ** q * p ** a <= size ** q
    return c ** q <= size ** q * p ** (-a)


def common_intersection(E: SubspaceFamily) -> Subspace:
    if not len(E):
        raise EmptyFamily("intersection over an empty family")
    acc = E.members[0]
    for W in E.members[1:]:
        if acc.dim == 0:
            break
        acc = intersect(acc, W)
    return acc


def _check_pair(E1: SubspaceFamily, E2: SubspaceFamily) -> None:
    if E1.ambient != E2.ambient:
        raise AmbientMismatch("families in different ambient spaces")


def sum_family(E1: SubspaceFamily, E2: SubspaceFamily) -> SubspaceFamily:
    """``{W1 + W2 : W1 & W2 = 0}`` for ``dim E1 + dim E2 < n``."""
    _check_pair(E1, E2)
    m = E1.dim + E2.dim
    if m >= E1.n:
        raise DimOverflow(f"member dims {E1.dim} + {E2.dim} >= n = {E1.n}")
    out = [subspace_sum(W1, W2) for W1 in E1 for W2 in E2 if is_transverse(W1, W2)]
    return SubspaceFamily(E1.p, E1.n, m, out)


def cap_family(E1: SubspaceFamily, E2: SubspaceFamily) -> SubspaceFamily:
    """``{W1 & W2 : dim(W1 & W2) = m1 + m2 - n}`` for ``m1 + m2 > n``."""
    _check_pair(E1, E2)
    m = E1.dim + E2.dim - E1.n
    if m <= 0:
        raise DimUnderflow(f"member dims {E1.dim} + {E2.dim} <= n = {E1.n}")
    out = []
    for W1 in E1:
        for W2 in E2:
            X = intersect(W1, W2)
            if X.dim == m:
                out.append(X)
    return SubspaceFamily(E1.p, E1.n, m, out)


def perp_family(E: SubspaceFamily) -> SubspaceFamily:
    return SubspaceFamily(E.p, E.n, E.n - E.dim, (perp(W) for W in E))


def coordinate_family(n: int, m: int, p: int) -> SubspaceFamily:
    """All ``C(n, m)`` spans of m standard basis vectors."""
    if not 0 <= m <= n:
        raise RangeError(f"need 0 <= m <= n, got n={n}, m={m}")
    return SubspaceFamily(p, n, m, (coordinate_subspace(idx, p, n)
                                    for idx in combinations(range(n), m)))


def size_lower_bound_holds(E: SubspaceFamily, E1: SubspaceFamily, E2: SubspaceFamily) -> bool:
    """``|E| >= max(|E1|, |E2|)**(1/n)``, compared as ``|E|**n >= max``."""
    return len(E) ** E.n >= max(len(E1), len(E2))
