"""Point-line incidences in F_p^2.

Also carries two report-only bounds: Stevens' incidence estimate for
Cartesian products, and the arithmetic that decides when the very-small-set
regime (p at least a triple exponential tower) applies.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import fflinalg as fl
from .errors import AmbientMismatch, MalformedTower, ParseError, RangeError
from .project import PointSet, project
from .subspace import Subspace


@dataclass(frozen=True, order=True)
class PlanarLine:
    """``{(x, y) : a x + b y + c = 0}`` with the first nonzero of (a, b) equal to 1."""
    a: int
    b: int
    c: int
    p: int

    @classmethod
    def make(cls, a: int, b: int, c: int, p: int) -> PlanarLine:
        a, b, c = a % p, b % p, c % p
        if a == 0 and b == 0:
            raise RangeError("(a, b) = (0, 0) does not define a line")
        lead = a if a else b
        inv = fl.mod_inv(lead, p)
        return cls(a * inv % p, b * inv % p, c * inv % p, p)

    @classmethod
    def through(cls, point: Sequence[int], direction: Sequence[int], p: int) -> PlanarLine:
        """The translate ``point + span(direction)``."""
        dx, dy = direction
        a, b = dy % p, (-dx) % p
        return cls.make(a, b, -(a * point[0] + b * point[1]), p)

    def __contains__(self, q) -> bool:
        return (self.a * q[0] + self.b * q[1] + self.c) % self.p == 0

    def coeffs(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


class LineFamily:
    __slots__ = ("p", "lines")

    def __init__(self, p: int, lines: Iterable[PlanarLine] = ()):
        seen: dict[PlanarLine, None] = {}
        for ln in lines:
            if ln.p != p:
                raise AmbientMismatch(f"line over F_{ln.p} in a family over F_{p}")
            seen.setdefault(ln)
        self.p = p
        self.lines = tuple(seen)

    def __len__(self) -> int:
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __or__(self, other: LineFamily) -> LineFamily:
        return LineFamily(self.p, self.lines + other.lines)

    def __repr__(self) -> str:
        return f"LineFamily(p={self.p}, size={len(self)})"


def all_lines(p: int) -> LineFamily:
    lines = [PlanarLine.make(1, b, c, p) for b in range(p) for c in range(p)]
    lines += [PlanarLine.make(0, 1, c, p) for c in range(p)]
    return LineFamily(p, lines)


def _check_planar(P: PointSet, L: LineFamily) -> None:
    if P.n != 2:
        raise AmbientMismatch(f"incidences need points in the plane, got n={P.n}")
    if P.p != L.p:
        raise AmbientMismatch(f"points over F_{P.p}, lines over F_{L.p}")


def incidences_direct(P: PointSet, L: LineFamily) -> int:
    _check_planar(P, L)
    return sum(1 for ln in L for q in P.points if q in ln)


def incidences_by_evaluation(P: PointSet, L: LineFamily) -> int:
    """Solve each line for y at every x that occurs in P and look the point up."""
    _check_planar(P, L)
    p = P.p
    by_x: dict[int, set[int]] = {}
    for x, y in P.points:
        by_x.setdefault(x, set()).add(y)
    total = 0
    for ln in L:
        if ln.b == 0:
            total += len(by_x.get((-ln.c) % p, ()))
            continue
        binv = fl.mod_inv(ln.b, p)
        for x, ys in by_x.items():
            if (-(ln.a * x + ln.c) * binv) % p in ys:
                total += 1
    return total


def incidences(P: PointSet, L: LineFamily) -> int:
    """``I(P, L)``, computed two independent ways which must agree."""
    direct = incidences_direct(P, L)
    other = incidences_by_evaluation(P, L)
    if direct != other:
        raise AssertionError(f"incidence paths disagree: {direct} vs {other}")
    return direct


def stevens_bound(a: int, b: int, l: int) -> float:
    return a ** 0.75 * b ** 0.5 * l ** 0.75 + l


def stevens_report(A: Iterable[int], B: Iterable[int], L: LineFamily) -> dict:
    """Incidences of ``A x B`` with L against ``|A|^3/4 |B|^1/2 |L|^3/4 + |L|``.

    Report only: the estimate carries an unspecified constant. The third
    hypothesis ``|A||L| <~ p^2`` is checked with constant 1.
    """
    p = L.p
    A, B = sorted(set(A)), sorted(set(B))
    grid = PointSet(p, 2, ((x, y) for x in A for y in B))
    a, b, l = len(A), len(B), len(L)
    I = incidences(grid, L)
    bound = stevens_bound(a, b, l)
    ratio = I / bound if bound else 0.0
    al = a * l
    return {
        "incidences": I,
        "bound": bound,
        "ratio": ratio,
        "A": a, "B": b, "L": l,
        "hyp_A_le_B": a <= b,
        "hyp_AB2_le_L3": a * b * b <= l ** 3,
        "hyp_AL_le_p2": al <= p * p,
        # within a factor 4 of the threshold: the hidden constant matters here
        "near_p2_threshold": p * p // 4 < al <= 4 * p * p,
    }


def slice_lines(K_slice: PointSet, direction: Subspace) -> LineFamily:
    """Translates of a line direction covering a planar slice, one per fiber."""
    if K_slice.n != 2 or direction.n != 2 or K_slice.p != direction.p:
        raise AmbientMismatch("slice and direction must live in the same plane F_p^2")
    if direction.dim != 1:
        raise RangeError(f"direction must be a line, got dim {direction.dim}")
    d = direction.basis[0]
    img = project(K_slice, direction)
    return LineFamily(K_slice.p, (PlanarLine.through(next(iter(fib)), d, K_slice.p)
                                  for fib in img.fibers.values()))


def parse_lines(text: str, p: int, source: str = "<lines>") -> LineFamily:
    """Inline literal ``"a b c, a b c, ..."``."""
    lines = []
    col = 1
    for chunk in text.split(","):
        s = chunk.strip()
        if s:
            try:
                a, b, c = (int(t) for t in s.split())
                lines.append(PlanarLine.make(a, b, c, p))
            except (ValueError, RangeError) as exc:
                lead = len(chunk) - len(chunk.lstrip())
                raise ParseError(f"bad line {s!r}: {exc}", source, 1, col + lead) from None
        col += len(chunk) + 1
    return LineFamily(p, lines)


# --- very-small-set regime ------------------------------------------------

_TOWER_BASES = (18, 6, 2)


@dataclass(frozen=True)
class Tower:
    """A modulus given either literally or as ``18 ** 6 ** 2 ** top``.

    The literal form covers machine-size primes. The tower form stands for
    primes beyond any materializable integer, where the regime becomes
    nonempty; ``top`` may be any nonnegative rational.
    """
    literal: int | None = None
    top: Fraction | None = None

    @classmethod
    def parse(cls, text) -> Tower:
        if isinstance(text, int):
            return cls(literal=text)
        s = str(text).replace(" ", "").replace("**", "^")
        if re.fullmatch(r"\d+", s):
            return cls(literal=int(s))
        parts = s.split("^")
        if len(parts) != 4 or tuple(parts[:3]) != ("18", "6", "2"):
            raise MalformedTower(f"expected an integer or 18^6^2^x, got {text!r}")
        try:
            top = Fraction(parts[3])
        except (ValueError, ZeroDivisionError):
            raise MalformedTower(f"bad tower exponent {parts[3]!r}") from None
        if top < 0:
            raise MalformedTower("tower exponent must be nonnegative")
        return cls(top=top)

    def at_least_tower(self, k: int) -> bool:
        """Exact test of ``p >= 18 ** 6 ** 2 ** k`` for integer k >= 0."""
        if self.top is not None:
            return self.top >= k
        p = self.literal
        if p < 18:
            return False
        e = 6 ** (2 ** k) if k < 7 else None  # 6**(2**7) has ~330 bits
        if e is None or e > p.bit_length():
            return False
        return 18 ** e <= p


def grosu_regime(size_p: int, size_l: int, tower) -> bool:
    """Both sizes within ``(1/5)(log2 log6 log18 p - 1)``; empty sets always qualify.

    ``s <= (L - 1)/5`` iff ``p >= 18 ** 6 ** 2 ** (5s + 1)``, which is how the
    test is carried out, without logarithms.
    """
    T = tower if isinstance(tower, Tower) else Tower.parse(tower)
    for s in (size_p, size_l):
        if s < 0:
            raise RangeError("sizes must be nonnegative")
        if s and not T.at_least_tower(5 * s + 1):
            return False
    return True
