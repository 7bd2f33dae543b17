"""Bound formulas for projection lower bounds and their hypothesis checks.

Every hypothesis is a comparison between products of rational powers of
integers; ``powers_le`` decides those exactly by clearing denominators.
Bound values themselves are floats since they only feed ratios.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import SpecMismatch
from .families import SubspaceFamily, common_intersection, is_nondegenerate

BOUND_NAMES = ("chen-induced", "line", "bourgain", "improvement", "planar", "lpv")

Term = tuple  # (base, exponent) with base int/Fraction > 0, exponent rational


def powers_le(lhs: Sequence[Term], rhs: Sequence[Term]) -> bool:
    """Exact ``prod b**e (lhs) <= prod b**e (rhs)`` for positive rational bases."""
    exps = [Fraction(e) for _, e in lhs] + [Fraction(e) for _, e in rhs]
    D = math.lcm(*(e.denominator for e in exps)) if exps else 1
    L = R = Fraction(1)
    for side, terms in ((0, lhs), (1, rhs)):
        for b, e in terms:
            b = Fraction(b)
            if b <= 0:
                raise ValueError("bases must be positive")
            k = Fraction(e) * D
            assert k.denominator == 1
            k = int(k)
            on_left = (side == 0) == (k >= 0)
            if on_left:
                L *= b ** abs(k)
            else:
                R *= b ** abs(k)
    return L <= R


def eps0(n: int) -> Fraction:
    """Largest admissible exponent ``1 / (4 n (n-1) (2n)^(n-2))``."""
    return Fraction(1, 4 * n * (n - 1) * (2 * n) ** (n - 2))


@dataclass(frozen=True)
class BoundSpec:
    name: str
    m: int | None = None
    eps: Fraction | None = None
    d: int | None = None
    delta: Fraction | None = None
    kappa: Fraction | None = None

    def __post_init__(self):
        if self.name not in BOUND_NAMES:
            raise SpecMismatch(f"unknown bound {self.name!r}; expected one of {BOUND_NAMES}")
        for f in ("eps", "delta", "kappa"):
            v = getattr(self, f)
            if v is not None and not isinstance(v, Fraction):
                object.__setattr__(self, f, Fraction(str(v)))
        need = {"bourgain": ("m", "eps"), "improvement": ("m", "d", "eps", "delta"),
                "planar": ("delta",)}.get(self.name, ())
        for f in need:
            if getattr(self, f) is None:
                raise SpecMismatch(f"bound {self.name!r} needs parameter {f!r}")

    def params(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def _fam_dim(E: SubspaceFamily, want: int, spec: BoundSpec) -> None:
    if E.dim != want:
        raise SpecMismatch(f"bound {spec.name!r} needs members of dim {want}, got {E.dim}")


def evaluate(spec: BoundSpec, K_size: int, E: SubspaceFamily, budget: int | None = None) -> tuple[float, dict]:
    """Bound value and hypothesis flags for ``|K| = K_size`` and family ``E``."""
    n, p = E.n, E.p
    k, e = K_size, len(E)
    if k < 1 or e < 1:
        raise SpecMismatch("bounds need nonempty K and E")
    name = spec.name
    flags: dict = {}

    if name == "chen-induced":
        _fam_dim(E, n - 1, spec)
        return p ** (2 - n) * e, flags

    if name == "line":
        _fam_dim(E, n - 1, spec)
        flags["no_common_line"] = common_intersection(E).dim == 0
        flags["size_condition"] = powers_le([(k, 1), (e, Fraction(2 * n + 1, 4 * (n - 1)))], [(p, n)])
        bound = min(k ** (1 / n) * e ** (1 / (4 * n * (n - 1))), k ** (1 / (n - 1)))
        return bound, flags

    if name == "bourgain":
        m = spec.m
        if not 1 <= m <= n - 1:
            raise SpecMismatch(f"need 1 <= m <= n - 1, got m={m}")
        _fam_dim(E, n - m, spec)
        if not 0 < spec.eps < eps0(n):
            raise SpecMismatch(f"eps = {spec.eps} not in (0, {eps0(n)})")
        q = n ** (n - 2)
        flags["nondegenerate"] = is_nondegenerate(E, budget)[0]
        flags["size_condition"] = powers_le([(k, 1), (e, Fraction(2 * n + 1, 4 * (n - 1) * q))], [(p, n)])
        flags["family_vs_set"] = powers_le([(e, Fraction(1, 4 * q))], [(k, 1)])
        return k ** (m / n) * e ** float(spec.eps), flags

    if name == "improvement":
        m, d, delta = spec.m, spec.d, spec.delta
        if not 1 <= m <= n - 1 or d < 1:
            raise SpecMismatch(f"need 1 <= m <= n - 1 and d >= 1, got m={m}, d={d}")
        _fam_dim(E, n - m, spec)
        base = m * (n - m) - m
        flags["family_size"] = e >= 2 * p ** (base + d - 1)
        flags["set_lower"] = powers_le([(p, delta)], [(k, 1)])
        flags["set_upper"] = powers_le([(k, 1)], [(p, d + 1 - delta)])
        bound = k ** (d / (1 + d * (n - m))) * (e / p ** base) ** float(spec.eps)
        return bound, flags

    if name == "planar":
        if n != 2:
            raise SpecMismatch("planar bound needs n = 2")
        _fam_dim(E, 1, spec)
        flags["set_upper"] = powers_le([(k, 1)], [(p, 1 - spec.delta)])
        flags["family_range"] = 2 <= e <= k
        return math.sqrt(k * e), flags

    if name == "lpv":
        if n != 2:
            raise SpecMismatch("lpv bound needs n = 2")
        _fam_dim(E, 1, spec)
        flags["range"] = powers_le([(k, Fraction(1, 2))], [(e, 1)]) and e <= k <= p
        bound = max(k ** 0.5 * e ** (1 / 6), k ** 0.4 * e ** 0.4, e)
        return bound, flags

    raise SpecMismatch(name)  # pragma: no cover


def small_set_bound(K_size: int, E_size: int) -> float:
    """``min(sqrt(|K||E|), |K|)``, the very-small-set form of the planar bound."""
    return min(math.sqrt(K_size * E_size), K_size)
