"""Seeded, splittable randomness and instance generators.

``Rng`` is counter based: draw ``k`` of a stream is BLAKE2b over
``(seed, path, k)``, so output depends only on those values and not on the
platform, the Python version, or the order in which sibling streams are used.
"""
from __future__ import annotations

import hashlib
import itertools
import struct
from typing import Iterable, Sequence

from . import fflinalg as fl
from .errors import RangeError
from .families import SubspaceFamily
from .grassmann import count, enumerate_subspaces, sample_uniform
from .project import PointSet
from .subspace import coordinate_subspace, from_vectors

_MASK64 = (1 << 64) - 1
_PERSON = b"ffproj-rng-v1"


class Rng:
    def __init__(self, seed: int, path: tuple[int, ...] = ()):
        self.seed = seed & _MASK64
        self.path = tuple(i & _MASK64 for i in path)
        self.counter = 0
        self._prefix = struct.pack(f"<{1 + len(self.path)}Q", self.seed, *self.path)

    def child(self, i: int) -> Rng:
        return Rng(self.seed, self.path + (i,))

    def next_u64(self) -> int:
        h = hashlib.blake2b(self._prefix + struct.pack("<Q", self.counter),
                            digest_size=8, person=_PERSON)
        self.counter += 1
        return int.from_bytes(h.digest(), "little")

    def randbelow(self, k: int) -> int:
        if k <= 0:
            raise RangeError("randbelow needs k >= 1")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % k

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range ``[lo, hi]``."""
        return lo + self.randbelow(hi - lo + 1)

    def choice(self, seq: Sequence):
        return seq[self.randbelow(len(seq))]

    def sample(self, population: Sequence, k: int) -> list:
        if not 0 <= k <= len(population):
            raise RangeError(f"cannot sample {k} of {len(population)}")
        picked: dict[int, None] = {}
        while len(picked) < k:
            picked.setdefault(self.randbelow(len(population)))
        return [population[i] for i in picked]

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed}, path={self.path}, counter={self.counter})"


def _random_vector(n: int, p: int, rng: Rng) -> tuple[int, ...]:
    return tuple(rng.randbelow(p) for _ in range(n))


def random_pointset(n: int, p: int, size: int, rng: Rng) -> PointSet:
    """``size`` distinct uniform points, by rejection.

    Past half the universe the complement is drawn instead, which keeps the
    expected number of draws linear in ``size``.
    """
    total = p ** n
    if not 0 <= size <= total:
        raise RangeError(f"size {size} outside [0, {total}]")
    if 2 * size <= total:
        pts: dict[tuple, None] = {}
        while len(pts) < size:
            pts.setdefault(_random_vector(n, p, rng))
        return PointSet(p, n, pts)
    holes: dict[tuple, None] = {}
    while len(holes) < total - size:
        holes.setdefault(_random_vector(n, p, rng))
    return PointSet(p, n, (v for v in itertools.product(range(p), repeat=n) if v not in holes))


def product_set(sets: Sequence[Iterable[int]], p: int) -> PointSet:
    """Cartesian product ``A_1 x ... x A_n`` as a point set."""
    fl.check_prime(p)
    As = [sorted(set(A)) for A in sets]
    for A in As:
        if any(not 0 <= a < p for a in A):
            raise RangeError(f"scalar outside [0, {p})")
    return PointSet(p, len(As), itertools.product(*As))


def random_product(n: int, p: int, sizes: Sequence[int], rng: Rng) -> PointSet:
    return product_set([rng.sample(range(p), k) for k in sizes], p)


def extremal_pair(d: int, n: int, p: int) -> tuple[PointSet, SubspaceFamily]:
    """K = span(e_1..e_{d+1}) and E = every line inside K.

    Every W in E projects K onto exactly p**d cosets.
    """
    if not 1 <= d <= n - 1:
        raise RangeError(f"need 1 <= d <= n - 1, got d={d}, n={n}")
    U = coordinate_subspace(range(d + 1), p, n)
    K = PointSet(p, n, U.elements())
    lines = []
    for L in enumerate_subspaces(d + 1, 1, p):
        v = L.basis[0] + (0,) * (n - d - 1)
        lines.append(from_vectors([v], p, n))
    return K, SubspaceFamily(p, n, 1, lines)


def random_family(n: int, m: int, p: int, size: int, rng: Rng) -> SubspaceFamily:
    total = count(n, m, p)
    if not 0 <= size <= total:
        raise RangeError(f"size {size} outside [0, {total}]")
    if 2 * size > total:
        pool = list(enumerate_subspaces(n, m, p))
        return SubspaceFamily(p, n, m, rng.sample(pool, size))
    members: dict = {}
    while len(members) < size:
        members.setdefault(sample_uniform(n, m, p, rng))
    return SubspaceFamily(p, n, m, members)


GENERATORS = {
    "random_pointset": lambda params, rng: random_pointset(params["n"], params["p"], params["size"], rng),
    "random_product": lambda params, rng: random_product(params["n"], params["p"], params["sizes"], rng),
    "product_set": lambda params, rng: product_set(params["sets"], params["p"]),
    "random_family": lambda params, rng: random_family(params["n"], params["m"], params["p"], params["size"], rng),
}
