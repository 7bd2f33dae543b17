"""Text formats for point sets and subspace families.

Point set::

    p 5
    n 3
    0 1 2
    4 4 0

Family (one subspace literal per line, basis vectors separated by ``;``)::

    p 3
    n 3
    m 2
    1 0 0; 0 1 0
    0 1 0; 0 0 1

Blank lines and lines starting with ``#`` are ignored.
"""
from __future__ import annotations

import logging
from pathlib import Path

from .errors import ParseError, RangeError
from .families import SubspaceFamily
from .fflinalg import check_prime
from .project import PointSet
from .subspace import parse_literal

log = logging.getLogger("ffproj")


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield no, raw, s


def _header(it, key: str, source: str) -> int:
    try:
        no, raw, s = next(it)
    except StopIteration:
        raise ParseError(f"missing '{key} <value>' header", source, 0, 0) from None
    parts = s.split()
    if len(parts) != 2 or parts[0] != key:
        raise ParseError(f"expected '{key} <value>', got {s!r}", source, no, 1)
    try:
        return int(parts[1])
    except ValueError:
        col = raw.index(parts[1]) + 1
        raise ParseError(f"{key} must be an integer", source, no, col) from None


def _prime_header(it, source: str) -> int:
    p = _header(it, "p", source)
    try:
        return check_prime(p)
    except RangeError as exc:
        raise ParseError(str(exc), source, 1, 3) from None


def parse_pointset(text: str, source: str = "<points>") -> PointSet:
    it = _lines(text)
    p = _prime_header(it, source)
    n = _header(it, "n", source)
    if n < 1:
        raise ParseError("n must be positive", source, 2, 3)
    pts, seen = [], set()
    for no, raw, s in it:
        toks = s.split()
        vals = []
        pos = 0
        for tok in toks:
            pos = raw.index(tok, pos)
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"non-integer coordinate {tok!r}", source, no, pos + 1) from None
            if not 0 <= v < p:
                raise ParseError(f"coordinate {v} outside [0, {p})", source, no, pos + 1)
            vals.append(v)
            pos += len(tok)
        if len(vals) != n:
            raise ParseError(f"expected {n} coordinates, got {len(vals)}", source, no, 1)
        t = tuple(vals)
        if t in seen:
            log.warning("%s:%d: duplicate point %s ignored", source, no, " ".join(toks))
            continue
        seen.add(t)
        pts.append(t)
    return PointSet(p, n, pts)


def format_pointset(K: PointSet) -> str:
    out = [f"p {K.p}", f"n {K.n}"]
    out += [" ".join(str(c) for c in x) for x in K.points]
    return "\n".join(out) + "\n"


def parse_family(text: str, source: str = "<family>") -> SubspaceFamily:
    it = _lines(text)
    p = _prime_header(it, source)
    n = _header(it, "n", source)
    m = _header(it, "m", source)
    if not 0 <= m <= n:
        raise ParseError(f"m = {m} outside [0, {n}]", source, 3, 3)
    members = []
    for no, raw, s in it:
        W = parse_literal(s, p, n, source, no)
        if W.dim != m:
            raise ParseError(f"subspace has dimension {W.dim}, expected {m}", source, no, 1)
        members.append(W)
    return SubspaceFamily(p, n, m, members)


def format_family(E: SubspaceFamily) -> str:
    out = [f"p {E.p}", f"n {E.n}", f"m {E.dim}"] + [W.literal() for W in E]
    return "\n".join(out) + "\n"


def read_pointset(path) -> PointSet:
    return parse_pointset(Path(path).read_text(), str(path))


def read_family(path) -> SubspaceFamily:
    return parse_family(Path(path).read_text(), str(path))
