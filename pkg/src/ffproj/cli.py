"""Command-line entry point: ``ffproj <command> ...`` prints one JSON report.

Exit codes: 0 ok, 1 an exact inequality check failed, 2 usage error,
3 input parse error, 4 enumeration budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from . import grassmann
from .bounds import BOUND_NAMES, BoundSpec
from .errors import BudgetExceeded, FFError, ParseError
from .families import is_nondegenerate, nonconcentration_check
from .incidence import (LineFamily, all_lines, incidences_by_evaluation,
                        incidences_direct, parse_lines, stevens_report)
from .io import read_family, read_pointset
from .project import DEFAULT_BUDGET, exceptional_set, project
from .report import Report, timed
from .subspace import is_transverse, parse_literal
from .sweep import SweepConfig, run_sweep
from .verify import (bound_report, chen_verify, improvement_hypotheses,
                     intersection_bound_check, lemma37_check, line_proof_check,
                     sequence_reduce, sum_bound_check, validate_path)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3, 4

log = logging.getLogger("ffproj")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _diag(f"{self.prog}: {message}")
        raise SystemExit(EXIT_USAGE)


def _diag(msg: str) -> None:
    color = sys.stderr.isatty() and "NO_COLOR" not in os.environ
    prefix = "\x1b[31merror\x1b[0m" if color else "error"
    print(f"{prefix}: {msg}", file=sys.stderr)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 1/16, got {text!r}") from None


def _common() -> argparse.ArgumentParser:
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--format", choices=("json", "csv"), default="json", help="output format")
    c.add_argument("--seed", type=int, default=None, help="master seed (default 0, echoed)")
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="cap on enumerated subspaces; exceeding it exits 4")
    c.add_argument("--jobs", type=int, default=1, help="worker processes (sweep only)")
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = _Parser(prog="ffproj", description="Exact experiments on projections over prime fields.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(parent, name, help_text, **kw):
        return parent.add_parser(name, parents=[common], help=help_text, description=help_text, **kw)

    def space(p):
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--m", type=int, required=True)

    gr = sub.add_parser("gr", help="Grassmannian counting and enumeration")
    grs = gr.add_subparsers(dest="action", required=True, parser_class=_Parser)
    space(add(grs, "count", "Number of m-dimensional subspaces of F_p^n (Gaussian binomial)."))
    e = add(grs, "enum", "List the m-dimensional subspaces of F_p^n in canonical order.")
    space(e)
    e.add_argument("--limit", type=int, default=None, help="stop after this many")

    pr = add(sub, "project", "Image of a point set under the quotient map x -> x + W.")
    pr.add_argument("--points", required=True)
    pr.add_argument("--subspace", required=True, help='literal such as "1 0 0; 0 1 0"')

    ex = add(sub, "exceptional", "Subspaces W of codimension m with a small projection of K.")
    ex.add_argument("--points", required=True)
    ex.add_argument("--m", type=int, required=True)
    g = ex.add_mutually_exclusive_group(required=True)
    g.add_argument("--threshold", type=int, help="keep W with |pi^W K| <= threshold")
    g.add_argument("--not-full", action="store_true", help="keep W with |pi^W K| != p^m")

    fam = sub.add_parser("family", help="subspace family checks")
    fs = fam.add_subparsers(dest="action", required=True, parser_class=_Parser)
    fc = add(fs, "check", "Non-degeneracy and non-concentration of a subspace family.")
    fc.add_argument("--family", required=True)
    fc.add_argument("--kappa", type=_fraction, default=None)

    inc = add(sub, "incidence", "Point-line incidence count in F_p^2, by two independent methods.")
    inc.add_argument("--points", required=True)
    inc.add_argument("--lines", default=None, help='"a b c, a b c, ..." for ax + by + c = 0; default all lines')

    st = add(sub, "stevens", "Incidences of a product grid A x B with lines against the product-grid bound.")
    st.add_argument("--p", type=int, required=True)
    st.add_argument("--A", type=_int_list, required=True)
    st.add_argument("--B", type=_int_list, required=True)
    st.add_argument("--lines", default=None, help="default all lines")

    ver = sub.add_parser("verify", help="inequality checks and bound reports")
    vs = ver.add_subparsers(dest="action", required=True, parser_class=_Parser)
    vc = add(vs, "chen", "Exact check of the three exceptional-set size estimates.")
    vc.add_argument("--points", required=True)
    vc.add_argument("--m", type=int, required=True)
    vc.add_argument("--statement", type=int, choices=(1, 2, 3), required=True)

    vb = add(vs, "bound", "Largest projection over a family against a named lower bound (ratio report).")
    vb.add_argument("--points", required=True)
    vb.add_argument("--family", required=True, action="append",
                    help="repeat to pass one family per dimension (improvement only)")
    vb.add_argument("--bound", choices=BOUND_NAMES, required=True)
    vb.add_argument("--m", type=int)
    vb.add_argument("--d", type=int)
    vb.add_argument("--eps", type=_fraction)
    vb.add_argument("--delta", type=_fraction)
    vb.add_argument("--kappa", type=_fraction)

    vp = add(vs, "props", "Intersection bound, three-projection inequality and dyadic sum bound "
                          "for K, W1, W2; with --family also the hyperplane slicing argument.")
    vp.add_argument("--points", required=True)
    vp.add_argument("--w1", required=True)
    vp.add_argument("--w2", required=True)
    vp.add_argument("--family", default=None, help="hyperplane family for the slicing check")

    vi = add(vs, "improvement", "Covering hypotheses (lines and transverse subspaces) of a family union.")
    vi.add_argument("--family", required=True, action="append")
    vi.add_argument("--k", type=int, required=True)
    vi.add_argument("--d", type=int, required=True)

    sq = add(sub, "seq", "Whether 1 is reachable from S under a + b and a + b - n, with a witness path.")
    sq.add_argument("--n", type=int, required=True)
    sq.add_argument("--set", type=_int_list, required=True, dest="S")

    sw = add(sub, "sweep", "Seeded instance sweep from a JSON config.")
    sw.add_argument("--config", required=True)
    return ap


# --- handlers --------------------------------------------------------------

def _cmd_gr(a) -> Report | int:
    if a.action == "count":
        return grassmann.count(a.n, a.m, a.p)
    total = grassmann.count(a.n, a.m, a.p)
    want = total if a.limit is None else min(a.limit, total)
    if a.budget is not None and want > a.budget:
        raise BudgetExceeded(want, a.budget, f"Gr({a.n}, {a.m}) enumeration")
    rep = Report("gr enum", {"p": a.p, "n": a.n, "m": a.m, "total": total})
    with timed(rep):
        for i, W in enumerate(grassmann.enumerate_subspaces(a.n, a.m, a.p)):
            if i >= want:
                break
            rep.rows.append({"index": i, "subspace": W, "pivots": list(W.pivots)})
    return rep


def _cmd_project(a) -> Report:
    K = read_pointset(a.points)
    W = parse_literal(a.subspace, K.p, K.n, "--subspace")
    rep = Report("project", {"p": K.p, "n": K.n, "K": len(K), "W": W})
    with timed(rep):
        img = project(K, W)
        for r, fib in sorted(img.fibers.items()):
            rep.rows.append({"representative": list(r), "fiber_size": len(fib)})
        rep.params["size"] = img.size
    return rep


def _cmd_exceptional(a) -> Report:
    K = read_pointset(a.points)
    mode = "not-full" if a.not_full else "at-most"
    rep = Report("exceptional", {"p": K.p, "n": K.n, "K": len(K), "m": a.m, "mode": mode,
                                 "threshold": a.threshold})
    with timed(rep):
        Ws = exceptional_set(K, a.m, a.threshold, mode, a.budget)
        rep.rows = [{"subspace": W} for W in Ws]
        rep.params["count"] = len(Ws)
        rep.params["total"] = grassmann.count(K.n, K.n - a.m, K.p)
    return rep


def _cmd_family(a) -> Report:
    E = read_family(a.family)
    rep = Report("family check", {"p": E.p, "n": E.n, "m": E.dim, "size": len(E),
                                  "kappa": a.kappa})
    with timed(rep):
        ok, V = is_nondegenerate(E, a.budget)
        rep.rows.append({"property": "nondegenerate", "holds": ok, "witness": V})
        if a.kappa is not None:
            ok, V, worst = nonconcentration_check(E, a.kappa, a.budget)
            rep.rows.append({"property": "nonconcentrated", "holds": ok, "witness": V,
                             "worst_count": worst})
    return rep


def _lines_arg(text, p) -> LineFamily:
    return all_lines(p) if text is None else parse_lines(text, p, "--lines")


def _cmd_incidence(a) -> Report:
    P = read_pointset(a.points)
    if P.n != 2:
        raise ParseError(f"incidences need points in the plane, got n = {P.n}", a.points)
    L = _lines_arg(a.lines, P.p)
    rep = Report("incidence", {"p": P.p, "points": len(P), "lines": len(L)})
    with timed(rep):
        d, e = incidences_direct(P, L), incidences_by_evaluation(P, L)
        rep.rows.append({"direct": d, "by_evaluation": e, "agree": d == e, "pass": d == e})
        rep.passed = d == e
    return rep


def _cmd_stevens(a) -> Report:
    from .fflinalg import check_prime
    p = check_prime(a.p)
    A, B = sorted({x % p for x in a.A}), sorted({x % p for x in a.B})
    L = _lines_arg(a.lines, p)
    rep = Report("stevens", {"p": p, "A": A, "B": B, "lines": len(L)})
    with timed(rep):
        rep.rows.append(stevens_report(A, B, L))
    return rep


def _cmd_verify(a) -> Report:
    if a.action == "chen":
        return chen_verify(read_pointset(a.points), a.m, a.statement, a.budget)
    if a.action == "bound":
        K = read_pointset(a.points)
        fams = [read_family(f) for f in a.family]
        spec = BoundSpec(a.bound, m=a.m, eps=a.eps, d=a.d, delta=a.delta, kappa=a.kappa)
        return bound_report(K, fams if len(fams) > 1 else fams[0], spec, a.budget)
    if a.action == "props":
        K = read_pointset(a.points)
        W1 = parse_literal(a.w1, K.p, K.n, "--w1")
        W2 = parse_literal(a.w2, K.p, K.n, "--w2")
        parts = [intersection_bound_check(K, W1, W2)]
        if is_transverse(W1, W2):
            parts += [lemma37_check(K, W1, W2)]
            if len(K):
                parts += [sum_bound_check(K, W1, W2)]
        if a.family is not None:
            parts.append(line_proof_check(K, read_family(a.family)))
        rep = Report("verify props", {"p": K.p, "n": K.n, "K": len(K), "W1": W1, "W2": W2,
                                      "transverse": is_transverse(W1, W2)})
        for part in parts:
            rep.rows += [{"check": part.command.split()[-1], **r} for r in part.rows]
            rep.timing_ms += part.timing_ms
        verdicts = [part.passed for part in parts if part.passed is not None]
        rep.passed = all(verdicts) if verdicts else None
        return rep
    fams = [read_family(f) for f in a.family]
    return improvement_hypotheses(fams, a.k, a.d, a.budget)


def _cmd_seq(a) -> Report:
    rep = Report("seq", {"n": a.n, "S": sorted(set(a.S))})
    with timed(rep):
        out = sequence_reduce(a.n, a.S)
        if out["reachable"]:
            out["path_valid"] = validate_path(a.n, out["S"], out["path"])
            out["pass"] = out["path_valid"]
        rep.rows.append(out)
        rep.passed = rep.all_pass()
    return rep


def _cmd_sweep(a) -> Report:
    cfg = SweepConfig.load(a.config)
    if a.seed is not None:
        cfg.seed = a.seed
    cfg.jobs = max(cfg.jobs, a.jobs)
    return run_sweep(cfg)


HANDLERS = {"gr": _cmd_gr, "project": _cmd_project, "exceptional": _cmd_exceptional,
            "family": _cmd_family, "incidence": _cmd_incidence, "stevens": _cmd_stevens,
            "verify": _cmd_verify, "seq": _cmd_seq, "sweep": _cmd_sweep}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if a.budget is not None and a.budget < 0:
        a.budget = None
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("warning: %(message)s"))
    log.addHandler(handler)
    try:
        result = HANDLERS[a.command](a)
    except ParseError as exc:
        _diag(str(exc))
        return EXIT_PARSE
    except OSError as exc:
        _diag(f"{exc.filename}: {exc.strerror}")
        return EXIT_PARSE
    except BudgetExceeded as exc:
        _diag(str(exc))
        return EXIT_BUDGET
    except FFError as exc:
        _diag(str(exc))
        return EXIT_USAGE
    finally:
        log.removeHandler(handler)
    if isinstance(result, int):
        print(json.dumps(result), file=out)
        return EXIT_OK
    if result.seed is None:
        result.seed = 0 if a.seed is None else a.seed
    print(result.to_csv() if a.format == "csv" else result.to_json(), file=out, end="" if a.format == "csv" else "\n")
    if result.passed is False:
        _diag(f"{result.command}: check failed")
        return EXIT_FAIL
    return EXIT_OK


def main() -> None:
    sys.exit(run())
