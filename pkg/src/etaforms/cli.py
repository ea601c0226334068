"""Command-line front end.

Every subcommand prints a deterministic JSON (or CSV) payload.  Exit codes:
0 on success, 1 on a domain error (message as JSON on stderr), 2 on a usage
or parse error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import charclass, dims, eisenstein, gamma0, hecke, qseries, search
from .etaquot import CuspOrders, EtaQuotient, ParseError, cusp_orders, parse, quotient_from_orders
from .ntheory import DomainError, divisors


class UsageError(Exception):
    pass


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _levels(text: str) -> list[int]:
    """'a..b' (inclusive) or a comma separated list."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return list(range(int(a), int(b) + 1))
        return [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad level range: {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list: {text!r}") from None


def _eta(args: argparse.Namespace) -> EtaQuotient:
    try:
        return parse(args.eta, level=args.level)
    except ParseError as exc:
        raise UsageError(f"malformed eta-quotient: {exc}") from None


def _dump(obj: object) -> str:
    return json.dumps(obj, sort_keys=False, separators=(", ", ": "))


# ---------------------------------------------------------------- commands

def cmd_invariants(args: argparse.Namespace) -> str:
    inv = gamma0.invariants(args.N)
    return _dump({"N": inv.N, "m": inv.m, "eps2": inv.eps2, "eps3": inv.eps3,
                  "eps_inf": inv.eps_inf, "genus": inv.genus})


def cmd_classify(args: argparse.Namespace) -> str:
    order = None
    if args.ordering == "given":
        if args.order is None:
            raise UsageError("--ordering given needs --order")
        order = args.order
        if sorted(order) != charclass.B_N(args.N):
            raise DomainError(f"--order must be a permutation of B_N = {charclass.B_N(args.N)}")
    return _dump(charclass.classify(args.N, order).to_json())


def cmd_orders(args: argparse.Namespace) -> str:
    if args.to_r:
        if args.level is None:
            raise UsageError("orders --to-r needs --level")
        try:
            vals = [Fraction(v) for v in args.eta.replace(",", " ").split()]
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad cusp-order vector: {args.eta!r}") from None
        f = quotient_from_orders(CuspOrders.from_vector(args.level, vals))
        return _dump({"N": f.N, "eta": str(f), "r": [_fmt(v) for v in f.vector()]})
    f = _eta(args)
    x = cusp_orders(f)
    return _dump({"N": f.N, "eta": str(f), "x": [_fmt(v) for v in x.vector()]})


def cmd_dim(args: argparse.Namespace) -> str:
    f = _eta(args)
    q = dims.DimQuery(f.N, f, args.t)
    out = {"N": f.N, "eta": str(f), "k": _fmt(q.weight), "t": args.t}
    out.update(dims.dimension(q).to_json())
    return _dump(out)


def cmd_table(args: argparse.Namespace) -> str:
    rows = dims.table(args.weight, args.levels, keep_empty=args.keep_empty)
    if args.csv:
        return dims.table_csv(rows).rstrip("\n")
    w = dims.table_width(rows)
    return _dump([{"N": r.N, "a": r.a, "v": r.v, "d": list(r.padded(w))} for r in rows])


def cmd_qexp(args: argparse.Namespace) -> str:
    f = _eta(args)
    s = qseries.expand(f, args.terms)
    out = {"N": f.N, "eta": str(f)}
    out.update(s.to_json())
    return _dump(out)


def cmd_hecke_check(args: argparse.Namespace) -> str:
    f = _eta(args)
    f._require_integral()
    ctx = hecke.HeckeContext.of(f)
    series = qseries.expand(f, hecke.required_terms(ctx, args.lmax, args.nmax))
    ls = args.l if args.l else hecke.L_f_upto(f, args.lmax)
    checks = []
    for l in ls:
        checks += [c.to_json() for c in hecke.eigen_check(ctx, series, l, nmax=args.nmax)]
    return _dump(checks)


def cmd_search(args: argparse.Namespace) -> str:
    types = {"I": ("I",), "II": ("II",), "both": ("I", "II")}[args.type]
    levels = args.levels if args.levels is not None else list(search.TYPE_I_LEVELS)
    recs = search.search_admissible(levels, types, include_constant=args.include_constant,
                                    threads=args.threads)
    if args.csv:
        counts = search.census(recs)
        return "\n".join(["N,count"] + [f"{N},{c}" for N, c in sorted(counts.items())])
    return "\n".join(json.dumps(r.to_json()) for r in recs)


def cmd_eis_check(args: argparse.Namespace) -> str:
    params = eisenstein.EisParams(args.r2, args.r4, c_max=args.cmax)
    rep = eisenstein.verify_identity(params, n_max=args.nmax, tol=args.tol)
    return _dump({"r2": _fmt(params.r2), "r4": _fmt(params.r4), "k": _fmt(params.k),
                  "c_max": params.c_max, "tol": args.tol, "max_error": rep.max_error,
                  "passed": rep.passed, "rows": [r.to_json() for r in rep.rows]})


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="etaforms", description="Exact computations with eta-quotients.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="write the payload to this file")
        return sp

    sp = add("invariants", cmd_invariants, "index, elliptic points, cusps and genus of X_0(N)")
    sp.add_argument("N", type=int)

    sp = add("classify", cmd_classify, "Delta-sequence and number of eta-characters at level N")
    sp.add_argument("N", type=int)
    sp.add_argument("--ordering", choices=("asc", "given"), default="asc")
    sp.add_argument("--order", type=_int_list, help="ordering of B_N for --ordering given")

    sp = add("orders", cmd_orders, "cusp orders from exponents or back")
    sp.add_argument("eta", help="eta-quotient (--to-x) or cusp-order vector (--to-r)")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--to-x", action="store_true", default=True)
    mode.add_argument("--to-r", action="store_true")
    sp.add_argument("--level", type=int)

    sp = add("dim", cmd_dim, "dimension of M_k(Gamma_0(N), chi) for the character of an eta-quotient")
    sp.add_argument("--eta", required=True)
    sp.add_argument("--level", type=int)
    sp.add_argument("--t", type=int, default=0)

    sp = add("table", cmd_table, "dimension statistics per level for a weight")
    sp.add_argument("--weight", type=_rational, required=True)
    sp.add_argument("--levels", type=_levels)
    sp.add_argument("--keep-empty", action="store_true")
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")

    sp = add("qexp", cmd_qexp, "exact q-expansion")
    sp.add_argument("eta")
    sp.add_argument("--level", type=int)
    sp.add_argument("--terms", type=int, default=20)

    sp = add("hecke-check", cmd_hecke_check, "verify T_l f = c_l f coefficientwise")
    sp.add_argument("eta")
    sp.add_argument("--level", type=int)
    sp.add_argument("--lmax", type=int, default=121)
    sp.add_argument("--nmax", type=int, default=40)
    sp.add_argument("--l", type=_int_list, help="explicit l values instead of all of L_f up to lmax")

    sp = add("search", cmd_search, "admissible eta-quotients (JSON lines)")
    sp.add_argument("--levels", type=_levels)
    sp.add_argument("--type", choices=("I", "II", "both"), default="I")
    sp.add_argument("--include-constant", action="store_true")
    sp.add_argument("--threads", type=int, default=1)
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true", help="per-level counts instead of records")
    fmt.add_argument("--json", action="store_true")

    sp = add("eis-check", cmd_eis_check, "compare an eta-quotient with a level-4 Eisenstein series")
    sp.add_argument("--r2", type=_rational, required=True)
    sp.add_argument("--r4", type=_rational, required=True)
    sp.add_argument("--cmax", type=int, default=2000)
    sp.add_argument("--nmax", type=int, default=8)
    sp.add_argument("--tol", type=float, default=1e-3)
    return p


def run(argv: Sequence[str] | None = None, stdout: io.TextIOBase | None = None,
        stderr: io.TextIOBase | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload = args.func(args)
    except UsageError as exc:
        parser.print_usage(stderr)
        stderr.write(f"etaforms: error: {exc}\n")
        return 2
    except DomainError as exc:
        stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    else:
        stdout.write(payload + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
