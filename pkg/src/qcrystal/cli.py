"""Command-line driver for the verification suites.

Examples
--------
::

    qcrystal run qdet --n 1
    qcrystal run triangular --algebra sl2 --omega 2 --format text
    qcrystal soibelman --n 2 --q 1/10 --entry 1,2 --mode exact
    qcrystal crystal-limit --n 2 --scaled --mode leading
    qcrystal compare --n 2 --q 1/10
    qcrystal rep "hw(tensor(fund(1),fund(1)),2)"

Exit status is 0 when every reported check passes, 1 when any fails and
2 on a usage error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .fnalg.frt import FRTAlgebra
from .repth.module import verify_uq_relations
from .repth.parse import parse_rep
from .report import CheckReport, emit, status_of
from .soibelman.leading import CancellationError, DivergenceError
from .soibelman.pipelines import (DEFAULT_CUTOFF, DEFAULT_WINDOW, Layout, Soibelman, compare_pipelines,
                                  pi0_global, pi0_per_leg, scaled_generator)
from .soibelman.truncop import BlockOp
from .suites import DEFAULT_SEED, UsageError, run_suite, suite_names

# flags forwarded to run_suite when given
SUITE_FLAGS = ("n", "power", "q", "omega", "lam", "algebra", "order", "cutoff", "window", "words",
               "max_len", "max_exp")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int_list(text: str):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _check_q(q):
    if not 0 < q < 1:
        raise UsageError("q must lie strictly between 0 and 1")


def _layout(args) -> Layout:
    if args.n < 1:
        raise UsageError("n must be at least 1")
    try:
        return Layout.default(args.n, args.cutoff, args.window, word=args.word)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _entry(args):
    i, j = args.entry if len(args.entry) == 2 else (None, None)
    if i is None or not (1 <= i <= args.n + 1 and 1 <= j <= args.n + 1):
        raise UsageError(f"entry must be i,j with 1 <= i, j <= {args.n + 1}")
    return i, j


def _summary(blocks: BlockOp, limit: int = 8) -> str:
    parts = []
    for d in blocks.nonzero_offsets():
        ents = blocks.entries(d)
        shown = ", ".join(f"{idx}={v}" for idx, v in ents[:limit])
        more = f", ... ({len(ents)} total)" if len(ents) > limit else ""
        parts.append(f"offset {d}: {shown}{more}")
    return "; ".join(parts) or "zero on the interior"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_run(args):
    params = {k: getattr(args, k) for k in SUITE_FLAGS if getattr(args, k, None) is not None}
    if args.scaled:
        params["scaled"] = True
    return run_suite(args.suite, params, args.seed)


def cmd_soibelman(args):
    """One generator image at a fixed q (or in leading order), checked against the star."""
    layout = _layout(args)
    i, j = _entry(args)
    if args.mode != "leading":
        _check_q(args.q)
    alg = FRTAlgebra(args.n)
    x = alg.u(i, j)
    params = {"n": args.n, "entry": f"{i},{j}", "mode": args.mode, "cutoff": args.cutoff,
              "window": args.window, "word": ",".join(map(str, layout.word))}
    if args.mode == "leading":
        try:
            res = pi0_global(x, layout)
        except (DivergenceError, CancellationError) as e:
            return [CheckReport("soibelman", params, "fail", witness=str(e))]
        ok = res.numeric_entries == 0
        return [CheckReport("soibelman", params, status_of(ok),
                            witness=f"q->0 limit: {_summary(res.blocks)}")]
    params["q"] = args.q
    psi = Soibelman(layout, args.mode, args.q)
    op = psi(x)
    m = max(1, alg.star(x).degree())
    lhs = BlockOp.from_op(psi(alg.star(x)), m)
    rhs = BlockOp.from_op(op.adjoint(), m)
    if args.mode == "exact":
        ok = lhs.equals(rhs)
        err = None
    else:
        err = lhs.max_deviation(rhs)
        ok = err <= args.tol
    shown = BlockOp.from_op(op, m)
    return [CheckReport("soibelman", params, status_of(ok), max_error=err,
                        witness=f"star-compatible={ok}; {_summary(shown)}")]


def cmd_crystal_limit(args):
    layout = _layout(args)
    alg = FRTAlgebra(args.n)
    out = []
    for i in range(1, args.n + 2):
        for j in range(1, args.n + 2):
            x = scaled_generator(alg, i, j) if args.scaled else alg.u(i, j)
            name = ("t^%d*" % min(i - j, 0) if args.scaled and i < j else "") + f"u{i}{j}"
            params = {"n": args.n, "element": name, "mode": args.mode, "cutoff": args.cutoff,
                      "window": args.window}
            try:
                res = pi0_global(x, layout, mode=args.mode)
            except (DivergenceError, CancellationError, ArithmeticError) as e:
                out.append(CheckReport("crystal-limit", params, "fail", witness=str(e)))
                continue
            ok, err, note = res.numeric_entries == 0, None, ""
            if args.mode == "leading" and not args.scaled:
                per = pi0_per_leg(x, layout)
                agree = per.blocks.equals(res.blocks)
                ok = ok and agree and per.numeric_entries == 0
                note = f"per-leg agrees={agree}; "
            if args.mode == "numeric":
                # deviation from the exact leading-order limit
                err = res.blocks.max_deviation(pi0_global(x, layout).blocks)
                ok = err <= args.tol
            out.append(CheckReport("crystal-limit", params, status_of(ok), max_error=err,
                                   witness=note + _summary(res.blocks)))
    return out


def cmd_compare(args):
    _check_q(args.q)
    if args.n < 1:
        raise UsageError("n must be at least 1")
    c = compare_pipelines(args.n, args.q, args.cutoff, args.window, mode=args.mode, tolerance=args.tol,
                          limits=not args.no_limits)
    params = {"n": args.n, "q": args.q, "cutoff": args.cutoff, "window": args.window, "mode": args.mode}
    fails = c.failures()
    w = "; ".join(fails) if fails else (f"{len(c.fixed_q)} generators agree, "
                                        f"{len(c.limits)} limits agree")
    return [CheckReport("compare", params, status_of(c.ok), max_error=c.max_error, witness=w)]


def cmd_rep(args):
    try:
        rep = parse_rep(args.expr)
    except ValueError as e:
        raise UsageError(str(e)) from None
    r = verify_uq_relations(rep)
    wts = sorted({tuple(w) for w in rep.weights}, reverse=True)
    return [CheckReport("rep", {"expr": args.expr, "n": rep.n, "dim": rep.dim}, status_of(r.ok),
                        witness=r.witness or f"{r.checked} relations exact; weights {wts}")]


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _common(p):
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)


def _layout_flags(p, n_default=2):
    p.add_argument("--n", type=int, default=n_default)
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("--word", type=_int_list, default=None,
                   help="reduced expression of the longest Weyl element, e.g. 1,2,1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcrystal", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a named verification suite")
    p.add_argument("suite", choices=suite_names())
    p.add_argument("--n", type=int)
    p.add_argument("--power", type=int)
    p.add_argument("--q")
    p.add_argument("--omega")
    p.add_argument("--lam")
    p.add_argument("--algebra")
    p.add_argument("--order", choices=("plus-minus", "minus-plus"))
    p.add_argument("--cutoff", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--words", type=int)
    p.add_argument("--max-len", dest="max_len", type=int)
    p.add_argument("--max-exp", dest="max_exp", type=int)
    p.add_argument("--scaled", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("soibelman", help="image of one generator u_ij")
    _layout_flags(p)
    p.add_argument("--q", type=_fraction, default=Fraction(1, 10))
    p.add_argument("--entry", type=_int_list, default=(1, 2))
    p.add_argument("--mode", choices=("exact", "float", "leading"), default="float")
    p.add_argument("--tol", type=float, default=1e-12)
    _common(p)
    p.set_defaults(func=cmd_soibelman)

    p = sub.add_parser("crystal-limit", help="q -> 0 limits of the generator images")
    _layout_flags(p)
    p.add_argument("--scaled", action="store_true", help="use t^{min(i-j,0)} u_ij")
    p.add_argument("--mode", choices=("leading", "numeric"), default="leading")
    p.add_argument("--tol", type=float, default=1e-6, help="numeric mode: allowed deviation from the exact limit")
    _common(p)
    p.set_defaults(func=cmd_crystal_limit)

    p = sub.add_parser("compare", help="per-leg versus global pipeline")
    _layout_flags(p)
    p.add_argument("--q", type=_fraction, default=Fraction(1, 10))
    p.add_argument("--mode", choices=("float", "exact"), default="float")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--no-limits", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("rep", help="build a module from an expression and verify the relations")
    p.add_argument("expr")
    _common(p)
    p.set_defaults(func=cmd_rep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        reports = args.func(args)
    except UsageError as e:
        print(f"qcrystal: error: {e}", file=sys.stderr)
        return 2
    print(emit(reports, args.format))
    return 0 if all(r.passed or r.status == "skipped" for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
