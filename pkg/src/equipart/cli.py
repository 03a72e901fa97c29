"""Command-line front end.

Exit codes: 0 success, 1 a NotCertifiedByCriterion verdict under --strict
(or a failing verify suite), 2 rejected input, 3 resource limit reached.
"""

from __future__ import annotations

import argparse
import contextlib
import contextvars
import csv
import io
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from . import __version__, f2poly
from .charclass import parse as parse_bundle
from .charclass import sw_class
from .criteria import (
    certify_constrained,
    certify_orthogonal,
    certify_unconstrained,
    fairy_bread_check,
    flag_product_checks,
)
from .errors import InputError, ResourceLimitError, resource_limits
from .ideals import MonomialIdeal, coinvariant_system, orthogonal_system
from .invariants import dickson_top, iota_bundles, iota_numeric, omega, omega_cell, partition_plan
from .verify import run_checks, select

THREADS_ENV = "EQUIPART_THREADS"

EXIT_OK, EXIT_NOT_CERTIFIED, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def int_range(text: str) -> list[int]:
    """'3..10' (inclusive), a single integer, or a comma list."""
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        if lo > hi:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return int_list(text)


def map_cells(fn: Callable, args: Sequence, threads: int) -> list:
    """Evaluate fn over args, concurrently if asked; results keep the input order."""
    if threads <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(contextvars.copy_context().run, fn, *a) for a in args]
        return [f.result() for f in futures]


# -- subcommands -------------------------------------------------------------

def cmd_iota(args, out) -> int:
    if args.bundle and args.bounds:
        raise InputError("give either integer bounds or --bundle expressions, not both")
    if args.bundle:
        value = iota_bundles([parse_bundle(b) for b in args.bundle])
    elif args.bounds:
        value = iota_numeric(args.bounds)
    else:
        raise InputError("iota needs integer bounds or --bundle expressions")
    print(value, file=out)
    return EXIT_OK


def cmd_omega(args, out) -> int:
    print(omega(args.k, args.n), file=out)
    return EXIT_OK


def _iota_cell(k: int, n: int) -> int:
    return iota_numeric([n] * k)


def cmd_table(args, out) -> int:
    if not args.k or not args.n:
        raise InputError("table ranges must be nonempty")
    cell = omega_cell if args.invariant == "omega" else _iota_cell
    cells = [(k, n) for k in args.k for n in args.n]
    values = map_cells(cell, cells, args.threads)
    rows = [values[i * len(args.n):(i + 1) * len(args.n)] for i in range(len(args.k))]
    out.write(render_table(args.invariant, args.k, args.n, rows, args.format))
    return EXIT_OK


def render_table(name: str, ks: Sequence[int], ns: Sequence[int], rows: Sequence[Sequence[int]], fmt: str) -> str:
    if fmt == "json":
        payload = {"invariant": name, "n": list(ns), "rows": [{"k": k, "values": list(r)} for k, r in zip(ks, rows)]}
        return json.dumps(payload, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", *ns])
        for k, r in zip(ks, rows):
            writer.writerow([k, *r])
        return buf.getvalue()
    lines = ["| k \\ n | " + " | ".join(map(str, ns)) + " |", "|---" * (len(ns) + 1) + "|"]
    for k, r in zip(ks, rows):
        lines.append(f"| {k} | " + " | ".join(map(str, r)) + " |")
    return "\n".join(lines) + "\n"


_IDEAL_SPEC = re.compile(r"\s*(mono|J|flag)\s*\(([\d,\s]*)\)\s*$")


def parse_ideal(spec: str):
    """mono(m1,...,mk) | J(n,k) | flag(d)  ->  (arity, membership callable)."""
    m = _IDEAL_SPEC.match(spec)
    if not m:
        raise InputError(f"unknown ideal {spec!r}; use mono(m1,...), J(n,k) or flag(d)")
    kind = m.group(1)
    try:
        nums = [int(t) for t in m.group(2).replace(" ", "").split(",") if t]
    except ValueError:
        raise InputError(f"bad parameters in {spec!r}") from None
    if kind == "mono":
        return len(nums), MonomialIdeal(nums)
    if kind == "J":
        if len(nums) != 2:
            raise InputError("J takes (n,k)")
        return nums[1], orthogonal_system(nums[0], nums[1])
    if len(nums) != 1:
        raise InputError("flag takes (d)")
    return nums[0], coinvariant_system(nums[0])


def cmd_member(args, out) -> int:
    arity, ideal = parse_ideal(args.ideal)
    symbols = {f"e{k}": dickson_top(k) for k in range(1, min(arity, 4) + 1)}
    lifted = {}
    for name, p in symbols.items():
        lifted[name] = p.substitute([f2poly.F2Poly.var(i, arity) for i in range(p.nvars)])
    poly = f2poly.parse(args.poly, nvars=arity, symbols=lifted)
    if isinstance(ideal, MonomialIdeal):
        member = ideal.member(poly)
        print("member" if member else "not member", file=out)
        print(f"remainder: {ideal.truncate(poly)}", file=out)
        return EXIT_OK
    trace: list[str] | None = [] if args.trace else None
    nf = ideal.reduce(poly, trace)
    for line in trace or ():
        print(line, file=out)
    print("member" if not nf else "not member", file=out)
    print(f"normal form: {nf}", file=out)
    return EXIT_OK


def cmd_sw(args, out) -> int:
    expr = parse_bundle(args.expr)
    c = sw_class(expr)
    print(f"bundle: {expr}", file=out)
    print(f"base: {c.base}", file=out)
    print(f"dim: {c.dim}", file=out)
    for line in c.format_lines():
        print(line, file=out)
    return EXIT_OK


def cmd_certify(args, out) -> int:
    bundles = [parse_bundle(b) for b in args.bundle]
    if args.orthogonal:
        if len(bundles) != 1:
            raise InputError("--orthogonal takes exactly one bundle")
        result = certify_orthogonal(bundles[0], args.j, args.k or 1)
    elif len(bundles) > 1 or args.constrained:
        if args.k is not None and args.k != len(bundles):
            raise InputError(f"--k {args.k} disagrees with {len(bundles)} bundles")
        result = certify_constrained(bundles, args.j)
    else:
        result = certify_unconstrained(bundles[0], args.j, args.k or 1)
    print(result, file=out)
    return EXIT_NOT_CERTIFIED if args.strict and not result.certified else EXIT_OK


def _bool(v: bool) -> str:
    return "true" if v else "false"


def cmd_fairy(args, out) -> int:
    print(_bool(fairy_bread_check(args.d, args.k, args.perm)), file=out)
    return EXIT_OK


def cmd_flagcheck(args, out) -> int:
    res = flag_product_checks(args.d, args.dims)
    print(f"dual_classes: {_bool(res.dual_classes)}", file=out)
    print(f"quotient_euler: {_bool(res.quotient_euler)}", file=out)
    print(f"successive_euler: {_bool(res.successive_euler)}", file=out)
    return EXIT_OK


def cmd_plan(args, out) -> int:
    plan = partition_plan(args.n, args.j, args.degree)
    print(f"n={plan.n} j={plan.j} degree={plan.degree}", file=out)
    print("i,r,d,block,cumulative", file=out)
    for s in plan.steps:
        print(f"{s.index},{s.r},{s.degree},{s.block},{s.cumulative_degree}", file=out)
    print(f"k={plan.k} budget={plan.budget}", file=out)
    print(f"C'_n={plan.constant_prime:.12g} C_n={plan.constant:.12g}", file=out)
    print(f"budget bound d_k^(n-1) < C'_n 2^k j: {_bool(plan.budget_bound_holds)}", file=out)
    print(f"fraction 1/2^k={plan.guaranteed_fraction:.12g} < C_n j/d^(n-1)={plan.fraction_bound:.12g}: "
          f"{_bool(plan.fraction_bound_holds)}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    try:
        checks = select(args.suite)
    except KeyError:
        raise InputError(f"unknown suite {args.suite!r}") from None
    failed = 0
    for name, problems in run_checks(checks, args.threads):
        if problems:
            failed += 1
            print(f"FAIL {name}: {len(problems)} violation(s)", file=out)
            for p in problems[:20]:
                print(f"  {p}", file=out)
        else:
            print(f"PASS {name}", file=out)
    print(f"{len(checks) - failed}/{len(checks)} checks passed", file=out)
    return EXIT_OK if not failed else EXIT_NOT_CERTIFIED


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="equipart", description="Mod-2 cohomology criteria for mass equipartitions.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_limits(p, None)
    # The same flags are accepted after the subcommand; SUPPRESS keeps them from clobbering earlier values.
    common = argparse.ArgumentParser(add_help=False)
    _add_limits(common, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help, parents=[common])

    s = add("iota", help="iota_k of integer bounds or of bundles")
    s.add_argument("bounds", nargs="*", type=int)
    s.add_argument("--bundle", action="append", default=[], help="bundle expression, repeat for k > 1")
    s.set_defaults(func=cmd_iota)

    s = add("omega", help="omega_k(n)")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_omega)

    s = add("table", help="a table of iota_k(n,...,n) or omega_k(n)")
    s.add_argument("invariant", choices=["iota", "omega"])
    s.add_argument("--k", type=int_list, required=True, help="comma list, e.g. 2,3,4")
    s.add_argument("--n", type=int_range, required=True, help="range a..b or comma list")
    s.add_argument("--format", choices=["markdown", "csv", "json"], default="markdown")
    s.set_defaults(func=cmd_table)

    s = add("member", help="ideal membership and normal form")
    s.add_argument("--ideal", required=True, help="mono(m1,...,mk) | J(n,k) | flag(d)")
    s.add_argument("--poly", required=True, help="polynomial in x1..xk; e1..e4 denote Dickson classes")
    s.add_argument("--trace", action="store_true", help="print one line per rewrite")
    s.set_defaults(func=cmd_member)

    s = add("sw", help="total Stiefel-Whitney class of a bundle expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_sw)

    s = add("certify", help="decide a certification criterion")
    s.add_argument("--bundle", action="append", required=True)
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--orthogonal", action="store_true")
    s.add_argument("--constrained", action="store_true", help="treat the bundles as E(1)..E(k)")
    s.add_argument("--strict", action="store_true", help="exit 1 unless certified")
    s.set_defaults(func=cmd_certify)

    s = add("fairy", help="nonvanishing of the flag monomial for a permutation")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--perm", type=int_list, required=True)
    s.set_defaults(func=cmd_fairy)

    s = add("flagcheck", help="Euler-class products over a partial flag manifold")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--dims", type=int_list, required=True)
    s.set_defaults(func=cmd_flagcheck)

    s = add("plan", help="polynomial degree plan for j measures in R^n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--degree", type=int, required=True)
    s.set_defaults(func=cmd_plan)

    s = add("verify", help="run property suites")
    s.add_argument("--suite", default="all", choices=["all", "props", "table", "flag"])
    s.set_defaults(func=cmd_verify)
    return p


def _add_limits(p: argparse.ArgumentParser, default) -> None:
    p.add_argument("--max-terms", type=int, default=default, help="abort when a polynomial exceeds this many terms")
    p.add_argument("--max-degree", type=int, default=default, help="abort above this total degree")
    p.add_argument("--max-flag-rank", type=int, default=default, help="largest flag algebra rank (d!) allowed")
    p.add_argument("--threads", type=int, default=default,
                   help=f"worker threads for tables and verify (default ${THREADS_ENV} or 1)")


def _threads(value: int | None) -> int:
    if value is None:
        env = os.environ.get(THREADS_ENV)
        if env:
            try:
                value = int(env)
            except ValueError:
                raise InputError(f"${THREADS_ENV} must be an integer, got {env!r}") from None
        else:
            value = 1
    if value < 1:
        raise InputError("--threads must be positive")
    return value


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        # argparse writes usage and --help straight to the process streams.
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.threads = _threads(args.threads)
        with resource_limits(max_terms=args.max_terms, max_degree=args.max_degree,
                             max_flag_rank=args.max_flag_rank):
            return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=err)
        return EXIT_RESOURCE


def main() -> None:
    sys.exit(run())
