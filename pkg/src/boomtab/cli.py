"""Command-line surface.

Exit codes: 0 success, 1 verification mismatch, 2 usage error,
3 hypothesis/configuration error.  Output is byte-deterministic for
fixed flags and seed; BOOMTAB_THREADS is a worker-count hint only and
never changes results.
"""

from __future__ import annotations

import argparse
import sys

from . import closed_form as cf
from . import reference_tables, tables, verify
from .field import FieldError, make_field
from .kernels import BACKEND
from .vecfun import VecFunError, from_family

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_HYPOTHESIS = 3


def _add_field_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="field degree (2..20)")
    p.add_argument("--modulus", type=lambda v: int(v, 16), default=None,
                   help="irreducible modulus as hex, default per-degree table")
    p.add_argument("--generator", type=lambda v: int(v, 16), default=None,
                   help="generator element as hex (must be primitive)")


def _resolve(args):
    ctx = make_field(args.n, args.modulus, args.generator)
    fun = from_family(ctx, args.sbox)
    return ctx, fun


def cmd_entry(args) -> int:
    ctx, fun = _resolve(args)
    kind = tables.check_kind(args.kind)
    idx = [ctx.element_from_text(tok) for tok in args.indices.split(",")]
    if len(idx) != tables.ARITY[kind]:
        print(f"error: {kind} takes {tables.ARITY[kind]} indices, got {len(idx)}",
              file=sys.stderr)
        return EXIT_USAGE
    if args.method in ("brute", "both"):
        brute = tables.entry(fun, kind, idx, pair_counting=args.pair_counting)
        print(f"brute: {brute}")
    if args.method in ("closed", "both"):
        closed = cf.closed_entry(fun, kind, idx)
        print(f"closed: {closed}")
    if args.method == "both":
        verdict = "MATCH" if brute == closed else "MISMATCH"
        print(verdict)
        return EXIT_OK if brute == closed else EXIT_MISMATCH
    return EXIT_OK


def cmd_spectrum(args) -> int:
    ctx, fun = _resolve(args)
    kind = tables.check_kind(args.kind)
    sample = None if args.full else args.sample
    if sample is None and not args.full:
        print("error: choose --full or --sample N", file=sys.stderr)
        return EXIT_USAGE
    spec = tables.spectrum(fun, kind, domain_filter=args.filter,
                           sample=sample, seed=args.seed)
    print(f"# {kind} spectrum n={ctx.n} sbox={args.sbox} "
          f"domain={spec.swept_domain}")
    for v in sorted(spec.histogram):
        print(f"{v} {spec.histogram[v]}")
    print(f"max_nontrivial: {spec.max_nontrivial}")
    if args.out:
        if args.out.endswith(".json"):
            tables.export_spectrum_json(args.out, fun, spec)
        elif args.out.endswith(".csv"):
            tables.export_spectrum_csv(args.out, spec)
        else:
            print("error: --out must end in .csv or .json", file=sys.stderr)
            return EXIT_USAGE
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    params = {}
    if args.params:
        for tok in args.params.split(","):
            key, _, val = tok.partition("=")
            params[key.strip()] = int(val)
    budget = args.budget
    samples = args.samples
    if budget.startswith("sample:"):
        samples = int(budget.split(":", 1)[1])
        budget = "sample"
    checks = verify.run_suite(args.suite, n=args.n, params=params,
                              budget=budget, samples=samples,
                              seed=args.seed, sbox=args.sbox)
    failed = 0
    for check in checks:
        print(check.line())
        failed += 0 if check.passed else 1
    print(f"# {len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_MISMATCH


def cmd_find_representation(args) -> int:
    res = reference_tables.find_representation(args.table, args.n,
                                               time_budget=args.time_budget)
    print(res.summary())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="boomtab",
        description="Boomerang connectivity tables (DDT/BCT/FBCT/DD/UBCT/LBCT/"
                    "EBCT/DBCT) over GF(2^n), with closed-form oracles "
                    f"[kernel backend: {BACKEND}]",
        epilog="exit codes: 0 success; 1 verification mismatch (including "
               "--method both disagreement); 2 usage error (bad flags, index "
               "arity, unknown kind); 3 hypothesis/configuration error "
               "(closed form outside its stated hypotheses, sweep over "
               "budget). BOOMTAB_THREADS hints the sweep worker count and "
               "never changes results.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entry", help="one table entry, brute and/or closed form")
    _add_field_args(p)
    p.add_argument("--sbox", required=True,
                   help="power:<d> | gold:<s> | kasami:<s> | bracken:<s> | "
                        "inverse | poly:<c0,c1,...> | lut:@<path> | gold-ccz5")
    p.add_argument("--kind", required=True, help="|".join(tables.KINDS))
    p.add_argument("--indices", required=True,
                   help="comma list; each index is decimal, 0x-hex, or g^k")
    p.add_argument("--method", choices=("brute", "closed", "both"),
                   default="brute")
    p.add_argument("--pair-counting", action="store_true",
                   help="UBCT: count (X,Y) pairs instead of distinct X "
                        "(experimentation only; excluded from invariants)")
    p.set_defaults(fn=cmd_entry)

    p = sub.add_parser("spectrum", help="value histogram over the index space")
    _add_field_args(p)
    p.add_argument("--sbox", required=True)
    p.add_argument("--kind", required=True)
    p.add_argument("--filter", choices=("all", "nonzero"), default="all")
    p.add_argument("--full", action="store_true")
    p.add_argument("--sample", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write .csv or .json")
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("verify", help="closed-form vs brute-force suites")
    p.add_argument("--suite", required=True,
                   choices=("gold", "kasami", "bracken", "inverse", "delta",
                            "apn", "equiv", "relations", "all"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--params", default=None, help="e.g. s=2 or s=2,count=10")
    p.add_argument("--budget", default="full", help="full or sample:<N>")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sbox", default=None,
                   help="relations suite: check this sbox instead of the battery")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("find-representation",
                       help="search (modulus, generator) pairs reproducing a "
                            "published table block")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--table", required=True,
                   choices=reference_tables.BLOCK_NAMES)
    p.add_argument("--time-budget", type=float, default=60.0)
    p.set_defaults(fn=cmd_find_representation)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (cf.HypothesisError, tables.BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (FieldError, VecFunError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
