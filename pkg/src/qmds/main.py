#!/usr/bin/env python3
"""
qmds - Hermitian self-orthogonal GRS codes and quantum MDS parameters.

Exit codes: 0 success, 1 internal error, 2 usage or parameter error, 3 verification failure.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

import sympy

from qmds.config import resolve_budget, resolve_threads
from qmds.constructions.params import THEOREMS
from qmds.enumeration import (
    TABLE_FORMATS,
    THRESHOLD_MODES,
    audit_examples,
    best_codes,
    check_table1,
    emit_table,
    enumerate_params,
    threshold_counts,
)
from qmds.gf import FieldError
from qmds.grs import BudgetExceededError, CodeError, load_code, save_code
from qmds.pipeline import run_construction
from qmds.verify import LEVELS, verify_code

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_VERIFY = 3


def _levels(args) -> List[str]:
    levels = list(args.level or ["criterion"])
    if args.brute_distance:
        levels.append("brute_distance")
    if args.lemma_ranges:
        levels.append("lemma_ranges")
    return list(dict.fromkeys(levels))


def _default_code_path(args, d: int) -> str:
    return f"qmds_{args.theorem}_p{args.p}e{args.e}_s{args.s}_t{args.t}_h{args.h}_r{args.r}_d{d}.json"


def cmd_construct(args) -> int:
    """Build a code, write it with its provenance and print the quantum triple."""
    state = run_construction(
        args.p, args.e, args.theorem, args.s, args.t, args.h, args.r,
        d=args.d,
        verify=not args.no_verify,
        levels=_levels(args),
        budget=args.budget,
        threads=args.threads,
        debug=args.debug,
    )
    if state.get("error") and state.get("construction") is None:
        for message in state.get("diagnostics") or [state["error"]]:
            print(f"❌ {message}")
        return state.get("exit_code") or EXIT_USAGE

    construction = state["construction"]
    output = args.output or _default_code_path(args, construction.d)
    save_code(construction.code, output, construction.provenance)
    print(f"✅ {construction.params.label()}: wrote {output}")
    print(str(construction.quantum))

    if state.get("error"):
        print(f"❌ {state['error']}")
        return state.get("exit_code") or EXIT_USAGE
    report = state.get("report")
    if report is not None:
        print(report.render())
        if args.report:
            Path(args.report).write_text(report.to_json(include_timings=args.timings))
        return EXIT_OK if report.passed else EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args) -> int:
    """Verify a code file and optionally write the JSON report."""
    try:
        code, provenance = load_code(args.input)
    except (OSError, CodeError, FieldError) as e:
        print(f"❌ Cannot read {args.input}: {e}")
        return EXIT_USAGE

    try:
        report = verify_code(code, _levels(args), provenance=provenance, budget=args.budget, threads=args.threads)
    except (BudgetExceededError, CodeError) as e:
        print(f"❌ {e}")
        return EXIT_USAGE

    print(report.render())
    if args.output:
        Path(args.output).write_text(report.to_json(include_timings=args.timings))
        print(f"📋 Report written to {args.output}")
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_enumerate(args) -> int:
    """Sweep all parameter tuples for q and emit the table, an audit or the q = 37 check."""
    q = args.p ** args.e

    if args.audit_example:
        audits = audit_examples(q)
        if not audits:
            print(f"⚠️  No worked example applies to q = {q}")
        for audit in audits:
            print(audit.render())
        return EXIT_OK

    if args.check_table1 and q != 37:
        print(f"❌ --check-table1 applies to q = 37 only, got q = {q}")
        return EXIT_USAGE

    records = enumerate_params(q, verify=args.verify, threads=args.threads, debug=args.debug)

    if args.check_table1:
        matches = check_table1(records)
        misses = 0
        for match in matches:
            triple = f"[[{match.n},{match.k},{match.dmin}]]_37"
            if match.found:
                rec = match.record
                print(f"✅ {triple} via {rec.theorem.upper()} (s,t,h,r)=({rec.s},{rec.t},{rec.h},{rec.r})")
            else:
                misses += 1
                print(f"❌ {triple} not realised")
        print(f"📋 {len(matches) - misses}/{len(matches)} rows realised")
        return EXIT_VERIFY if misses else EXIT_OK

    if args.verify and not all(rec.verified for rec in records):
        failed = [rec for rec in records if not rec.verified]
        for rec in failed:
            print(f"❌ {rec.theorem.upper()} (s,t,h,r)=({rec.s},{rec.t},{rec.h},{rec.r}) failed the criterion")
        return EXIT_VERIFY

    if args.threshold:
        records = [best.records[0] for best in best_codes(records, args.threshold)]

    document = emit_table(records, args.format)
    if args.output:
        Path(args.output).write_text(document)
        print(f"✅ Wrote {len(records)} records for q = {q} to {args.output}")
        summary = sys.stdout
    else:
        sys.stdout.write(document)
        # stdout carries the table only
        summary = sys.stderr
    for mode, counts in threshold_counts(records, q).items():
        print(f"📋 {mode}: {counts['pairs']} (n, d+1) pairs over {counts['lengths']} lengths", file=summary)
    return EXIT_OK


def _add_field_args(parser: argparse.ArgumentParser):
    parser.add_argument("--p", type=int, required=True, help="Characteristic p (prime)")
    parser.add_argument("--e", type=int, default=1, help="Extension degree, q = p^e")


def _add_check_args(parser: argparse.ArgumentParser):
    parser.add_argument("--level", action="append", choices=LEVELS, help="Verification level (repeatable)")
    parser.add_argument("--brute-distance", action="store_true", help="Enumerate all codewords for the minimum distance")
    parser.add_argument("--lemma-ranges", action="store_true", help="Check the component identities on their full ranges")
    parser.add_argument("--budget", type=int, help="Codeword budget for --brute-distance (env QMDS_BUDGET)")
    parser.add_argument("--timings", action="store_true", help="Include per-check timings in the JSON report")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--debug", action="store_true", help="Enable debug mode")
    common.add_argument("--threads", type=int, help="Worker threads (default: available cores)")

    parser = argparse.ArgumentParser(description="qmds - quantum MDS codes from Hermitian self-orthogonal GRS codes")
    sub = parser.add_subparsers(dest="command", required=True)

    construct = sub.add_parser("construct", parents=[common], help="Build a code from a parameter tuple")
    _add_field_args(construct)
    construct.add_argument("--theorem", choices=THEOREMS, required=True)
    for name in ("s", "t", "h", "r"):
        construct.add_argument(f"--{name}", type=int, required=True)
    construct.add_argument("--d", type=int, help="Code dimension (default: d_max)")
    construct.add_argument("--output", help="Code JSON path")
    construct.add_argument("--report", help="Verification report JSON path")
    construct.add_argument("--no-verify", action="store_true", help="Skip verification")
    _add_check_args(construct)
    construct.set_defaults(handler=cmd_construct)

    verify = sub.add_parser("verify", parents=[common], help="Verify a code JSON file")
    verify.add_argument("--input", required=True, help="Code JSON path")
    verify.add_argument("--output", help="Report JSON path")
    _add_check_args(verify)
    verify.set_defaults(handler=cmd_verify)

    enum = sub.add_parser("enumerate", parents=[common], help="Sweep every valid parameter tuple for q")
    _add_field_args(enum)
    enum.add_argument("--format", choices=TABLE_FORMATS, default="csv")
    enum.add_argument("--output", help="Table path (default: stdout)")
    enum.add_argument("--threshold", choices=THRESHOLD_MODES, help="Keep the best dmin per n above q/2 + 1")
    enum.add_argument("--verify", action="store_true", help="Build and check every record at d_max")
    mode = enum.add_mutually_exclusive_group()
    mode.add_argument("--check-table1", action="store_true", help="Check the 18 published q = 37 rows")
    mode.add_argument("--audit-example", action="store_true", help="Audit the worked examples for q")
    enum.set_defaults(handler=cmd_enumerate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the qmds command line."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if hasattr(args, "p") and (not sympy.isprime(args.p) or args.e < 1):
        print(f"❌ q = p^e needs a prime p and e >= 1, got p={args.p}, e={args.e}")
        return EXIT_USAGE
    try:
        args.threads = resolve_threads(args.threads)
        if hasattr(args, "budget"):
            args.budget = resolve_budget(args.budget)
    except ValueError as e:
        print(f"❌ {e}")
        return EXIT_USAGE

    try:
        return args.handler(args)
    except (FieldError, CodeError) as e:
        print(f"❌ Error: {e}")
        return EXIT_USAGE
    except Exception as e:
        print(f"❌ Error: {str(e)}")
        if args.debug:
            import traceback
            traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
