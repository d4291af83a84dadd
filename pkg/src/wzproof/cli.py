"""Command-line interface.

Exit status: 0 success, 1 mathematical failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import checks
from .discovery import default_ansatz, discover
from .dsl import parse_cert, term_from_source
from .errors import NoCertificate, WZError
from .ratfunc import render_rf
from .wz import (
    CB_CERT_SRC,
    CB_TERM_SRC,
    WZPair,
    build_proof_trace,
    telescope_check,
    telescope_check_numeric,
    verify_pair,
    verify_pair_numeric,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_RATIONAL_RE = re.compile(r"^\s*-?\d+\s*(/\s*\d+\s*)?$")


class InputError(Exception):
    """Bad user input discovered after argument parsing."""


def nonnegative_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be nonnegative")
    return value


def rational(text):
    if not _RATIONAL_RE.match(text):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational literal p/q or an integer")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"{text!r} has a zero denominator") from None


_VALUE_OPTIONS = {"--term", "--cert", "--x", "--seed"}


def _glue_negative_values(argv):
    """Turn ``--cert -k/(n+1)`` into ``--cert=-k/(n+1)``.

    argparse would otherwise read a leading '-' as the start of an option;
    certificates and rational literals often begin with a minus sign.
    """
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wzproof",
        description="Verify WZ pairs and replay the Chaundy-Bullard identity proof exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add_json(p):
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")

    p = sub.add_parser("verify", help="check F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k)")
    p.add_argument("--term", required=True, help="hypergeometric term, e.g. 'binom(n+k,k)*x^k'")
    p.add_argument("--cert", required=True, help="rational certificate R(n,k), e.g. '-k/(n+1)'")
    p.add_argument("--samples", type=nonnegative_int, default=0,
                   help="also evaluate at this many random rational points")
    p.add_argument("--seed", type=int, default=0)
    add_json(p)

    p = sub.add_parser("discover", help="search for a certificate by linear ansatz")
    p.add_argument("--term", required=True)
    p.add_argument("--deg", type=nonnegative_int, default=2, help="numerator degree bound")
    p.add_argument("--span", type=nonnegative_int, default=0, help="k-shift span of the denominator")
    add_json(p)

    p = sub.add_parser("telescope", help="compare both sides of the telescoping sum")
    p.add_argument("--term", default=CB_TERM_SRC)
    p.add_argument("--cert", default=CB_CERT_SRC)
    p.add_argument("--m", type=nonnegative_int, required=True)
    p.add_argument("--n", type=nonnegative_int, required=True)
    p.add_argument("--x", type=rational, default=None, help="evaluate at this rational x")
    add_json(p)

    p = sub.add_parser("prove", help="replay the full Chaundy-Bullard proof for (m, n)")
    p.add_argument("--m", type=nonnegative_int, required=True)
    p.add_argument("--n", type=nonnegative_int, required=True)
    p.add_argument("--trace", metavar="PATH", default=None, help="write the JSON proof trace here")
    add_json(p)

    p = sub.add_parser("selftest", help="run the property suites and (m, n) grids")
    p.add_argument("--max", dest="max_grid", type=nonnegative_int, default=12,
                   help="grid bound for m and n")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=nonnegative_int, default=200,
                   help="random cases per kernel suite")
    p.add_argument("--jobs", type=nonnegative_int, default=1,
                   help="worker processes for the grids (0 = one per CPU)")
    add_json(p)
    return parser


def _emit_json(doc, out):
    out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def _load_term(src):
    try:
        return term_from_source(src)
    except WZError as exc:
        raise InputError(f"term {src!r}: {exc}") from None


def _load_cert(src):
    try:
        return parse_cert(src)
    except WZError as exc:
        raise InputError(f"certificate {src!r}: {exc}") from None


def cmd_verify(args, out):
    f = _load_term(args.term)
    r = _load_cert(args.cert)
    residual = verify_pair(f, r)
    ok = residual.is_zero()
    numeric = None
    if args.samples:
        numeric = verify_pair_numeric(f, r, samples=args.samples, seed=args.seed)
        ok = ok and numeric.passed
    if args.json:
        doc = {
            "command": "verify",
            "term_src": args.term,
            "cert_src": args.cert,
            "residual": render_rf(residual),
            "is_wz_pair": residual.is_zero(),
        }
        if numeric is not None:
            doc["numeric"] = {
                "passed": numeric.passed,
                "samples": numeric.samples,
                "seed": args.seed,
                "witness": None if numeric.witness is None
                else {k: str(v) for k, v in numeric.witness.items()},
            }
        _emit_json(doc, out)
    else:
        out.write(f"term:        {args.term}\n")
        out.write(f"certificate: {args.cert}\n")
        out.write(f"residual:    {render_rf(residual)}\n")
        if numeric is not None:
            if numeric.passed:
                out.write(f"numeric:     {numeric.samples} random points, all zero (seed {args.seed})\n")
            else:
                w = numeric.witness
                out.write(f"numeric:     nonzero value {w['value']} at n={w['n']}, k={w['k']}, x={w['x']}\n")
        out.write("verdict:     " + ("WZ pair\n" if ok else "NOT a WZ pair\n"))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_discover(args, out):
    f = _load_term(args.term)
    ansatz = default_ansatz(f, args.deg, args.span)
    try:
        r = discover(f, ansatz)
    except NoCertificate as exc:
        if args.json:
            _emit_json({"command": "discover", "term_src": args.term, "deg": args.deg,
                        "span": args.span, "denominator": str(ansatz.denominator),
                        "certificate": None, "message": str(exc)}, out)
        else:
            out.write(f"no certificate found: {exc}\n")
        return EXIT_FAIL
    if args.json:
        _emit_json({"command": "discover", "term_src": args.term, "deg": args.deg,
                    "span": args.span, "denominator": str(ansatz.denominator),
                    "certificate": render_rf(r)}, out)
    else:
        out.write(f"term:        {args.term}\n")
        out.write(f"ansatz:      numerator degree <= {ansatz.degree_bound} over {ansatz.denominator}\n")
        out.write(f"certificate: {render_rf(r)}\n")
    return EXIT_OK


def cmd_telescope(args, out):
    pair = WZPair(_load_term(args.term), _load_cert(args.cert), args.cert)
    if args.x is None:
        res = telescope_check(pair, args.m, args.n)
    else:
        res = telescope_check_numeric(pair, args.m, args.n, args.x)
    if args.json:
        _emit_json({"command": "telescope", "term_src": args.term, "cert_src": args.cert,
                    "m": args.m, "n": args.n, "x": None if args.x is None else str(args.x),
                    "lhs": str(res.lhs), "rhs": str(res.rhs), "holds": res.holds}, out)
    else:
        where = "" if args.x is None else f" at x = {args.x}"
        out.write(f"m = {args.m}, n = {args.n}{where}\n")
        out.write(f"lhs: {res.lhs}\n")
        out.write(f"rhs: {res.rhs}\n")
        out.write("lhs = rhs\n" if res.holds else "lhs != rhs\n")
    return EXIT_OK if res.holds else EXIT_FAIL


def cmd_prove(args, out, err):
    trace = build_proof_trace(args.m, args.n)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(trace.to_json() + "\n")
    if args.json:
        out.write(trace.to_json() + "\n")
    else:
        doc = trace.to_dict()
        out.write(f"Chaundy-Bullard identity, m = {trace.m}, n = {trace.n}\n")
        out.write(f"  pair:            F = {trace.term_src},  R = {trace.cert_src}\n")
        out.write(f"  WZ residual:     {doc['wz_residual']}\n")
        out.write(f"  G(j,0) = 0:      {doc['boundary']}\n")
        out.write(f"  initial row:     {doc['initial_row']['got']}  (expected {doc['initial_row']['expected']})\n")
        out.write(f"  telescoping:     {'lhs = rhs' if 'telescope' not in dict(trace.failures) else 'FAILED'}\n")
        out.write(f"  partial sum:     {'matches closed form' if 'partial_sum' not in dict(trace.failures) else 'FAILED'}\n")
        out.write(f"  final identity:  {doc['final_identity']}\n")
        out.write("  verdict:         " + ("proof complete\n" if trace.valid else "INVALID\n"))
    for step, message in trace.failures:
        err.write(f"step {step} failed: {message}\n")
    return EXIT_OK if trace.valid else EXIT_FAIL


def run_selftest(max_grid, seed, cases, jobs):
    """All suites, in order; returns a list of SuiteResult."""
    results = []
    if cases:
        for suite in checks.KERNEL_SUITES:
            results.append(suite(cases, seed))
    small = min(max_grid, 8)
    results.append(checks.path_independence(small))
    results.append(checks.oracle_equivalence(max_grid))
    results.append(checks.raw_wz_equation(min(max_grid, 10)))
    results.append(checks.initial_row(max_grid))
    results.append(checks.pair_checks())
    executor = None
    if jobs != 1:
        executor = ProcessPoolExecutor(max_workers=jobs or None)
    try:
        for kind in ("telescope", "partial_sum", "identity", "symmetry"):
            results.append(checks.grid(kind, max_grid, executor))
    finally:
        if executor is not None:
            executor.shutdown()
    return results


def cmd_selftest(args, out, err):
    start = time.perf_counter()
    results = run_selftest(args.max_grid, args.seed, args.cases, args.jobs)
    elapsed = time.perf_counter() - start
    ok = all(r.ok for r in results)
    identity = next(r for r in results if r.name.startswith("Chaundy-Bullard"))
    if args.json:
        _emit_json({
            "command": "selftest",
            "max_grid": args.max_grid,
            "seed": args.seed,
            "suites": [{"name": r.name, "cases": r.cases, "passed": r.passed,
                        "failed": len(r.failures)} for r in results],
            "identity_instances": identity.cases,
            "ok": ok,
        }, out)
    else:
        width = max(len(r.name) for r in results)
        out.write(f"{'suite'.ljust(width)}  {'cases':>6}  {'pass':>6}  {'fail':>5}  {'time':>8}\n")
        for r in results:
            out.write(f"{r.name.ljust(width)}  {r.cases:>6}  {r.passed:>6}  {len(r.failures):>5}  "
                      f"{r.seconds:>7.2f}s\n")
        out.write(f"seed {args.seed}; {identity.cases} identity instances; total {elapsed:.2f}s; "
                  + ("all passed\n" if ok else "FAILURES\n"))
    for r in results:
        for detail in r.failures[:20]:
            err.write(f"{r.name}: failing case {detail}\n")
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(list(sys.argv[1:] if argv is None else argv)))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.command == "verify":
            return cmd_verify(args, out)
        if args.command == "discover":
            return cmd_discover(args, out)
        if args.command == "telescope":
            return cmd_telescope(args, out)
        if args.command == "prove":
            return cmd_prove(args, out, err)
        return cmd_selftest(args, out, err)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except WZError as exc:
        err.write(f"failure: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
