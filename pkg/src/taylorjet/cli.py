"""The deriv command line: eval | check | bench.

Exit codes: 0 success, 2 expression or input parse error (with a caret),
3 numeric error (pole, domain, overflow), 4 failed check.  Report bodies
are deterministic for identical inputs; wall-time lines are the only
nondeterministic part and are excluded from that guarantee.  The JSON
schemas are documented in docs/cli.md.
"""

import argparse
import json
import math
import sys
import time
import warnings

from ._kernels import active_backend
from .errors import ConditioningWarning, ParseError, TaylorJetError
from .evaluate import eval_jet
from .expr import parse_text
from .jet import derivatives
from .oracle import (
    FD_MAX_ORDER,
    SYMBOLIC_MAX_ORDER,
    default_corpus_path,
    deviation_ok,
    finite_difference,
    load_corpus,
    run_case,
    symbolic_derivatives_upto,
)
from . import bench as benchmod

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NUMERIC = 3
EXIT_CHECK = 4

_SYM_CHECK_TOL = 1e-9
_FD_CHECK_TOL = 1e-4


def _human(x):
    return f"{x:.6g}"


def _print_caret(expr, err, out):
    print(f"error: {err}", file=out)
    print(f"    {expr}", file=out)
    print("    " + " " * err.position + "^", file=out)


def _parse_expr(text, out):
    try:
        return parse_text(text)
    except ParseError as err:
        _print_caret(text, err, out)
        return None


def _json_float(x):
    # keep the JSON strictly parseable: NaN/inf become null
    return x if x is not None and math.isfinite(x) else None


def cmd_eval(args, out=sys.stdout, err_out=sys.stderr):
    tree = _parse_expr(args.expr, err_out)
    if tree is None:
        return EXIT_PARSE
    t0 = time.perf_counter()
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", ConditioningWarning)
            jet = eval_jet(
                tree,
                args.at,
                args.order,
                method=args.method,
                compensated=args.compensated,
            )
            values = derivatives(jet)
    except TaylorJetError as err:
        print(f"error: {err}", file=err_out)
        return EXIT_NUMERIC
    wall_ms = 1e3 * (time.perf_counter() - t0)
    for w in caught:
        if issubclass(w.category, ConditioningWarning):
            print(f"warning: {w.message}", file=err_out)

    checks, check_failed = _run_eval_checks(args, tree, values, err_out)

    if args.json:
        payload = {
            "expr": args.expr,
            "x0": args.at,
            "order": args.order,
            "method": args.method,
            "compensated": args.compensated,
            "rows": [
                {"k": k, "derivative": float(values[k]), "coefficient": float(c)}
                for k, c in enumerate(jet.coeffs)
            ],
            "checks": checks,
            "wall_time_ms": wall_ms,
        }
        print(json.dumps(payload), file=out)
    else:
        print(f"expr:   {args.expr}", file=out)
        print(f"point:  {_human(args.at)}", file=out)
        print(f"order:  {args.order}", file=out)
        print(f"method: {args.method}", file=out)
        print(f"{'k':>4}  {'derivative':>14}  {'coefficient':>14}", file=out)
        for k, c in enumerate(jet.coeffs):
            print(
                f"{k:>4}  {_human(values[k]):>14}  {_human(float(c)):>14}",
                file=out,
            )
        if checks is not None:
            print("checks:", file=out)
            print(
                f"{'k':>4}  {'src':>4}  {'oracle':>14}  {'delta':>10}  status",
                file=out,
            )
            for row in checks:
                status = "ok" if row["pass"] else "MISMATCH"
                print(
                    f"{row['k']:>4}  {row['source']:>4}  "
                    f"{_human(row['oracle']):>14}  "
                    f"{_human(row['delta_abs']):>10}  {status}",
                    file=out,
                )
        print(f"wall time: {wall_ms:.3f} ms", file=out)

    if check_failed:
        print("check failed: computed values disagree with the oracle",
              file=err_out)
        return EXIT_CHECK
    return EXIT_OK


def _run_eval_checks(args, tree, values, err_out):
    """Compare the derivative table against the requested oracles.

    Returns (rows-or-None, failed).  Symbolic checks cover orders up to
    12, finite differences orders 1..4; checks beyond those caps are
    skipped silently (documented in docs/cli.md).
    """
    if not args.check:
        return None, False
    rows = []
    failed = False
    try:
        if args.check in ("sym", "all"):
            kmax = min(args.order, SYMBOLIC_MAX_ORDER)
            oracle = symbolic_derivatives_upto(tree, kmax, args.at)
            for k in range(kmax + 1):
                ok = deviation_ok(values[k], oracle[k], _SYM_CHECK_TOL)
                rows.append(_check_row(k, values[k], oracle[k], "sym", ok))
                failed |= not ok
        if args.check in ("fd", "all"):
            for k in range(1, min(args.order, FD_MAX_ORDER) + 1):
                approx = finite_difference(tree, k, args.at)
                ok = abs(values[k] - approx) <= max(
                    _FD_CHECK_TOL * abs(approx), _FD_CHECK_TOL
                )
                rows.append(_check_row(k, values[k], approx, "fd", ok))
                failed |= not ok
    except TaylorJetError as err:
        print(f"error: oracle evaluation failed: {err}", file=err_out)
        return rows, True
    return rows, failed


def _check_row(k, computed, oracle, source, ok):
    delta = abs(computed - oracle)
    rel = delta / abs(oracle) if oracle else None
    return {
        "k": k,
        "oracle": float(oracle),
        "delta_abs": float(delta),
        "delta_rel": _json_float(rel),
        "source": source,
        "pass": bool(ok),
    }


def cmd_check(args, out=sys.stdout, err_out=sys.stderr):
    path = args.corpus or default_corpus_path()
    try:
        cases = load_corpus(path)
    except OSError as err:
        print(f"error: cannot read corpus: {err}", file=err_out)
        return EXIT_PARSE
    except ValueError as err:
        print(f"error: {err}", file=err_out)
        return EXIT_PARSE

    verdicts = [run_case(case, method=args.method) for case in cases]
    failed = sum(not v.passed for v in verdicts)

    if args.json:
        payload = {
            "corpus": path,
            "method": args.method,
            "cases": [
                {
                    "case_id": v.case_id,
                    "expr": case.expr_text,
                    "x0": case.x0,
                    "order": case.order,
                    "pass": v.passed,
                    "worst_rel": _json_float(v.worst_rel),
                    "error": v.error,
                }
                for case, v in zip(cases, verdicts)
            ],
            "summary": {
                "total": len(cases),
                "passed": len(cases) - failed,
                "failed": failed,
            },
        }
        print(json.dumps(payload), file=out)
    else:
        for case, v in zip(cases, verdicts):
            status = "PASS" if v.passed else "FAIL"
            detail = (
                f"error: {v.error}" if v.error else f"worst_rel={v.worst_rel:.3e}"
            )
            print(
                f"{status} case {v.case_id:>3}  order {case.order:>2}  "
                f"{case.expr_text}  [{detail}]",
                file=out,
            )
        print(
            f"{len(cases)} cases: {len(cases) - failed} passed, {failed} failed",
            file=out,
        )
    return EXIT_CHECK if failed else EXIT_OK


def cmd_bench(args, out=sys.stdout, err_out=sys.stderr):
    try:
        orders = [int(tok) for tok in args.orders.split(",") if tok.strip()]
    except ValueError:
        print("error: --orders must be a comma-separated list of integers",
              file=err_out)
        return EXIT_PARSE
    rows = benchmod.run_bench(orders=orders, reps=args.reps)
    if args.json:
        payload = {
            "active_backend": active_backend(),
            "reps": args.reps,
            "rows": [
                {
                    "method": r.method,
                    "backend": r.backend,
                    "order": r.order,
                    "median_ms": r.median_ms,
                }
                for r in rows
            ],
        }
        print(json.dumps(payload), file=out)
    else:
        print(f"active backend: {active_backend()}  (reps={args.reps})", file=out)
        print(f"{'method':>10}  {'backend':>8}  {'order':>6}  {'median':>12}",
              file=out)
        for r in rows:
            print(
                f"{r.method:>10}  {r.backend:>8}  {r.order:>6}  "
                f"{r.median_ms:>9.3f} ms",
                file=out,
            )
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="deriv",
        description="Derivatives of one-variable expressions via truncated "
        "Taylor (jet) arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="derivative table of an expression")
    p_eval.add_argument("--expr", required=True, help="expression in x")
    p_eval.add_argument("--at", required=True, type=float,
                        help="expansion point x0")
    p_eval.add_argument("--order", required=True, type=int,
                        help="highest derivative order")
    p_eval.add_argument("--method", default="recursion",
                        choices=("recursion", "cramer", "reciprocal"),
                        help="division route (default: recursion)")
    p_eval.add_argument("--check", choices=("sym", "fd", "all"),
                        help="verify against an oracle; failures exit 4")
    p_eval.add_argument("--compensated", action="store_true",
                        help="Kahan-compensated inner sums")
    p_eval.add_argument("--json", action="store_true")

    p_check = sub.add_parser("check", help="run a corpus of golden cases")
    p_check.add_argument("--corpus", help="JSONL corpus path "
                         "(default: the shipped corpus)")
    p_check.add_argument("--method", default="recursion",
                         choices=("recursion", "cramer", "reciprocal"))
    p_check.add_argument("--json", action="store_true")

    p_bench = sub.add_parser("bench", help="time recursion vs Cramer")
    p_bench.add_argument("--orders",
                         default=",".join(str(o) for o in benchmod.DEFAULT_ORDERS),
                         help="comma-separated list of orders")
    p_bench.add_argument("--reps", type=int, default=11,
                         help="repetitions per measurement (median reported)")
    p_bench.add_argument("--json", action="store_true")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "eval":
        if args.order < 0:
            print("error: --order must be non-negative", file=sys.stderr)
            return EXIT_PARSE
        if not math.isfinite(args.at):
            print("error: --at must be finite", file=sys.stderr)
            return EXIT_PARSE
        return cmd_eval(args)
    if args.command == "check":
        return cmd_check(args)
    return cmd_bench(args)


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
