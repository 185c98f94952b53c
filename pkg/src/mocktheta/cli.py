"""Command-line front end: one subcommand per verification suite, with
machine-readable JSON reports and exit codes that distinguish mathematical
mismatches from configuration and convergence problems."""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys

from . import analytic, modgroup, specialforms, weilrep
from .cyclofield import QQ, rational_str
from .errors import (
    ConvergenceError,
    InsufficientPrecisionError,
    MockThetaError,
    PrecisionRefusalError,
)

EXIT_PASS = 0
EXIT_MISMATCH = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

BOUND_ENV = "MOCKTHETA_BOUND"
DEFAULT_CLI_BOUND = "30"

S_TOLERANCE = 1e-6
T_TOLERANCE = 1e-10

NUMERIC_POINTS = (1j, 0.25 + 1j)

VERIFY_SUITES = ("mtc", "lemmas", "remaining", "weil", "all")


def _parse_bound(text) -> QQ:
    try:
        return QQ(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational bound: {text!r}") from exc


def _parse_point(text) -> complex:
    """Accept '0+1i' or '0+1j' style complex literals."""
    cleaned = text.strip().replace("i", "j").replace(" ", "")
    try:
        z = complex(cleaned)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc
    if not z.imag > 0:
        raise argparse.ArgumentTypeError("point must satisfy Im z > 0")
    return z


def _parse_group(text):
    try:
        n_text, m_text = text.split(",")
        return modgroup.GroupContext(int(n_text), int(m_text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected N,M with M | N: {text!r}") from exc


def _format_point(z: complex) -> str:
    return "%g%+gi" % (z.real, z.imag)


def _default_bound() -> str:
    return os.environ.get(BOUND_ENV, DEFAULT_CLI_BOUND)


def _emit(report: dict, args) -> None:
    if not getattr(args, "no_timestamp", False):
        report = dict(report)
        report["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat(
            timespec="seconds"
        )
    text = json.dumps(report, indent=2, sort_keys=True)
    if getattr(args, "json", None):
        with open(args.json, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _identity_checks(names, bound, force):
    checks = []
    failed = []
    for name in sorted(names):
        rep = specialforms.verify_identity(name, bound=bound, force=force)
        entry = rep.to_json()
        entry["status"] = "pass" if rep.equal else "fail"
        checks.append(entry)
        line = f"[{'pass' if rep.equal else 'fail'}] {name}: "
        if rep.equal:
            line += f"equal through exponent {rational_str(rep.checked_to)}"
        else:
            line += f"first mismatch at exponent {rational_str(rep.mismatch_exponent)}"
            failed.append(name)
        print(line, file=sys.stderr)
    return checks, failed


def _weil_checks(bound):
    checks = []
    failed = []

    inter = weilrep.verify_intertwining()
    entry = inter.to_json()
    entry["id"] = "weil-intertwining"
    entry["status"] = "pass" if inter.equal else "fail"
    checks.append(entry)
    if not inter.equal:
        failed.append("weil-intertwining")
    print(f"[{entry['status']}] weil-intertwining", file=sys.stderr)

    meta = weilrep.metaplectic_relation()
    entry = meta.to_json()
    entry["id"] = "weil-metaplectic"
    entry["status"] = "pass" if meta.equal else "fail"
    checks.append(entry)
    if not meta.equal:
        failed.append("weil-metaplectic")
    print(f"[{entry['status']}] weil-metaplectic", file=sys.stderr)

    vanish = weilrep.check_vanishing(bound)
    ok = vanish.all_zero and vanish.completions_equal
    entry = vanish.to_json()
    entry["id"] = "weil-vanishing"
    entry["status"] = "pass" if ok else "fail"
    checks.append(entry)
    if not ok:
        failed.append("weil-vanishing")
    print(f"[{entry['status']}] weil-vanishing", file=sys.stderr)

    return checks, failed


def _numeric_checks(points, tol_s=S_TOLERANCE, tol_t=T_TOLERANCE):
    checks = []
    failed = []
    for vector in ("F", "G"):
        for z in points:
            for generator, tol in (("T", tol_t), ("S", tol_s)):
                if generator == "T":
                    rep = analytic.check_T_transformation(vector, z)
                else:
                    rep = analytic.check_S_transformation(vector, z)
                check_id = f"numeric-{vector}-{generator}-{_format_point(z)}"
                ok = rep.passed(tol)
                entry = rep.to_json()
                entry["id"] = check_id
                entry["status"] = "pass" if ok else "fail"
                entry["tolerance"] = tol
                checks.append(entry)
                if not ok:
                    failed.append(check_id)
                print(
                    f"[{entry['status']}] {check_id}: max residual "
                    f"{rep.max_residual:.3e} (budget {rep.max_error_budget:.3e})",
                    file=sys.stderr,
                )
    return checks, failed


def cmd_verify(args) -> int:
    bound = args.bound
    if bound < specialforms.required_bound() and not args.force:
        raise PrecisionRefusalError(
            f"bound {rational_str(bound)} is below the Sturm requirement "
            f"{specialforms.required_bound()}; pass --force to run anyway"
        )

    checks = []
    failed = []
    if args.suite in ("mtc", "all"):
        got, bad = _identity_checks(specialforms.MTC_IDENTITIES, bound, args.force)
        checks += got
        failed += bad
    if args.suite in ("lemmas", "all"):
        got, bad = _identity_checks(specialforms.LEMMA_IDENTITIES, bound, args.force)
        checks += got
        failed += bad
    if args.suite in ("remaining", "all"):
        got, bad = _identity_checks(
            specialforms.REMAINING_IDENTITIES, bound, args.force
        )
        checks += got
        failed += bad
    if args.suite in ("weil", "all"):
        got, bad = _weil_checks(bound)
        checks += got
        failed += bad
    if args.suite == "all":
        # Numeric spot checks run last: exact failures would invalidate them.
        got, bad = _numeric_checks(NUMERIC_POINTS)
        checks += got
        failed += bad

    checks.sort(key=lambda entry: entry["id"])
    report = {
        "command": "verify",
        "suite": args.suite,
        "bound": rational_str(bound),
        "status": "pass" if not failed else "fail",
        "failed": sorted(failed),
        "checks": checks,
    }
    _emit(report, args)
    return EXIT_PASS if not failed else EXIT_MISMATCH


def cmd_cusps(args) -> int:
    ctx = args.group
    reps = modgroup.cusp_representatives(ctx)
    report = {
        "command": "cusps",
        "group": [ctx.N, ctx.M],
        "index": modgroup.index(ctx),
        "count": len(reps),
        "representatives": [str(c) for c in reps],
    }
    status = True
    if args.match:
        if (ctx.N, ctx.M) != (50, 5):
            raise ValueError("--match has a reference list only for group 50,5")
        status = modgroup.cusps_cover_all_classes(ctx, modgroup.REFERENCE_CUSPS_50_5)
        report["reference"] = [str(c) for c in modgroup.REFERENCE_CUSPS_50_5]
        report["reference_match"] = status
    report["status"] = "pass" if status else "fail"
    _emit(report, args)
    return EXIT_PASS if status else EXIT_MISMATCH


def cmd_ords(args) -> int:
    report = {
        "command": "ords",
        "m_orders_at_infinity": {
            str(a): rational_str(modgroup.ord_table_infty(("M", a))) for a in range(5)
        },
        "n_two_index_orders": {
            f"{a},{b}": rational_str(modgroup.ord_table_infty(("N", a, b)))
            for a in range(5)
            for b in (1, 2, 3, 4)
        },
        "min_order_over_table": rational_str(modgroup.min_ord_over_table()),
        "m25_order_at_13_50": {
            str(a): rational_str(modgroup.ord_m25_at(a)) for a in (1, 2)
        },
        "R_lower_bounds": {
            str(s): rational_str(modgroup.R_lower_bound(s))
            for s in (1, 2, 5, 10, 25, 50)
        },
        "status": "pass",
    }
    ok = all(modgroup.R_lower_bound(s) >= 0 for s in (1, 2, 5, 10, 25, 50))
    report["status"] = "pass" if ok else "fail"
    _emit(report, args)
    return EXIT_PASS if ok else EXIT_MISMATCH


def cmd_numeric(args) -> int:
    checks, failed = _numeric_checks((args.z,), tol_s=args.tol, tol_t=args.tol)
    checks.sort(key=lambda entry: entry["id"])
    report = {
        "command": "numeric",
        "z": _format_point(args.z),
        "tolerance": args.tol,
        "status": "pass" if not failed else "fail",
        "failed": sorted(failed),
        "checks": checks,
    }
    _emit(report, args)
    return EXIT_PASS if not failed else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mocktheta",
        description="Exact and numeric verification of the mock theta "
        "conjecture identities and their modular transformation laws.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run an exact verification suite")
    verify.add_argument("suite", choices=VERIFY_SUITES)
    verify.add_argument(
        "--bound",
        type=_parse_bound,
        default=None,
        help=f"exponent bound for series comparisons (default ${BOUND_ENV} or "
        f"{DEFAULT_CLI_BOUND})",
    )
    verify.add_argument("--force", action="store_true",
                        help="run even below the Sturm requirement")
    verify.set_defaults(run=cmd_verify)

    cusps = sub.add_parser("cusps", help="enumerate cusp classes of a group")
    cusps.add_argument("--group", type=_parse_group, required=True,
                       metavar="N,M", help="levels of Gamma_0(N) intersect Gamma_1(M)")
    cusps.add_argument("--match", action="store_true",
                       help="check the built-in reference list (group 50,5)")
    cusps.set_defaults(run=cmd_cusps)

    ords = sub.add_parser("ords", help="print the invariant-order tables")
    ords.set_defaults(run=cmd_ords)

    numeric = sub.add_parser("numeric", help="numeric transformation residuals")
    numeric.add_argument("--z", type=_parse_point, default=1j,
                         help="sample point, e.g. 0.25+1i")
    numeric.add_argument("--tol", type=float, default=S_TOLERANCE,
                         help="residual tolerance")
    numeric.set_defaults(run=cmd_numeric)

    for p in (verify, cusps, ords, numeric):
        p.add_argument("--json", metavar="PATH", default=None,
                       help="write the JSON report to PATH instead of stdout")
        p.add_argument("--no-timestamp", action="store_true",
                       help="omit the timestamp for byte-identical reports")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "bound", None) is None:
        args.bound = _parse_bound(_default_bound())
    try:
        return args.run(args)
    except (PrecisionRefusalError, InsufficientPrecisionError) as exc:
        print(f"precision: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        achieved = f" (achieved {exc.achieved:.3e})" if exc.achieved is not None else ""
        print(f"convergence: {exc}{achieved}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, MockThetaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
