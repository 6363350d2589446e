"""hpmkit command line.

Exit status: 0 success, 1 validation failure (or a hard numerical failure),
2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

import mpmath

from hpmkit.exact import ParseError, format_poly, format_rational, parse_rational
from hpmkit.hpm import (
    ProblemSpec,
    StateSpec,
    compute_series,
    compute_series_symbolic,
    epsilon_zero,
    epsilon_zero_symbolic,
    hypervirial_residual,
)
from hpmkit.oracle import OracleError, refine, solve_radial, solve_radial_ritz
from hpmkit.serialize import (
    CSV_DIGITS,
    decimal_string,
    dumps_json,
    metadata,
    report_csv,
    series_csv,
    series_document,
)
from hpmkit.series import (
    FieldSpec,
    evaluate_energy,
    lambda_from_field,
    optimal_truncation,
    partial_sum_exact,
)
from hpmkit.validate import run_validation

DEFAULT_MAX_ORDER = 200
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _max_order(args) -> int:
    if args.max_order is not None:
        return args.max_order
    env = os.environ.get("HPMKIT_MAX_ORDER")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"HPMKIT_MAX_ORDER must be an integer, got {env!r}") from None
    return DEFAULT_MAX_ORDER


def _check_order(args) -> None:
    cap = _max_order(args)
    if args.order < 0:
        raise UsageError("--order must be >= 0")
    if args.order > cap:
        raise UsageError(f"--order {args.order} exceeds the cap {cap} (use --max-order or HPMKIT_MAX_ORDER)")


def _number(text: str):
    """Exact rational when written as p/q or an integer, float otherwise."""
    try:
        return parse_rational(text)
    except ParseError:
        try:
            return float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            return range(1, int(text) + 1)
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None


def _states(text: str) -> list[tuple[int, int]]:
    try:
        out = []
        for chunk in text.split(";"):
            n, l = (int(x) for x in chunk.split(","))  # noqa: E741
            if n < l + 1 or l < 0:
                raise ValueError
            out.append((n, l))
        return out
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'n,l;n,l;...' with n > l >= 0, got {text!r}") from None


def _emit(text: str) -> None:
    sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------


def cmd_coeffs(args) -> int:
    _check_order(args)
    state = StateSpec(args.nr, args.l)
    problem = ProblemSpec(args.K, args.order)
    series, table = compute_series(state, problem)
    extra = {}
    if args.check:
        bad = [
            (j, i)
            for i in range(problem.P)
            for j in range(1, problem.j_max(i) + 2)
            if hypervirial_residual(series, table, state, problem, j, i) != 0
        ]
        extra["check"] = {"hypervirial_residuals": "fail" if bad else "pass"}
        if bad:
            print(f"hypervirial residual nonzero at (j, i) = {bad[0]}", file=sys.stderr)
    if args.format == "json":
        _emit(dumps_json(series_document(series, "coeffs", **extra)))
    else:
        _emit(series_csv(series, args.digits))
    return EXIT_FAIL if extra.get("check", {}).get("hypervirial_residuals") == "fail" else EXIT_OK


def cmd_symbolic(args) -> int:
    _check_order(args)
    series, _ = compute_series_symbolic(ProblemSpec(args.K, args.order))
    num, den = epsilon_zero_symbolic()
    eps0 = {"numerator": format_poly(num), "denominator": format_poly(den)}
    notice = "eps_0 = -2/(2n-1)^2 is not a polynomial; it is given as a numerator/denominator pair"
    if args.order == 0:
        print(f"notice: {notice}", file=sys.stderr)
    if args.format == "json":
        _emit(dumps_json(series_document(series, "symbolic", epsilon_zero=eps0, notice=notice)))
    else:
        _emit(series_csv(series, args.digits))
    return EXIT_OK


def cmd_energy(args) -> int:
    _check_order(args)
    if args.B < 0 or args.Z <= 0:
        raise UsageError("need --B >= 0 and --Z > 0")
    lam = lambda_from_field(FieldSpec(args.B, args.Z))
    state = StateSpec(args.nr, abs(args.ml), args.ml)
    series, _ = compute_series(state, ProblemSpec(args.K, args.order))
    report = evaluate_energy(
        series, lam, args.ml, args.method, order=args.truncate_at, L=args.pade_L, M=args.pade_M
    ).as_dict()
    report["lambda_exact"] = format_rational(lam) if isinstance(lam, Fraction) else None
    for w in report["warnings"]:
        print(f"warning: {w}", file=sys.stderr)
    if args.format == "json":
        _emit(dumps_json(series_document(series, "energy", report=report)))
    else:
        _emit(report_csv(report, args.digits))
    return EXIT_OK


def cmd_validate(args) -> int:
    checks = run_validation(orders=args.orders, states=args.states)
    failed = [c for c in checks if not c.passed]
    if args.format == "json":
        doc = {
            "metadata": metadata("validate"),
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
            "passed": not failed,
        }
        _emit(dumps_json(doc))
    else:
        for c in checks:
            print(c.line())
        print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    if failed:
        for c in failed:
            print(f"failed: {c.name}: {c.detail}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    lam = args.lam
    if lam < 0:
        raise UsageError("--lambda must be >= 0")
    state = StateSpec(args.nr, args.l)
    series, _ = compute_series(state, ProblemSpec(args.K, args.order))
    warnings = []
    try:
        if args.method == "ritz":
            res = solve_radial_ritz(lam, args.l, args.nr, args.K, basis_size=args.basis)
        else:
            res = refine(solve_radial(float(lam), args.l, args.nr, args.K))
    except OracleError as exc:
        print(f"error: oracle failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if not res.converged:
        warnings.append(f"oracle not converged (residual {res.residual_norm:.3g})")

    if lam == 0:
        estimate, band, order, saturated = epsilon_zero(state), 0.0, 0, False
    else:
        tr = optimal_truncation(series, lam)
        estimate = partial_sum_exact(series, lam, tr.order)
        band, order, saturated = tr.error_estimate, tr.order, tr.saturated
    with mpmath.workdps(60):
        disc = float(abs(mpmath.mpf(res.epsilon) - mpmath.mpf(estimate.numerator) / estimate.denominator))
    # at lam = 0 the series is exact; judge the oracle against its own tolerance
    allowed = 3 * band if lam != 0 else 1e-6 * abs(float(estimate))
    within = disc <= allowed
    if not within:
        warnings.append(f"discrepancy {disc:.3g} exceeds the allowed {allowed:.3g}")
    if saturated:
        warnings.append("series not yet in the asymptotic regime at this order")
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    report = {
        "lambda": float(lam),
        "oracle_method": res.method,
        "oracle_epsilon": float(res.epsilon),
        "oracle_epsilon_digits": decimal_string(res.epsilon, 40 if res.method == "ritz" else 17),
        "oracle_converged": res.converged,
        "oracle_residual": res.residual_norm,
        "node_count": res.node_count,
        "series_order": order,
        "series_estimate": float(estimate),
        "series_estimate_exact": format_rational(estimate),
        "error_band": band,
        "discrepancy": disc,
        "within_band": within,
        "warnings": warnings,
    }
    if args.format == "json":
        _emit(dumps_json(series_document(series, "oracle-check", report=report)))
    else:
        _emit(report_csv(report, args.digits))
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hpmkit",
        description="Weak-field perturbation coefficients of the 2D hydrogen-like atom in a magnetic field.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        p.add_argument("--K", type=int, default=2, help="perturbation power q^K (default 2)")
        p.add_argument("--order", type=int, default=20, help="maximum perturbation order P")
        p.add_argument("--max-order", type=int, default=None,
                       help=f"order cap (default {DEFAULT_MAX_ORDER} or $HPMKIT_MAX_ORDER)")
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")
            p.add_argument("--digits", type=int, default=CSV_DIGITS, help="significant digits for CSV floats")

    p = sub.add_parser("coeffs", help="exact eps_0..eps_P for one state")
    p.add_argument("--nr", type=int, default=0, help="radial quantum number")
    p.add_argument("--l", type=int, default=0, help="|m_l|")
    p.add_argument("--check", action="store_true", help="also verify every hypervirial residual")
    common(p)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("symbolic", help="eps_1..eps_P as polynomials in n and l")
    common(p)
    p.set_defaults(func=cmd_symbolic)

    p = sub.add_parser("energy", help="evaluate the series at a physical field")
    p.add_argument("--B", type=_number, required=True, help="field in units of B0 = hbar/(e a0)")
    p.add_argument("--Z", type=_number, default=1, help="nuclear charge number")
    p.add_argument("--nr", type=int, default=0)
    p.add_argument("--ml", type=int, default=0, help="magnetic quantum number; l = |m_l|")
    p.add_argument("--method", choices=("truncate", "optimal", "pade"), default="optimal")
    p.add_argument("--truncate-at", type=int, default=None, help="partial-sum order for --method truncate (default P)")
    p.add_argument("--pade-L", type=int, default=None)
    p.add_argument("--pade-M", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("validate", help="check against the embedded published data")
    p.add_argument("--orders", type=_range, default=None, help="e.g. 1..8: add the symbolic/numeric agreement matrix")
    p.add_argument("--states", type=_states, default=None, help="e.g. '1,0;2,0;2,1;3,2' as (n, l) pairs")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("oracle-check", help="compare the series with a direct eigensolve")
    p.add_argument("--lambda", dest="lam", type=_number, required=True)
    p.add_argument("--nr", type=int, default=0)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--method", choices=("ritz", "fd"), default="ritz")
    p.add_argument("--basis", type=int, default=30, help="Ritz basis size")
    common(p)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"hpmkit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
