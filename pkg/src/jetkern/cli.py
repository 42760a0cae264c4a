"""Command-line interface: one entry point, one subcommand per check family,
JSON output, deterministic given (flags, seed).

Exit codes: 0 all checks passed, 1 a verification failed (counterexample in
the payload), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from random import Random

from . import acceptance
from .curvature import (
    curvature_at_zero,
    curvature_series,
    invariant_pair,
    jet2_curvature_closed_form,
)
from .kernels import (
    bidisc_spec,
    jet_kernel_series,
    jet_kernel_series_bruteforce,
    tridisc_spec,
)
from .mobius import (
    binomial_identity_check,
    quasi_invariance_at_zero,
    random_element,
    random_point,
    verify_matrix_cocycle,
    verify_scalar_cocycles,
)
from .normalize import irreducibility_verdict
from .scalars import ComplexRational, format_rational, parse_rational
from .tridisc import tridisc_block_diagonalize
from .wilkins import kq_partial_sum, kq_partial_sum_error, nilpotency_check

MAX_TRUNC = 12


def _fmt_scalar(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, ComplexRational):
        return {"re": format_rational(x.re), "im": format_rational(x.im)}
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    return x


def _fmt_matrix(matrix):
    return [[_fmt_scalar(x) for x in row] for row in matrix]


def _parse_point(text: str) -> complex:
    x, _, y = text.partition(",")
    return complex(float(x), float(y or "0"))


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational 'p/q': {text!r}") from exc


def _guard_trunc(trunc: int):
    if not 0 <= trunc <= MAX_TRUNC:
        raise SystemExit(2)


def _emit(payload: dict, args) -> None:
    text = json.dumps(payload, indent=args.json_indent)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    elif not args.quiet:
        print(text)


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (exit_code, payload)
# ---------------------------------------------------------------------------


def _cmd_jet_coeffs(args):
    _guard_trunc(args.trunc)
    spec = bidisc_spec(args.alpha, args.beta, args.order)
    builder = jet_kernel_series_bruteforce if args.oracle else jet_kernel_series
    series = builder(spec, args.trunc)
    payload = {
        "command": "jet-coeffs",
        "alpha": format_rational(spec.alpha),
        "beta": format_rational(spec.beta),
        "order": spec.jet_order,
        "oracle": bool(args.oracle),
        "series": series.to_json_dict(_fmt_scalar),
    }
    return 0, payload


def _cmd_irreducibility(args):
    spec = bidisc_spec(args.alpha, args.beta, args.order)
    report = irreducibility_verdict(spec)
    payload = {
        "command": "irreducibility",
        "alpha": format_rational(spec.alpha),
        "beta": format_rational(spec.beta),
        "order": spec.jet_order,
        "verdict": report.verdict,
        "dimension": report.dimension,
        "arithmetic": report.arithmetic,
        "basis": [_fmt_matrix(b) for b in report.basis],
        "notes": report.notes,
    }
    if report.offending is not None:
        payload["offending"] = _fmt_matrix(report.offending)
    return (0 if report.verdict == "irreducible" else 1), payload


def _cmd_curvature(args):
    spec = bidisc_spec(args.alpha, args.beta, args.order)
    at_zero = curvature_at_zero(spec)
    payload = {
        "command": "curvature",
        "alpha": format_rational(spec.alpha),
        "beta": format_rational(spec.beta),
        "order": spec.jet_order,
        "at_zero": [format_rational(x) for x in at_zero],
        "invariant_pair": [format_rational(x) for x in invariant_pair(spec)],
    }
    if args.at is not None:
        cs = curvature_series(spec, max(args.trunc, 12))
        z = args.at
        value = cs.evaluate_at(z)
        payload["sample"] = {
            "z": {"re": z.real, "im": z.imag},
            "matrix": _fmt_matrix(value),
            "tail_estimate": cs.tail_estimate(z),
            "radius": cs.radius,
        }
        if spec.jet_order == 1:
            closed = jet2_curvature_closed_form(spec.alpha, spec.beta, z)
            err = max(
                abs(value[i][j] - closed[i][j]) for i in range(2) for j in range(2)
            )
            payload["sample"]["closed_form_error"] = err
            if err > 1e-6:
                return 1, payload
    return 0, payload


def _cmd_cocycle_check(args):
    spec = bidisc_spec(args.alpha, args.beta, args.order)
    rng = Random(args.seed)
    mode = "numeric" if args.numeric else "exact"
    failures = []
    if mode == "numeric":
        # principal-branch powers need parameters near the identity
        sample = dict(radius_bound=Fraction(1, 10), circle_bound=Fraction(1, 8))
        point_bound = Fraction(3, 10)
    else:
        sample = dict(radius_bound=Fraction(1, 2))
        point_bound = Fraction(1, 2)
    for trial in range(args.trials):
        g = random_element(rng, **sample)
        h = random_element(rng, **sample)
        z = random_point(rng, radius_bound=point_bound)
        if not verify_scalar_cocycles(g, h, z):
            failures.append({"trial": trial, "kind": "scalar", "z": _fmt_scalar(z)})
            continue
        zz = complex(z) if mode == "numeric" else z
        if not verify_matrix_cocycle(spec, g, h, zz, mode, tol=args.tol):
            failures.append({"trial": trial, "kind": "matrix", "z": _fmt_scalar(z)})
        if not quasi_invariance_at_zero(spec, g, mode, tol=args.tol):
            failures.append({"trial": trial, "kind": "quasi-invariance"})
    payload = {
        "command": "cocycle-check",
        "alpha": format_rational(spec.alpha),
        "beta": format_rational(spec.beta),
        "order": spec.jet_order,
        "trials": args.trials,
        "seed": args.seed,
        "mode": mode,
        "failures": failures,
        "passed": not failures,
    }
    return (0 if not failures else 1), payload


def _cmd_identity_check(args):
    failures = []
    for j in range(args.max_ij + 1):
        for i in range(j + 1):
            for k in range(i + 1):
                if not binomial_identity_check(i, j, k):
                    failures.append({"i": i, "j": j, "k": k})
    payload = {
        "command": "identity-check",
        "max_ij": args.max_ij,
        "checked": sum((j + 1) * (j + 2) // 2 for j in range(args.max_ij + 1)),
        "failures": failures,
        "passed": not failures,
    }
    return (0 if not failures else 1), payload


def _cmd_wilkins(args):
    z = args.at
    partial = kq_partial_sum(args.alpha, args.beta, args.terms, z, z)
    err = kq_partial_sum_error(args.alpha, args.beta, args.terms, z, z)
    blocks_ok = all(nilpotency_check(args.alpha, args.beta, p) for p in range(51))
    payload = {
        "command": "wilkins",
        "alpha": format_rational(args.alpha),
        "beta": format_rational(args.beta),
        "terms": args.terms,
        "at": {"re": z.real, "im": z.imag},
        "partial_sum": _fmt_matrix(partial),
        "max_entry_error": err,
        "tolerance": args.tol,
        "nilpotency_up_to_50": blocks_ok,
        "passed": err < args.tol and blocks_ok,
    }
    return (0 if payload["passed"] else 1), payload


def _cmd_tridisc(args):
    spec = tridisc_spec(args.alpha, args.beta, args.gamma)
    report = tridisc_block_diagonalize(spec)
    checks = {
        "unitary": report.unitary_residual == 0.0 or report.unitary_residual < 1e-12,
        "off_block_vanishes": report.off_block_residual == 0.0
        or report.off_block_residual < 1e-12,
        "g2_matches_szego": report.g2_matches_szego,
        "g1_matches_display": report.g1_matches_display,
        "match_bidisc": report.match_bidisc,
        "reducible": report.reducible,
    }
    payload = {
        "command": "tridisc",
        "alpha": format_rational(spec.alpha),
        "beta": format_rational(spec.beta),
        "gamma": format_rational(spec.gamma),
        "exact": report.exact,
        "g2_exponent": format_rational(report.g2_exponent),
        "commutant_dimension": report.commutant.dimension,
        "projection_ranks": sorted(
            round(sum(float(p[i][i].real if isinstance(p[i][i], complex) else p[i][i])
                      for i in range(3)))
            for p in report.projections
        ),
        "checks": checks,
        "notes": report.notes,
        "passed": all(checks.values()),
    }
    return (0 if payload["passed"] else 1), payload


def _cmd_verify_all(args):
    results = []
    t_total = time.perf_counter()
    for name, fn in acceptance.ALL_CHECKS:
        if args.quick and name in acceptance.SLOW_CHECKS:
            continue
        t0 = time.perf_counter()
        try:
            detail = fn(seed=args.seed)
            passed, info = True, detail
        except acceptance.CheckFailure as exc:
            passed, info = False, {"counterexample": str(exc)}
        results.append(
            {
                "check": name,
                "passed": passed,
                "seconds": round(time.perf_counter() - t0, 3),
                "detail": info,
            }
        )
        if not args.quiet:
            print(f"{'PASS' if passed else 'FAIL'} {name}", file=sys.stderr)
    payload = {
        "command": "verify-all",
        "quick": bool(args.quick),
        "seed": args.seed,
        "all_passed": all(r["passed"] for r in results),
        "seconds": round(time.perf_counter() - t_total, 3),
        "checks": results,
    }
    return (0 if payload["all_passed"] else 1), payload


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jetkern",
        description="Exact verification suite for jet kernels on the disc",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json-indent", type=int, default=2)
    common.add_argument("--quiet", action="store_true")
    common.add_argument("--output", help="write the JSON payload to this path")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_params(p, gamma=False, order=True):
        p.add_argument("--alpha", type=_rational_arg, required=True)
        p.add_argument("--beta", type=_rational_arg, required=True)
        if gamma:
            p.add_argument("--gamma", type=_rational_arg, required=True)
        if order:
            p.add_argument("--order", type=int, default=1)

    p = sub.add_parser("jet-coeffs", parents=[common], help="emit the jet-kernel coefficient table")
    add_params(p)
    p.add_argument("--trunc", type=int, default=6)
    p.add_argument("--oracle", action="store_true", help="use the brute-force route")
    p.set_defaults(handler=_cmd_jet_coeffs)

    p = sub.add_parser("irreducibility", parents=[common], help="commutant verdict for the jet operator")
    add_params(p)
    p.add_argument("--numeric", action="store_true")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(handler=_cmd_irreducibility)

    p = sub.add_parser("curvature", parents=[common], help="curvature at 0 and optional sample point")
    add_params(p)
    p.add_argument("--at", type=_parse_point, help="evaluation point 'x,y'")
    p.add_argument("--trunc", type=int, default=12)
    p.set_defaults(handler=_cmd_curvature)

    p = sub.add_parser("cocycle-check", parents=[common], help="randomized cocycle identities")
    add_params(p)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--numeric", action="store_true")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(handler=_cmd_cocycle_check)

    p = sub.add_parser("identity-check", parents=[common], help="binomial identity grid")
    p.add_argument("--max-ij", type=int, default=10)
    p.set_defaults(handler=_cmd_identity_check)

    p = sub.add_parser("wilkins", parents=[common], help="basis partial sums vs the closed form")
    add_params(p, order=False)
    p.add_argument("--terms", type=int, default=60)
    p.add_argument("--at", type=_parse_point, default=complex(0.3, 0.0))
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(handler=_cmd_wilkins)

    p = sub.add_parser("tridisc", parents=[common], help="block diagonalization and bidisc match")
    add_params(p, gamma=True, order=False)
    p.set_defaults(handler=_cmd_tridisc)

    p = sub.add_parser("verify-all", parents=[common], help="run the whole acceptance grid")
    p.add_argument("--quick", action="store_true", help="skip the slowest grids")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_verify_all)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses its own exit codes; normalize usage errors to 2
        return 2 if exc.code not in (0, None) else 0
    try:
        code, payload = args.handler(args)
    except (ValueError, ZeroDivisionError, IndexError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    _emit(payload, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
