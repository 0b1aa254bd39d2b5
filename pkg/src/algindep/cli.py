"""Command-line front end emitting deterministic JSON reports.

Subcommands: bound, verify, construct, audit, resultant.  Exit codes:
0 pass/consistent, 1 violation or counterexample, 2 invalid spec or input,
3 Q-linear independence failure, 4 inconclusive.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .bounds import (DEFAULT_DIGIT_CAP, BoundsError, audit_chain,
                     theorem_bound, theorem_params, verify_measure)
from .interpolation import (InterpolationError, aux_params, delta_normalizer,
                            hermite_basis, lemA_check, propQ_check)
from .numberfield import FieldError, check_q_independence
from .polysys import PolynomialError, family_F, zero_lemma_check
from .resultant import ResultantIndeterminate, macaulay_resultant
from .serialize import (SpecError, dump_report, element_to_json,
                        format_rational, parse_rational, read_field_spec,
                        read_poly)

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_INVALID = 2
EXIT_DEPENDENT = 3
EXIT_INCONCLUSIVE = 4


class DependenceFailure(ValueError):
    pass


def _require_independent(alphas):
    if not alphas:
        raise SpecError("field spec provides no alphas")
    if any(not a for a in alphas) or not check_q_independence(list(alphas)):
        raise DependenceFailure(
            "alpha_1..alpha_t must be nonzero and Q-linearly independent")


def _base_report(args, command: str) -> dict:
    return {"tool": {"name": "algindep", "version": __version__},
            "command": command,
            "config": {"prec": args.prec, "seed": args.seed,
                       "digit_cap": args.digit_cap}}


def _params_json(params) -> dict:
    return {"t": params.t, "d": params.d, "D": params.D,
            "S": params.S, "N": params.N,
            "c": format_rational(params.c), "q": params.q,
            "log10_T": params.T.lm.log10_str(12),
            "alphas": [element_to_json(a) for a in params.alpha]}


def cmd_bound(args) -> int:
    field, alphas = read_field_spec(args.field)
    _require_independent(alphas)
    H = parse_rational(args.height) if args.height is not None else Fraction(1)
    params = theorem_params(field, alphas, args.degree, H,
                            digit_cap=args.digit_cap)
    bound = theorem_bound(params, digit_cap=args.digit_cap,
                          precision=max(args.prec, 192))
    report = _base_report(args, "bound")
    report["H"] = format_rational(H)
    report["params"] = _params_json(params)
    report["log10_bound"] = bound.log10_str()
    _emit(report, args.out)
    return EXIT_PASS


def cmd_verify(args) -> int:
    field, alphas = read_field_spec(args.field)
    _require_independent(alphas)
    poly = read_poly(args.poly, field)
    H = parse_rational(args.height) if args.height is not None else None
    result = verify_measure(field, alphas, poly, H=H,
                            precision=max(args.prec, 192),
                            digit_cap=args.digit_cap)
    report = _base_report(args, "verify")
    report["result"] = result
    _emit(report, args.out)
    if result["verdict"] == "consistent":
        return EXIT_PASS
    if result["verdict"] == "VIOLATION":
        return EXIT_VIOLATION
    return EXIT_INCONCLUSIVE


def cmd_construct(args) -> int:
    field, alphas = read_field_spec(args.field)
    _require_independent(alphas)
    if args.S is None or args.T is None:
        raise SpecError("construct needs --S and --T")
    params = aux_params(field, alphas, args.S, args.T)
    basis = hermite_basis(params)
    normalizer = delta_normalizer(params)
    family = family_F(basis, normalizer)
    zl = zero_lemma_check(family, T=args.T, seed=args.seed)
    la = lemA_check(basis, normalizer)
    pq = propQ_check(basis, normalizer, precision=args.prec)
    report = _base_report(args, "construct")
    report["params"] = {"t": params.t, "S": params.S, "T": params.T,
                        "N": params.N, "c": format_rational(params.c),
                        "q": params.q,
                        "alphas": [element_to_json(a) for a in params.alpha]}
    report["zero_lemma"] = zl
    report["integrality"] = la
    report["size_bounds"] = pq
    _emit(report, args.out)
    if la.get("violations") or pq.get("passed") is False:
        return EXIT_VIOLATION
    if not zl.get("certified"):
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def cmd_audit(args) -> int:
    field, alphas = read_field_spec(args.field)
    _require_independent(alphas)
    H = parse_rational(args.height) if args.height is not None else Fraction(1)
    params = theorem_params(field, alphas, args.degree, H,
                            digit_cap=args.digit_cap)
    result = audit_chain(params, precision=max(args.prec, 256))
    report = _base_report(args, "audit")
    report["H"] = format_rational(H)
    report["result"] = result
    _emit(report, args.out)
    return EXIT_PASS if result["passed"] else EXIT_VIOLATION


def cmd_resultant(args) -> int:
    field = None
    if args.field:
        field, _ = read_field_spec(args.field)
    polys = [read_poly(p, field) for p in args.polys]
    if len(polys) < 2 or any(q.nvars != len(polys) for q in polys):
        raise SpecError("need t+1 forms in t+1 variables")
    report = _base_report(args, "resultant")
    report["degrees"] = [q.degree for q in polys]
    info: dict = {}
    try:
        res = macaulay_resultant(polys, seed=args.seed, info=info)
    except ResultantIndeterminate as exc:
        report["status"] = "indeterminate"
        report["reason"] = str(exc)
        _emit(report, args.out)
        return EXIT_INCONCLUSIVE
    report["status"] = "ok"
    report["certificate"] = {"retries": info.get("retries", 0),
                             "coordinate_change": info.get("coordinate_change")}
    if hasattr(res, "coords"):
        if res.is_rational:
            report["resultant"] = format_rational(res.as_fraction())
        else:
            report["resultant"] = element_to_json(res)
    else:
        report["resultant"] = format_rational(Fraction(res))
    _emit(report, args.out)
    return EXIT_PASS


def _emit(report: dict, out_path):
    text = dump_report(report, out_path)
    print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="algindep",
        description="exact and certified checks for an algebraic-independence"
                    " measure of exponential values")
    parser.add_argument("--version", action="version",
                        version=f"algindep {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_degree=False):
        p.add_argument("--field", required=True, help="field spec JSON path")
        if need_degree:
            p.add_argument("--degree", type=int, required=True)
            p.add_argument("--height", default=None,
                           help="rational H >= 1 (default 1)")
        p.add_argument("--prec", type=int, default=128)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--digit-cap", dest="digit_cap", type=int,
                       default=DEFAULT_DIGIT_CAP)
        p.add_argument("--out", default=None)

    p = sub.add_parser("bound", help="evaluate the lower bound itself")
    common(p, need_degree=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="check a polynomial value against the bound")
    common(p)
    p.add_argument("--poly", required=True, help="polynomial JSON path")
    p.add_argument("--height", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="build the interpolation basis and"
                                         " run its certification suite")
    common(p)
    p.add_argument("--S", type=int, required=True)
    p.add_argument("--T", type=int, required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("audit", help="machine-check the proof inequality chain")
    common(p, need_degree=True)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("resultant", help="exact Macaulay resultant of forms")
    p.add_argument("polys", nargs="+", help="polynomial JSON paths")
    p.add_argument("--field", default=None)
    p.add_argument("--prec", type=int, default=128)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--digit-cap", dest="digit_cap", type=int,
                   default=DEFAULT_DIGIT_CAP)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_resultant)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DependenceFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEPENDENT
    except (SpecError, FieldError, PolynomialError, InterpolationError,
            BoundsError, OSError) as exc:
        msg = str(exc)
        if "independen" in msg:
            print(f"error: {msg}", file=sys.stderr)
            return EXIT_DEPENDENT
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
