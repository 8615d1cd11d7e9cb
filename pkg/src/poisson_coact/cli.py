"""Command-line interface: ``poisson-coact validate|build|verify|solve|export``.

Exit codes: 0 success, 1 a check or axiom failed, 2 bad input, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import sys

from .algebra import Report, format_rational, validate_poisson
from .errors import (
    BudgetExceeded,
    DegreeOverflow,
    DescentFailure,
    DimensionMismatch,
    FileFormatError,
    IndexOutOfRange,
    InvalidAlgebra,
    NotAHomomorphism,
    ConstraintViolation,
)
from .free import render_terms
from .quotient import DEFAULT_MARGIN
from .serialize import (
    dumps,
    load_algebra,
    load_linear_map,
    presentation_from_dict,
    presentation_to_dict,
    read_json,
    report_to_dict,
)
from .universal import (
    CoactionMatrix,
    build_universal,
    solve_coaction,
    theta,
    verify_bialgebra,
    verify_comodule,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class _Abort(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _emit(text, out=None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_report(doc, pretty):
    if not pretty:
        return dumps(doc)
    lines = []
    if "verified_at" in doc:
        q = doc["verified_at"]
        lines.append(f"verified at D={q['degree']}, m={q['margin']}")
    for c in doc["checks"]:
        line = f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}"
        if "witness" in c:
            line += f"  witness={c['witness']}"
        if c.get("detail"):
            line += f"  ({c['detail']})"
        lines.append(line)
    lines.append("all checks passed" if doc["passed"] else "some checks FAILED")
    return "\n".join(lines) + "\n"


def _load_valid(path, skip_validate, what):
    A = load_algebra(path)
    if not skip_validate:
        rep = validate_poisson(A)
        if not rep.passed:
            bad = rep.failures()[0]
            raise _Abort(EXIT_FAIL, f"{what} ({path}) is not a Poisson algebra: {bad.name} fails at {bad.witness}")
    return A


def _load_pres(args):
    return presentation_from_dict(read_json(args.pres), args.pres, args.budget)


def cmd_validate(args):
    A = load_algebra(args.path)
    report = validate_poisson(A)
    _emit(_render_report(report_to_dict(report, "validate"), args.pretty), args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_build(args):
    P = _load_valid(args.p, args.skip_validate, "P")
    U = _load_valid(args.u, args.skip_validate, "U") if args.u else P
    pres = build_universal(P, U, args.degree, args.margin, args.budget, validate=False)
    doc = presentation_to_dict(pres)
    _emit(dumps(doc), args.out)
    print(f"quotient_dims {doc['quotient_dims']}  margin_stable {doc['meta']['margin_stable']}",
          file=sys.stderr)
    return EXIT_OK


def cmd_verify(args):
    pres = _load_pres(args)
    if (args.f is None) != (args.g is None):
        raise _Abort(EXIT_INPUT, "--f and --g must be given together")
    f = load_linear_map(args.f) if args.f else None
    g = load_linear_map(args.g) if args.g else None
    report = Report(qualifier=pres.qualifier)
    if f is not None or pres.P == pres.U:
        report.extend(verify_bialgebra(pres, f, g))
    report.extend(verify_comodule(pres, f, g))
    _emit(_render_report(report_to_dict(report, "verify"), args.pretty), args.out)
    if not report.passed:
        print("failed checks: " + ", ".join(c.name for c in report.failures()), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_solve(args):
    pres = _load_pres(args)
    Q = _load_valid(args.q, args.skip_validate, "Q")
    f = load_linear_map(args.f)
    if f.source_dim != pres.P.dim or f.target_dim != pres.U.dim * Q.dim:
        raise _Abort(EXIT_INPUT, f"f must have {pres.P.dim} images of length {pres.U.dim * Q.dim}")
    dmat = CoactionMatrix.from_linear_map(f, pres.U, Q)
    try:
        g, report = solve_coaction(pres, Q, dmat)
    except ConstraintViolation as exc:
        report = Report()
        report.add("constraints", False, tuple(exc.witness), exc.family)
        _emit(_render_report(report_to_dict(report, "solve"), args.pretty), args.out)
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    round_trip = theta(pres, Q, g) == dmat
    report.add("round-trip", round_trip, (0,), "theta(theta_inv(f)) == f")
    doc = report_to_dict(report, "solve")
    doc["generator_map"] = {pres.name(a): [format_rational(c) for c in v.coeffs] for a, v in g.images.items()}
    doc["round_trip"] = round_trip
    _emit(_render_report(doc, args.pretty) if args.pretty else dumps(doc), args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def export_text(pres) -> str:
    rows = [(r.label, render_terms(r.element.terms, pres.text_name)) for r in pres.relations]
    width = max(len(label) for label, _ in rows)
    lines = [f"# B(P, U) with dim P = {pres.P.dim}, dim U = {pres.U.dim}: {len(rows)} relations, "
             f"quotient dims {pres.quotient_dims()} at D={pres.degree}, m={pres.margin}"]
    lines += [f"{label.ljust(width)}  {body}" for label, body in rows]
    return "\n".join(lines) + "\n"


def export_latex(pres) -> str:
    lines = [f"% B(P, U) with dim P = {pres.P.dim}, dim U = {pres.U.dim}, truncated at D = {pres.degree}, "
             f"m = {pres.margin}", "\\begin{align*}"]
    zero = 0
    for family, title in (("unit", "I_1"), ("mul", "I_1"), ("bracket", "I_2")):
        rels = [r for r in pres.relations if r.family == family]
        first = family != "mul"
        for r in rels:
            if r.element.is_zero():
                zero += 1
                continue
            lead = f"{title}:\\quad " if first else ""
            first = False
            lines.append(f"  {lead}& {render_terms(r.element.terms, pres.latex_name, latex=True)} = 0 \\\\")
    lines.append("\\end{align*}")
    if zero:
        lines.append(f"% {zero} relations vanish identically and are omitted")
    return "\n".join(lines) + "\n"


def cmd_export(args):
    doc = read_json(args.pres)
    pres = presentation_from_dict(doc, args.pres, args.budget)
    if args.format == "json":
        text = dumps(presentation_to_dict(pres))
    elif args.format == "text":
        text = export_text(pres)
    elif args.format == "latex":
        text = export_latex(pres)
    else:
        raise _Abort(EXIT_INPUT, f"unknown format {args.format!r}")
    _emit(text, args.out)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable report instead of JSON")
    common.add_argument("--skip-validate", action="store_true", help="do not check the Poisson axioms on load")
    common.add_argument("--budget", type=int, default=None, help="monomial cap for saturation")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="poisson-coact",
                                     description="Universal coacting Poisson algebras over Q.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the Poisson axioms of an algebra file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("build", parents=[common], help="build and saturate B(P, U)")
    p.add_argument("--p", required=True, help="algebra file for P")
    p.add_argument("--u", default=None, help="algebra file for U (default: U = P)")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--margin", type=int, default=DEFAULT_MARGIN)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", parents=[common], help="run the bialgebra and comodule checks")
    p.add_argument("--pres", required=True)
    p.add_argument("--f", default=None, help="linear map U -> P (images of the basis of U)")
    p.add_argument("--g", default=None, help="linear map P -> U (images of the basis of P)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", parents=[common], help="factor a coaction P -> U (x) Q through B(P, U)")
    p.add_argument("--pres", required=True)
    p.add_argument("--q", required=True, help="algebra file for Q")
    p.add_argument("--f", required=True, help="images of the basis of P in U (x) Q")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("export", parents=[common], help="render a presentation")
    p.add_argument("--pres", required=True)
    p.add_argument("--format", required=True, choices=["text", "latex", "json"])
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors exit with 2, --help with 0
        return exc.code
    try:
        return args.func(args)
    except _Abort as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FileFormatError, DimensionMismatch, IndexOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InvalidAlgebra, NotAHomomorphism, DescentFailure, DegreeOverflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
