"""Command-line front end.

    selbergcert run FILE            verify one certificate file
    selbergcert bundle NAME         genus3 | klein | genus2 | bolza | paper
    selbergcert thresholds --genus G
    selbergcert geodesics SURFACE   klein | bolza
    selbergcert show NAME           print an embedded certificate file

Exit status: 0 when every verdict is verified, 1 when something failed or
was inconclusive, 2 for input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .certfile import (
    EMBEDDED,
    CertificateFileError,
    embedded_certificates,
    embedded_text,
    format_rational,
    load_certificate,
)
from .certify import AnalysisReport, BoundReport, BundleResult, run_bundle, run_certificate
from .geometry import (
    bolza_l3_below_twice_systole,
    builtin_geodesics,
    kaleidoscopic_threshold,
    klein_initial_bound,
    thresholds,
)
from .interval import Interval, format_endpoint, get_precision, working_precision
from .signcheck import SignVerdict

ENV_PRECISION = "SELBERGCERT_PRECISION"
DIGITS = 15
BUNDLES = ("genus3", "klein", "genus2", "bolza", "paper")


class InputError(Exception):
    pass


# ----------------------------------------------------------------------------
# Rendering
# ----------------------------------------------------------------------------


def _pair(x: Interval | None):
    if x is None:
        return None
    return {"lo": format_endpoint(x.lo, "down", DIGITS), "hi": format_endpoint(x.hi, "up", DIGITS)}


def _txt(x: Interval | None) -> str:
    if x is None:
        return "n/a"
    p = _pair(x)
    return f"[{p['lo']}, {p['hi']}]"


def _q(x: Fraction) -> str:
    return format_rational(x)


def _verdict_doc(v: SignVerdict) -> dict:
    return {"condition": v.condition, "holds": v.holds, "witness": v.witness}


def report_document(r: BoundReport) -> dict:
    """Structured form of a certificate report; every run emits exactly these fields."""
    comps = r.components
    return {
        "certificate": r.certificate,
        "genus": r.genus,
        "direction": r.direction,
        "window": [_q(r.window[0]), _q(r.window[1])],
        "expected": {"comparator": r.expected[0], "threshold": _q(r.expected[1])},
        "verdict": r.verdict,
        "bound": _pair(r.bound_enclosure),
        "integer_bound": r.integer_bound,
        "reference": r.reference,
        "reference_contained": r.reference_contained,
        "components": {
            "integral_term": _pair(comps.integral_term) if comps else None,
            "geometric_term": _pair(comps.geometric_term) if comps else None,
            "spectral_constant": _pair(comps.spectral_constant) if comps else None,
            "c": _pair(r.c),
        },
        "sign_verdicts": [_verdict_doc(v) for v in r.sign_verdicts],
        "notes": list(r.wall_notes),
        "precision": r.precision,
        "error": r.error,
    }


def analysis_document(a: AnalysisReport) -> dict:
    return {
        "analysis": a.name,
        "conclusion": a.conclusion,
        "holds": a.holds,
        "certificates": [r.certificate for r in a.certificates],
        "computed_facts": [{"statement": f.statement, "holds": f.holds, "detail": f.detail} for f in a.facts],
        "axioms": [{"key": x.key, "statement": x.statement, "citation": x.citation} for x in a.axioms],
        "dependency_tree": list(a.dependency_tree),
        "uncovered": [[_q(lo), _q(hi)] for lo, hi in a.uncovered],
        "context": list(a.context),
    }


def bundle_document(b: BundleResult) -> dict:
    return {
        "bundle": b.name,
        "all_verified": b.all_verified,
        "certificates": [report_document(r) for r in b.reports],
        "analyses": [analysis_document(a) for a in b.analyses],
    }


def render_report(r: BoundReport) -> str:
    lines = [f"certificate {r.certificate} (genus {r.genus}, {r.direction})", f"  claim: {r.statement()}"]
    lines.append(f"  verdict: {r.verdict.upper()}")
    if r.error:
        lines.append(f"  error: {r.error}")
    for v in r.sign_verdicts:
        lines.append(f"  [{'ok' if v.holds else 'FAIL'}] {v.condition}: {v.witness}")
    if r.components is not None:
        c = r.components
        lines.append(f"  integral term  I = {_txt(c.integral_term)}")
        lines.append(f"  geometric term G = {_txt(c.geometric_term)}")
        lines.append(f"  fhat(i/2)        = {_txt(c.spectral_constant)}")
    lines.append(f"  c                = {_txt(r.c)}")
    if r.bound_enclosure is not None:
        lines.append(f"  bound            = {_txt(r.bound_enclosure)}  {r.expected[0]} {_q(r.expected[1])}")
    if r.reference is not None:
        mark = {True: "inside", False: "OUTSIDE", None: "n/a"}[r.reference_contained]
        lines.append(f"  printed value    = {r.reference} ({mark} the enclosure)")
    if r.integer_bound is not None:
        word = "at most" if r.direction == "upper" else "at least"
        lines.append(f"  integer consequence: {word} {r.integer_bound}")
    for n in r.wall_notes:
        lines.append(f"  note: {n}")
    return "\n".join(lines)


def render_analysis(a: AnalysisReport) -> str:
    lines = [f"analysis {a.name}: {a.conclusion} -- {'HOLDS' if a.holds else 'NOT ESTABLISHED'}"]
    lines.append("  dependency tree:")
    lines += [f"    {t}" for t in a.dependency_tree]
    lines.append("  verified here:")
    for f in a.facts:
        lines.append(f"    [{'ok' if f.holds else 'FAIL'}] {f.statement} ({f.detail})")
    for r in a.certificates:
        lines.append(f"    [{'ok' if r.verified else 'FAIL'}] certificate {r.certificate}: {r.verdict}")
    if a.uncovered:
        lines.append("  uncovered: " + ", ".join(f"[{_q(x)}, {_q(y)}]" for x, y in a.uncovered))
    lines.append("  cited (not recomputed):")
    for x in a.axioms:
        lines.append(f"    {x.key}: {x.statement}")
        lines.append(f"      source: {x.citation}")
    for c in a.context:
        lines.append(f"  context: {c}")
    return "\n".join(lines)


def render_bundle(b: BundleResult) -> str:
    out = [f"bundle {b.name}", ""]
    head = f"{'certificate':<14} {'verdict':<12} {'enclosure':<38} {'printed value':<18} inside"
    out += [head, "-" * len(head)]
    for r in b.reports:
        mark = {True: "yes", False: "NO", None: "-"}[r.reference_contained]
        out.append(f"{r.certificate:<14} {r.verdict:<12} {_txt(r.bound_enclosure):<38} {r.reference or '-':<18} {mark}")
    out.append("")
    for r in b.reports:
        out += [render_report(r), ""]
    for a in b.analyses:
        out += [render_analysis(a), ""]
    out.append("all verified" if b.all_verified else "NOT all verified")
    return "\n".join(out)


def render_thresholds(genus: int) -> tuple[str, dict]:
    th = thresholds(genus)
    doc = {
        "genus": genus,
        "delta": _pair(th.delta_g),
        "epsilon": _pair(th.eps_g),
        "quarter_plus_delta": _pair(th.quarter_plus_delta),
        "quarter_plus_epsilon": _pair(th.quarter_plus_eps),
        "radius_area_4pi(g-1)": _pair(th.radius_D),
        "radius_area_2pi(g-1)": _pair(th.radius_E),
        "caps": {k: _pair(v) for k, v in th.lambda_caps},
    }
    if genus == 3:
        doc["klein_kaleidoscopic_threshold"] = _pair(kaleidoscopic_threshold(2, 3, 7))
        doc["klein_initial_bound"] = _pair(klein_initial_bound())
    lines = [f"thresholds for genus {genus}"]
    lines.append(f"  delta_g        = {_txt(th.delta_g)}")
    lines.append(f"  eps_g          = {_txt(th.eps_g)}")
    lines.append(f"  1/4 + delta_g  = {_txt(th.quarter_plus_delta)}")
    lines.append(f"  1/4 + eps_g    = {_txt(th.quarter_plus_eps)}")
    for k, v in th.lambda_caps:
        lines.append(f"  cap {k:<11}= {_txt(v)}")
    if genus == 3:
        lines.append(f"  (2,3,7) kaleidoscopic threshold = {_txt(kaleidoscopic_threshold(2, 3, 7))}")
        lines.append(f"  Klein initial lambda_1 bound    = {_txt(klein_initial_bound())}")
    return "\n".join(lines), doc


def render_geodesics(surface: str) -> tuple[str, dict]:
    g = builtin_geodesics(surface)
    rows = [{"label": e.label, "expression": e.expr, "multiplicity": e.multiplicity, "length": _pair(e.length())}
            for e in g.entries]
    lines = [f"geodesics on {surface}"]
    for e in g.entries:
        lines.append(f"  {e.label:<16} x{e.multiplicity:<3} {_txt(e.length())}  {e.expr}")
    doc = {"surface": surface, "systole": _pair(g.systole()), "entries": rows}
    if surface == "bolza":
        ok, l3, twice = bolza_l3_below_twice_systole()
        doc["l3_below_twice_systole"] = ok
        lines.append(f"  l3 < 2 l1: {'certified' if ok else 'NOT certified'} ({_txt(l3)} vs {_txt(twice)})")
    return "\n".join(lines), doc


# ----------------------------------------------------------------------------
# Argument handling
# ----------------------------------------------------------------------------


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 16:
        raise argparse.ArgumentTypeError("precision must be at least 16 bits")
    return n


def _rational(text: str) -> Fraction:
    try:
        x = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational literal: {text!r}") from None
    if x <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=_positive_int, default=None, help="working precision in bits")
    common.add_argument("--quad-tol", type=_rational, default=None, help="override the quadrature width target")
    common.add_argument("--cutoff", type=_rational, default=None, help="override the quadrature cutoff T")
    common.add_argument("--report", choices=("text", "json"), default="text")
    common.add_argument("--out", default=None, help="write the report to this path")

    parser = argparse.ArgumentParser(prog="selbergcert", description="Verify trace-formula eigenvalue-count certificates.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("run", parents=[common], help="verify one certificate file")
    p.add_argument("file")
    p = sub.add_parser("bundle", parents=[common], help="run a named bundle with its composed conclusion")
    p.add_argument("name", choices=BUNDLES)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p = sub.add_parser("thresholds", parents=[common], help="print the disk eigenvalue thresholds")
    p.add_argument("--genus", type=int, required=True)
    p = sub.add_parser("geodesics", parents=[common], help="print a built-in geodesic table")
    p.add_argument("surface", choices=("klein", "bolza"))
    p = sub.add_parser("show", help="print an embedded certificate file")
    p.add_argument("name", choices=EMBEDDED)
    return parser


def _precision(args) -> int | None:
    if args.precision is not None:
        return args.precision
    env = os.environ.get(ENV_PRECISION)
    if env:
        try:
            return _positive_int(env)
        except argparse.ArgumentTypeError as exc:
            raise InputError(f"{ENV_PRECISION}: {exc}") from None
    return None


def _adjust(cert, args):
    changes = {}
    if args.quad_tol is not None:
        changes["tolerance"] = args.quad_tol
    if args.cutoff is not None:
        changes["cutoff_T"] = args.cutoff
    return cert.with_quadrature(**changes) if changes else cert


def _emit(text: str, args):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    try:
        return _dispatch(args)
    except (InputError, CertificateFileError, OSError, ValueError) as exc:
        print(f"selbergcert: error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "show":
        print(embedded_text(args.name), end="")
        return 0
    bits = _precision(args)
    as_json = args.report == "json"
    if args.command == "run":
        try:
            cert = load_certificate(args.file)
        except FileNotFoundError:
            raise InputError(f"no such certificate file: {args.file}") from None
        report = run_certificate(_adjust(cert, args), bits)
        _emit(json.dumps(report_document(report), indent=2) if as_json else render_report(report), args)
        return 0 if report.verified else 1
    if args.command == "bundle":
        if args.jobs < 1:
            raise InputError("--jobs must be at least 1")
        certs = {n: _adjust(c, args) for n, c in embedded_certificates().items()}
        result = run_bundle(args.name, certs, bits, args.jobs)
        _emit(json.dumps(bundle_document(result), indent=2) if as_json else render_bundle(result), args)
        return 0 if result.all_verified else 1
    if args.command == "thresholds":
        if args.genus < 2:
            raise InputError("--genus must be at least 2")
        text, doc = _with_precision(bits, render_thresholds, args.genus)
        _emit(json.dumps(doc, indent=2) if as_json else text, args)
        return 0
    if args.command == "geodesics":
        text, doc = _with_precision(bits, render_geodesics, args.surface)
        _emit(json.dumps(doc, indent=2) if as_json else text, args)
        return 0
    raise InputError(f"unknown command {args.command!r}")


def _with_precision(bits, fn, *a):
    with working_precision(bits or get_precision()):
        return fn(*a)


if __name__ == "__main__":
    sys.exit(main())
