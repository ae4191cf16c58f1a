"""End-to-end acceptance checks.

Each test evaluates every sub-check of one criterion, appends a single
"[PASS]" or "[FAIL]" line to the acceptance log (printed in the terminal
summary), and then asserts. A failing sub-check is named in the line.
"""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

from selbergcert.certify import run_certificate
from selbergcert.geometry import (
    bolza_l3_below_twice_systole,
    builtin_geodesics,
    kaleidoscopic_threshold,
    klein_initial_bound,
    ros_cap,
    thresholds,
)
from selbergcert.interval import get_precision

import test_exactpoly
import test_interval
import test_testfn
import test_trace
from helpers import exact, matches_printed, within

PRINTED = {
    "lem_f0": ("8.95625495601736", "<", "8.957"),
    "lem_f1": ("8.96613860725115", "<", "8.967"),
    "klein_less6": ("4.47792022244533", "<", "6"),
    "klein_less12": ("11.7388106033274", "<", "12"),
    "klein_more7": ("7.70518139471331", ">", "7"),
    "genus2_a": ("5.99284669868481", "<", "6"),
    "genus2_b": ("6.81805544044067", "<", "7"),
    "genus2_c": ("6.98887942266988", "<", "7"),
    "bolza": ("3.53617865617108", "<", "4"),
}


def record(log, number: int, title: str, checks: list[tuple[str, bool]]):
    failed = [label for label, ok in checks if not ok]
    status = "PASS" if not failed else "FAIL"
    line = f"[{status}] criterion {number}: {title}"
    if failed:
        line += " -- failing: " + "; ".join(failed)
    log.append(line)
    print(line)
    assert not failed, line


def attempt(fn, *args) -> bool:
    try:
        fn(*args)
    except AssertionError:
        return False
    return True


def test_criterion_1_reference_bundle(reference_bundle, bundle_seconds, acceptance_log):
    checks = []
    reports = {r.certificate: r for r in reference_bundle.reports}
    checks.append(("nine certificates ran", sorted(reports) == sorted(PRINTED)))
    for name, (printed, comp, t) in PRINTED.items():
        r = reports[name]
        checks.append((f"{name} verified", r.verified))
        checks.append((f"{name} compares {comp} {t}", r.expected == (comp, Fraction(t))))
        enc = r.bound_enclosure
        if enc is None:
            checks.append((f"{name} has an enclosure", False))
            continue
        checks.append((f"{name} width <= 1e-6", exact(enc.hi) - exact(enc.lo) <= Fraction(1, 10**6)))
        checks.append((f"{name} encloses printed {printed}", r.reference == printed and bool(r.reference_contained)))
    checks.append((f"runtime {bundle_seconds:.0f}s under 5 minutes", bundle_seconds < 300))
    record(acceptance_log, 1, "bundle paper verifies nine certificates containing the printed values", checks)


def test_criterion_2_compositions(reference_bundle, acceptance_log):
    analyses = {a.name: a for a in reference_bundle.analyses}
    expected = {
        "genus3": "m_1(S) <= 8",
        "klein": "m_1(K) = 8",
        "genus2": "m_1(S) <= 6",
        "bolza": "m_1(B) <= 3",
    }
    checks = []
    for name, conclusion in expected.items():
        a = analyses.get(name)
        checks.append((f"{name} analysis present", a is not None))
        if a is None:
            continue
        checks.append((f"{name} concludes {conclusion}", a.holds and a.conclusion.startswith(conclusion)))
        checks.append((f"{name} lists its axioms", len(a.axioms) > 0 and all(x.citation for x in a.axioms)))
        checks.append((f"{name} has no coverage gap", not a.uncovered))
    bolza = analyses.get("bolza")
    checks.append(("bolza equality uses the cited lower bound",
                   bolza is not None and "bolza_lower" in {x.key for x in bolza.axioms}))
    record(acceptance_log, 2, "composed conclusions with explicit axiom lists", checks)


def test_criterion_3_thresholds(acceptance_log):
    g3, g2 = thresholds(3), thresholds(2)
    tol = "0.00001"
    checks = [
        ("1/4 + eps_3 >= 1.044071", exact(g3.quarter_plus_eps.lo) >= Fraction("1.044071")),
        ("1/4 + eps_3 within 1e-5 of 1.044071", within(g3.quarter_plus_eps, "1.044071", tol)),
        ("genus-2 threshold >= 1.672643", exact(g2.quarter_plus_eps.lo) >= Fraction("1.672643")),
        ("genus-2 threshold within 1e-5 of 1.672643", within(g2.quarter_plus_eps, "1.672643", tol)),
        ("kaleidoscopic (2,3,7) within 1e-5 of 7.854527", within(kaleidoscopic_threshold(2, 3, 7), "7.854527", tol)),
        ("Klein initial bound within 1e-5 of 0.719512", within(klein_initial_bound(), "0.719512", tol)),
        ("Ros cap within 1e-5 of 2.708497", within(ros_cap(), "2.708497", tol)),
        ("Klein initial bound exceeds 0.71", exact(klein_initial_bound().lo) > Fraction("0.71")),
    ]
    record(acceptance_log, 3, "threshold constants reproduced to 1e-5", checks)


def test_criterion_4_geodesics(acceptance_log):
    (k1, _), (k2, _) = builtin_geodesics("klein").enclosures()
    ok, l3, twice = bolza_l3_below_twice_systole()
    checks = [
        ("Klein systole 3.935946", matches_printed(k1, "3.935946")),
        ("Klein second length 5.208017", matches_printed(k2, "5.208017")),
        ("Bolza l3 5.828071", matches_printed(l3, "5.828071")),
        ("Bolza 2 l1 6.114284", matches_printed(twice, "6.114284")),
        ("l3 < 2 l1 certified", ok and l3.hi < twice.lo),
    ]
    record(acceptance_log, 4, "geodesic constants", checks)


def test_criterion_5_property_suites(certificates, acceptance_log):
    checks = [
        ("Hermite-Laguerre identity n <= 20",
         all(attempt(test_exactpoly.test_hermite_laguerre_identity, n) for n in range(21))),
        ("Sturm counts vs 200 constructed-root polynomials", attempt(test_exactpoly.test_sturm_against_constructed_roots)),
        ("Fourier pair numeric oracle N <= 6",
         all(attempt(test_testfn.test_fourier_pair_numeric_oracle, n) for n in range(7))),
        ("tail identity q' - q/2 = v on every certificate",
         attempt(test_testfn.test_tail_identity_every_certificate, certificates)),
        ("quadrature vs 1 - exp(-T^2/2)", all(attempt(test_trace.test_closed_form_without_tanh, T) for T in (1, 5, 10))),
        ("interval containment, 10^3 samples per function",
         all(attempt(test_interval.test_point_sampling_containment, f) for f in sorted(test_interval.ORACLES))),
    ]
    record(acceptance_log, 5, "property suites", checks)


def _nested(inner, outer) -> bool:
    return outer.lo <= inner.lo and inner.hi <= outer.hi


def test_criterion_6_robustness(certificates, reports, acceptance_log):
    checks = []
    bits = get_precision()
    for name, cert in certificates.items():
        short = run_certificate(cert.with_quadrature(cutoff_T=Fraction(50)))
        checks.append((f"{name} verified at T = 50", short.verified))
        fine = run_certificate(cert.with_quadrature(tolerance=cert.quadrature.tolerance / 10), 2 * bits)
        base = reports[name].bound_enclosure
        checks.append((f"{name} verified at {2 * bits} bits", fine.verified))
        checks.append((f"{name} enclosure nests inside the {bits}-bit one",
                       fine.bound_enclosure is not None and base is not None and _nested(fine.bound_enclosure, base)))
    f0 = certificates["lem_f0"]
    for side in ("u", "v"):
        key = f"{side}_double_zeros"
        zeros = getattr(f0.spec, key)
        for i in range(len(zeros)):
            moved = list(zeros)
            moved[i] += Fraction(5)
            bad = replace(f0, spec=replace(f0.spec, **{key: tuple(moved)}))
            for variant, cert in (("declared c", bad), ("computed c", replace(bad, declared_c=None))):
                r = run_certificate(cert)
                checks.append((f"f0 {side}-zero {i} + 5.0 ({variant}) not verified", r.verdict in ("failed", "inconclusive")))
    record(acceptance_log, 6, "cutoff, precision and corruption robustness", checks)
