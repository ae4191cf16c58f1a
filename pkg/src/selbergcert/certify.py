"""Run bound certificates and compose them into multiplicity conclusions.

A certificate names a genus, an eigenvalue window [a, b], zero placements
for the test function and the comparison it should prove. Running it
checks every hypothesis of the counting lemma exactly, encloses

    bound = (I + G - fhat(i/2)) / c

and compares the enclosure against the threshold. For an upper certificate
the number of eigenvalues in [a, b] (with multiplicity) is at most the bound;
for a lower certificate it is at least the bound.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .exactpoly import to_rational
from .geometry import (
    GeodesicSet,
    bolza_l3_below_twice_systole,
    kaleidoscopic_index_bound,
    kaleidoscopic_threshold,
    klein_initial_bound,
    thresholds,
)
from .interval import Interval, format_interval, get_precision, working_precision
from .signcheck import (
    NONNEGATIVE,
    NONPOSITIVE,
    SignVerdict,
    verify_fhat_max_decreasing,
    verify_fhat_min,
    verify_one_signed_ray,
    verify_tail_sign,
)
from .testfn import ConstraintSpec, SingularSystemError, build_test_function
from .trace import (
    QuadratureConfig,
    TermEnclosures,
    geometric_term,
    half_line_integral,
    spectral_constant,
)

QUARTER = Fraction(1, 4)

VERIFIED = "verified"
FAILED = "failed"
INCONCLUSIVE = "inconclusive"


class CertificateError(ValueError):
    """A certificate violates its structural invariants."""


def _mpfr_fraction(x) -> Fraction:
    n, d = x.as_integer_ratio()
    return Fraction(int(n), int(d))


@dataclass(frozen=True)
class Certificate:
    name: str
    genus: int
    direction: str
    window: tuple[Fraction, Fraction]
    spec: ConstraintSpec
    systole_floor: Fraction = Fraction(0)
    geodesics: GeodesicSet | None = None
    shape_mode: str = "min_at_endpoints"
    expected: tuple[str, Fraction] = ("<", Fraction(1))
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    declared_c: Fraction | None = None
    reference: str | None = None

    def __post_init__(self):
        a, b = (to_rational(x) for x in self.window)
        object.__setattr__(self, "window", (a, b))
        object.__setattr__(self, "systole_floor", to_rational(self.systole_floor))
        comp, t = self.expected
        object.__setattr__(self, "expected", (comp, to_rational(t)))
        if self.declared_c is not None:
            object.__setattr__(self, "declared_c", to_rational(self.declared_c))
        if self.genus < 2:
            raise CertificateError("genus must be at least 2")
        if not a < b:
            raise CertificateError("a < b violated")
        if not a > QUARTER:
            raise CertificateError("window must start above 1/4")
        if self.direction not in ("upper", "lower"):
            raise CertificateError(f"unknown direction {self.direction!r}")
        if comp not in ("<", ">"):
            raise CertificateError(f"unknown comparator {comp!r}")
        if self.expected[1] <= 0:
            raise CertificateError("expected threshold must be positive")
        want_comp, want_shape = ("<", "min_at_endpoints") if self.direction == "upper" else (">", "max_decreasing")
        if comp != want_comp:
            raise CertificateError(f"a {self.direction} certificate must use '{want_comp}'")
        if self.shape_mode != want_shape:
            raise CertificateError(f"a {self.direction} certificate requires shape={want_shape}")
        if self.systole_floor < 0:
            raise CertificateError("systole_floor must be non-negative")
        if self.declared_c is not None and self.declared_c <= 0:
            raise CertificateError("declared_c must be positive")
        if self.spec.constraint_count < 1:
            raise CertificateError("at least one constraint is required")

    @property
    def threshold(self) -> Fraction:
        return self.expected[1]

    @property
    def ray_sign(self) -> int:
        return NONPOSITIVE if self.direction == "upper" else NONNEGATIVE

    @property
    def tail_sign(self) -> int:
        return NONNEGATIVE if self.direction == "upper" else NONPOSITIVE

    def with_quadrature(self, **changes) -> "Certificate":
        return replace(self, quadrature=replace(self.quadrature, **changes))


@dataclass(frozen=True)
class BoundReport:
    certificate: str
    direction: str
    genus: int
    window: tuple[Fraction, Fraction]
    expected: tuple[str, Fraction]
    verdict: str
    bound_enclosure: Interval | None
    components: TermEnclosures | None
    c: Interval | None
    sign_verdicts: tuple[SignVerdict, ...]
    wall_notes: tuple[str, ...]
    precision: int
    reference: str | None = None
    error: str | None = None

    @property
    def verified(self) -> bool:
        return self.verdict == VERIFIED

    @property
    def integer_bound(self) -> int | None:
        """The integer count bound implied by the enclosure (upper: floor(hi), lower: ceil(lo))."""
        if self.bound_enclosure is None or not self.verified:
            return None
        if self.direction == "upper":
            return math.floor(_mpfr_fraction(self.bound_enclosure.hi))
        return math.ceil(_mpfr_fraction(self.bound_enclosure.lo))

    @property
    def reference_contained(self) -> bool | None:
        if self.reference is None or self.bound_enclosure is None:
            return None
        return self.bound_enclosure.contains(Fraction(self.reference))

    def statement(self) -> str:
        a, b = self.window
        comp, t = self.expected
        word = "at most" if self.direction == "upper" else "at least"
        return (f"the number of eigenvalues in [{_dec(a)}, {_dec(b)}], counted with multiplicity, "
                f"is {word} the bound, so it is {comp} {_dec(t)}")


def _dec(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    k = 0
    while d % 10 == 0 or d % 2 == 0 or d % 5 == 0:
        if d % 10 == 0:
            d //= 10
        elif d % 2 == 0:
            d //= 2
        else:
            d //= 5
        k += 1
        if d == 1:
            break
    if d == 1:
        s = f"{float(x):.{k}f}".rstrip("0").rstrip(".")
        if Fraction(s) == x:
            return s
    return f"{x.numerator}/{x.denominator}"


def _compare(direction: str, bound: Interval, t: Fraction) -> str:
    lo, hi = _mpfr_fraction(bound.lo), _mpfr_fraction(bound.hi)
    if direction == "upper":
        if hi < t:
            return VERIFIED
        return FAILED if lo >= t else INCONCLUSIVE
    if lo > t:
        return VERIFIED
    return FAILED if hi <= t else INCONCLUSIVE


def run_certificate(cert: Certificate, precision: int | None = None) -> BoundReport:
    """Verify every hypothesis of the counting lemma and enclose the resulting bound."""
    bits = precision or get_precision()
    with working_precision(bits):
        return _run(cert, bits)


def _run(cert: Certificate, bits: int) -> BoundReport:
    verdicts: list[SignVerdict] = []
    notes: list[str] = []

    def report(verdict, bound=None, terms=None, c=None, error=None):
        return BoundReport(
            certificate=cert.name,
            direction=cert.direction,
            genus=cert.genus,
            window=cert.window,
            expected=cert.expected,
            verdict=verdict,
            bound_enclosure=bound,
            components=terms,
            c=c,
            sign_verdicts=tuple(verdicts),
            wall_notes=tuple(notes),
            precision=bits,
            reference=cert.reference,
            error=error,
        )

    try:
        pair = build_test_function(cert.spec)
    except SingularSystemError as exc:
        return report(FAILED, error=f"construction failed: {exc}")
    notes.append(f"{len(pair.s)} coefficients, deg u = {pair.u.degree}, deg v = {pair.v.degree}")

    a, b = cert.window
    verdicts.append(
        verify_one_signed_ray(pair.u, cert.systole_floor, cert.ray_sign, cert.spec.u_double_zeros)
    )
    if cert.geodesics is not None and len(cert.geodesics):
        sys_enc = cert.geodesics.systole()
        ok = sys_enc.lo > cert.systole_floor
        verdicts.append(
            SignVerdict(
                "systole_floor",
                bool(ok),
                f"systole of the declared set {format_interval(sys_enc)} vs floor {_dec(cert.systole_floor)}",
            )
        )
    verdicts.append(verify_tail_sign(pair, b, cert.tail_sign))
    if cert.shape_mode == "min_at_endpoints":
        shape, c = verify_fhat_min(pair, a, b)
    else:
        shape, c = verify_fhat_max_decreasing(pair, a, b)
    verdicts.append(shape)
    if cert.direction == "upper" and not c.lo > 0:
        verdicts.append(SignVerdict("c_positive", False, f"minimum {format_interval(c)} is not provably positive"))
    if cert.declared_c is not None:
        dc = cert.declared_c
        if cert.direction == "upper":
            ok = c.lo >= dc
            rel = ">="
        else:
            ok = c.hi <= dc
            rel = "<="
        verdicts.append(
            SignVerdict("declared_c", bool(ok), f"c = {format_interval(c)} {rel} declared {_dec(dc)}")
        )
        c = Interval(dc)

    if not all(v.holds for v in verdicts):
        return report(FAILED, c=c)

    res = half_line_integral(pair.v, cert.quadrature)
    if not res.converged:
        notes.append(f"quadrature stopped at width {res.width:.3e} above the target")
    integral = res.enclosure * (2 * (cert.genus - 1))
    terms = TermEnclosures(
        integral_term=integral,
        geometric_term=geometric_term(pair, cert.geodesics),
        spectral_constant=spectral_constant(pair),
        genus=cert.genus,
        quadrature_width=res.width,
        quadrature_pieces=res.pieces,
    )
    notes.append(f"quadrature width {res.width:.3e} over {res.pieces} pieces, cutoff T = {_dec(cert.quadrature.cutoff_T)}")
    numerator = terms.integral_term + terms.geometric_term - terms.spectral_constant
    bound = numerator / c
    verdict = _compare(cert.direction, bound, cert.threshold)
    return report(verdict, bound, terms, c)


def _worker(args):
    cert, bits = args
    return run_certificate(cert, bits)


def run_many(certs: Sequence[Certificate], precision: int | None = None, jobs: int = 1) -> list[BoundReport]:
    """Run certificates (optionally in worker processes); results come back in name order."""
    bits = precision or get_precision()
    if jobs > 1 and len(certs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_worker, [(c, bits) for c in certs]))
    else:
        reports = [run_certificate(c, bits) for c in certs]
    return sorted(reports, key=lambda r: r.certificate)


# ----------------------------------------------------------------------------
# Composition
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Axiom:
    """An external fact used in a composition. It is never recomputed here."""

    key: str
    statement: str
    citation: str


@dataclass(frozen=True)
class ComputedFact:
    statement: str
    holds: bool
    detail: str = ""


@dataclass(frozen=True)
class AnalysisReport:
    name: str
    conclusion: str
    holds: bool
    certificates: tuple[BoundReport, ...]
    axioms: tuple[Axiom, ...]
    facts: tuple[ComputedFact, ...]
    dependency_tree: tuple[str, ...]
    uncovered: tuple[tuple[Fraction, Fraction], ...] = ()
    context: tuple[str, ...] = ()


AXIOMS = {
    "nodal_small": Axiom(
        "nodal_small",
        "If lambda_1(S) < 1/4 + eps_g, where lambda_0 of a hyperbolic disk of area 2 pi (g-1) is 1/4 + eps_g, "
        "then m_1(S) <= 2g. If an eigenvalue is <= 1/4 + delta_g (disk of area 4 pi (g-1)), its multiplicity is at most 2g - 1.",
        "Sevennec's cup-product argument with Faber-Krahn comparison of nodal domains (compare Otal; Otal-Rosas)",
    ),
    "ros": Axiom(
        "ros",
        "Every closed hyperbolic surface of genus 3 has lambda_1 <= 2(4 - sqrt 7).",
        "Ros, first eigenvalue bound in genus 3 (16(4 - sqrt 7) pi / area with Gauss-Bonnet)",
    ),
    "yang_yau": Axiom(
        "yang_yau",
        "Every closed hyperbolic surface of genus 2 has lambda_1 <= 4.",
        "Yang-Yau with gonality floor((g+3)/2) (as observed by El Soufi-Ilias)",
    ),
    "klein_isometry": Axiom(
        "klein_isometry",
        "Isom(K) = PGL(2, Z/7Z); its irreducible real representations have dimensions 1, 1, 6, 6, 6, 7, 7, 8, 8.",
        "character table of PGL(2,7) (Cook, Appendix B)",
    ),
    "kaleidoscopic": Axiom(
        "kaleidoscopic",
        "On a (p,q,r)-kaleidoscopic surface, 1-dimensional real representations of the isometry group only occur "
        "for nontrivial eigenvalues >= 1/4 + pi^2 / (16 arcsinh^2 sqrt((r/2)(1 - 1/p - 1/q - 1/r))), and only for "
        "lambda_j with j >= area / (2 pi r (1 - 1/p - 1/q - 1/r)) - 2 in the index form.",
        "nodal domains of reflection-symmetric eigenfunctions are unions of triangles (Faber-Krahn on a disk)",
    ),
    "klein_geodesics": Axiom(
        "klein_geodesics",
        "The Klein quartic has 21 systoles of length 8 arccosh(1/2 + cos(2 pi/7)) and at least 28 primitive geodesics "
        "of length 6 arccosh(8 cos^4(pi/7) - 6 cos^2(pi/7) + 1); these are the shortest two lengths.",
        "Schmutz; Vogeler, Table C.1; Dutour Sikiric-Tozzi (computer check)",
    ),
    "bolza_geodesics": Axiom(
        "bolza_geodesics",
        "The Bolza surface has 12, 12 and 24 primitive geodesics of lengths 2 arccosh(1 + sqrt 2), "
        "2 arccosh(3 + 2 sqrt 2), 2 arccosh(5 + 3 sqrt 2).",
        "octagon tiling of the (2,3,8) surface; Aurich-Steiner length spectrum",
    ),
    "bolza_lambda1": Axiom(
        "bolza_lambda1",
        "lambda_1(B) lies in [1, 3.9] (numerically lambda_1(B) = 3.8388...).",
        "Strohmaier-Uski eigenvalue computation; Aurich-Steiner",
    ),
    "bolza_lower": Axiom(
        "bolza_lower",
        "m_1(B) >= 3: neither 1- nor 2-dimensional irreducible representations of Isom(B) occur at lambda_1(B).",
        "Cook (correcting Jenni); representation theory of Isom(B) with the kaleidoscopic index bound",
    ),
}


def uncovered_subintervals(windows: Sequence[tuple[Fraction, Fraction]], lo: Fraction, hi: Fraction):
    """Parts of [lo, hi] not covered by the closed windows."""
    gaps = []
    cur = lo
    for a, b in sorted(windows):
        if b < cur:
            continue
        if a > cur:
            gaps.append((cur, min(a, hi)))
        cur = max(cur, b)
        if cur >= hi:
            break
    if cur < hi:
        gaps.append((cur, hi))
    return [(a, b) for a, b in gaps if a < b or (a == b and a != cur)]


def _find(reports: Sequence[BoundReport], name: str) -> BoundReport:
    for r in reports:
        if r.certificate == name:
            return r
    raise KeyError(f"bundle is missing certificate {name!r}")


def _cert_line(r: BoundReport) -> str:
    enc = format_interval(r.bound_enclosure) if r.bound_enclosure is not None else "n/a"
    return f"{r.certificate}: {r.verdict}, bound {enc} {r.expected[0]} {_dec(r.expected[1])}"


def analyse_genus3(reports: Sequence[BoundReport]) -> AnalysisReport:
    f0, f1 = _find(reports, "lem_f0"), _find(reports, "lem_f1")
    th = thresholds(3)
    eps_lo = _mpfr_fraction(th.quarter_plus_eps.lo)
    ros_hi = _mpfr_fraction(th.cap("ros").hi)
    windows = [f0.window, f1.window]
    gaps = uncovered_subintervals(windows, eps_lo, ros_hi)
    ints = [r.integer_bound for r in (f0, f1)]
    facts = [
        ComputedFact("1/4 + eps_3 >= 1.044071", eps_lo >= Fraction("1.044071"), format_interval(th.quarter_plus_eps)),
        ComputedFact("Ros cap 2(4 - sqrt 7) <= 2.71", ros_hi <= Fraction("2.71"), format_interval(th.cap("ros"))),
        ComputedFact(
            "windows cover [1/4 + eps_3, 2(4 - sqrt 7)]",
            not gaps,
            "uncovered: " + ", ".join(f"[{float(a)}, {float(b)}]" for a, b in gaps) if gaps else "no gaps",
        ),
    ]
    holds = f0.verified and f1.verified and all(f.holds for f in facts) and all(i is not None and i <= 8 for i in ints)
    tree = (
        "m_1(S) <= 8 for every closed hyperbolic surface of genus 3",
        "  case lambda_1 < 1/4 + eps_3: m_1 <= 2g = 6  [axiom nodal_small]",
        f"  case lambda_1 in {_win(f0.window)}: m_1 <= {ints[0]}  [{_cert_line(f0)}]",
        f"  case lambda_1 in {_win(f1.window)}: m_1 <= {ints[1]}  [{_cert_line(f1)}]",
        "  lambda_1 <= 2(4 - sqrt 7) < 2.71  [axiom ros]",
    )
    return AnalysisReport(
        "genus3",
        "m_1(S) <= 8 for genus 3",
        holds,
        (f0, f1),
        (AXIOMS["nodal_small"], AXIOMS["ros"]),
        tuple(facts),
        tree,
        tuple(gaps),
    )


def _win(w) -> str:
    return f"[{_dec(w[0])}, {_dec(w[1])}]"


def analyse_klein(reports: Sequence[BoundReport]) -> AnalysisReport:
    less6, less12, more7 = (_find(reports, n) for n in ("klein_less6", "klein_less12", "klein_more7"))
    kal = kaleidoscopic_threshold(2, 3, 7)
    init = klein_initial_bound()
    ros = thresholds(3).cap("ros")
    facts = [
        ComputedFact("kaleidoscopic threshold for (2,3,7) > 7.85", kal.lo > Fraction("7.85"), format_interval(kal)),
        ComputedFact("1/4 + (pi / (4 arcsinh sqrt 2))^2 > 0.71", init.lo > Fraction("0.71"), format_interval(init)),
        ComputedFact("Ros cap 2(4 - sqrt 7) < 5.5", ros.hi < Fraction("5.5"), format_interval(ros)),
        ComputedFact(
            "less6 window starts at 0.71 and less12/more7 share [2.575, 5.5]",
            less6.window[0] == Fraction("0.71") and less6.window[1] == less12.window[0] == more7.window[0]
            and less12.window == more7.window,
            f"{_win(less6.window)}, {_win(less12.window)}, {_win(more7.window)}",
        ),
    ]
    ok_certs = less6.verified and less12.verified and more7.verified
    holds = (
        ok_certs
        and all(f.holds for f in facts)
        and less6.expected[1] <= 6
        and less12.expected[1] <= 12
        and more7.expected[1] >= 7
    )
    tree = (
        "m_1(K) = 8 for the Klein quartic",
        "  eigenvalues in (0, 7.85] have multiplicity >= 6, and > 8 forces >= 12  [axioms klein_isometry, kaleidoscopic; fact 1]",
        "  lambda_1(K) > 1/4 + delta_3 > 0.71  [axiom nodal_small with m_1(K) >= 6 > 2g - 1; fact 2]",
        f"  fewer than 6 eigenvalues in {_win(less6.window)}, so none there: lambda_1(K) > 2.575  [{_cert_line(less6)}]",
        "  lambda_1(K) <= 2(4 - sqrt 7) < 5.5  [axiom ros; fact 3]",
        f"  fewer than 12 in {_win(less12.window)}: a single distinct eigenvalue of multiplicity 6, 7 or 8  [{_cert_line(less12)}]",
        f"  more than 7 in {_win(more7.window)}: multiplicity 8  [{_cert_line(more7)}]",
    )
    return AnalysisReport(
        "klein",
        "m_1(K) = 8",
        holds,
        (less6, less12, more7),
        (AXIOMS["klein_isometry"], AXIOMS["kaleidoscopic"], AXIOMS["nodal_small"], AXIOMS["ros"], AXIOMS["klein_geodesics"]),
        tuple(facts),
        tree,
        context=("numerical value lambda_1(K) = 2.6779 (display only, never used in a verdict)",),
    )


def analyse_genus2(reports: Sequence[BoundReport]) -> AnalysisReport:
    certs = [_find(reports, n) for n in ("genus2_a", "genus2_b", "genus2_c")]
    th = thresholds(2)
    eps_lo = _mpfr_fraction(th.quarter_plus_eps.lo)
    yy_hi = _mpfr_fraction(th.cap("yang_yau").hi)
    gaps = uncovered_subintervals([r.window for r in certs], eps_lo, yy_hi)
    ints = [r.integer_bound for r in certs]
    facts = [
        ComputedFact("1/4 + eps_2 >= 1.672643", eps_lo >= Fraction("1.672643"), format_interval(th.quarter_plus_eps)),
        ComputedFact(
            "windows cover [1/4 + eps_2, 4]",
            not gaps,
            "uncovered: " + ", ".join(f"[{float(a)}, {float(b)}]" for a, b in gaps) if gaps else "no gaps",
        ),
    ]
    holds = all(r.verified for r in certs) and all(f.holds for f in facts) and all(
        i is not None and i <= 6 for i in ints
    )
    tree = ["m_1(S) <= 6 for every closed hyperbolic surface of genus 2",
            "  case lambda_1 < 1/4 + eps_2: m_1 <= 2g = 4  [axiom nodal_small]"]
    for r, i in zip(certs, ints):
        tree.append(f"  case lambda_1 in {_win(r.window)}: m_1 <= {i}  [{_cert_line(r)}]")
    tree.append("  lambda_1 <= 4  [axiom yang_yau]")
    return AnalysisReport(
        "genus2",
        "m_1(S) <= 6 for genus 2",
        holds,
        tuple(certs),
        (AXIOMS["nodal_small"], AXIOMS["yang_yau"]),
        tuple(facts),
        tuple(tree),
        tuple(gaps),
    )


def analyse_bolza(reports: Sequence[BoundReport]) -> AnalysisReport:
    r = _find(reports, "bolza")
    ok_l3, l3, twice = bolza_l3_below_twice_systole()
    idx = kaleidoscopic_index_bound(2, 3, 8, 2)
    facts = [
        ComputedFact("l3 < 2 l1 (so the l3 geodesics are primitive and distinct from doubles of systoles)", ok_l3,
                     f"l3 {format_interval(l3)}, 2 l1 {format_interval(twice)}"),
        ComputedFact("kaleidoscopic index bound for (2,3,8) in genus 2 equals 4", idx == 4, str(idx)),
    ]
    upper = r.integer_bound
    holds = r.verified and all(f.holds for f in facts) and upper is not None and upper <= 3
    tree = (
        "m_1(B) <= 3, hence m_1(B) = 3 with the cited lower bound",
        "  lambda_1(B) in [1, 3.9]  [axiom bolza_lambda1]",
        f"  fewer than 4 eigenvalues in {_win(r.window)}: m_1(B) <= {upper}  [{_cert_line(r)}]",
        "  m_1(B) >= 3  [axiom bolza_lower; fact 2]",
    )
    return AnalysisReport(
        "bolza",
        "m_1(B) <= 3 (= 3 with the cited lower bound)",
        holds,
        (r,),
        (AXIOMS["bolza_lambda1"], AXIOMS["bolza_lower"], AXIOMS["kaleidoscopic"], AXIOMS["bolza_geodesics"]),
        tuple(facts),
        tree,
    )


ANALYSES = {
    "genus3": (("lem_f0", "lem_f1"), analyse_genus3),
    "klein": (("klein_less6", "klein_less12", "klein_more7"), analyse_klein),
    "genus2": (("genus2_a", "genus2_b", "genus2_c"), analyse_genus2),
    "bolza": (("bolza",), analyse_bolza),
}

REFERENCE_SUITE = ("genus3", "klein", "genus2", "bolza")


@dataclass(frozen=True)
class BundleResult:
    name: str
    reports: tuple[BoundReport, ...]
    analyses: tuple[AnalysisReport, ...]

    @property
    def all_verified(self) -> bool:
        return all(r.verified for r in self.reports) and all(a.holds for a in self.analyses)


def run_bundle(name: str, certificates: dict[str, Certificate] | None = None, precision: int | None = None,
               jobs: int = 1) -> BundleResult:
    """Run a named bundle ('genus3', 'klein', 'genus2', 'bolza', or 'paper'/'reference' for all four)."""
    from .certfile import embedded_certificates

    certificates = certificates if certificates is not None else embedded_certificates()
    if name in ("paper", "reference", "all"):
        parts = REFERENCE_SUITE
    elif name in ANALYSES:
        parts = (name,)
    else:
        raise KeyError(f"unknown bundle {name!r}")
    names = [n for p in parts for n in ANALYSES[p][0]]
    reports = run_many([certificates[n] for n in names], precision, jobs)
    analyses = tuple(ANALYSES[p][1](reports) for p in parts)
    order = {n: i for i, n in enumerate(names)}
    reports = sorted(reports, key=lambda r: order[r.certificate])
    return BundleResult(name, tuple(reports), analyses)
