"""Line-oriented certificate files.

A file has the sections [certificate], [u], [v] and optionally [geodesics]
and [quadrature]. Each non-blank line is ``key = value``; ``#`` starts a
comment. Every decimal literal is read as an exact rational.

    [certificate]
    name = lem_f0
    genus = 3
    direction = upper
    window = 1.04 1.857
    expected = < 8.957
    systole_floor = 0
    shape = min_at_endpoints

    [u]
    simple_zeros = 0
    double_zeros = 42.26, 79.78

    [v]
    double_zeros = 4.57, 11.43, 21.45, 35.34, 54.4
    values = (0.79, 1)

Optional [certificate] keys: ``coefficients`` (must equal the constraint
count), ``declared_c`` (a rational stand-in for c that the computed minimum
must dominate) and ``reference`` (a decimal expected inside the enclosure).
"""

from __future__ import annotations

from fractions import Fraction
from importlib import resources

from .certify import Certificate, CertificateError
from .geometry import ExpressionError, GeodesicEntry, GeodesicSet, builtin_geodesics
from .testfn import ConstraintSpec
from .trace import QuadratureConfig


class CertificateFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


SECTIONS = {
    "certificate": (
        "name", "genus", "direction", "window", "expected", "systole_floor", "shape",
        "coefficients", "declared_c", "reference",
    ),
    "u": ("simple_zeros", "double_zeros", "values"),
    "v": ("simple_zeros", "double_zeros", "values"),
    "geodesics": ("builtin", "entries"),
    "quadrature": ("cutoff", "tolerance", "max_depth"),
}
REQUIRED_SECTIONS = ("certificate", "u", "v")
REQUIRED_KEYS = ("name", "genus", "direction", "window", "expected")


def _rational(text: str, line: int) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise CertificateFileError(f"not a rational literal: {text.strip()!r}", line) from None


def _rational_list(text: str, line: int) -> tuple[Fraction, ...]:
    items = [t for t in text.replace(",", " ").split() if t]
    return tuple(_rational(t, line) for t in items)


def _pairs(text: str, line: int) -> list[str]:
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise CertificateFileError(f"expected '(a, b)', got {chunk!r}", line)
        out.append(chunk[1:-1])
    return out


def _values(text: str, line: int) -> tuple[tuple[Fraction, Fraction], ...]:
    out = []
    for inner in _pairs(text, line):
        parts = inner.split(",")
        if len(parts) != 2:
            raise CertificateFileError(f"expected a (point, value) pair, got ({inner})", line)
        out.append((_rational(parts[0], line), _rational(parts[1], line)))
    return tuple(out)


def _entries(text: str, line: int) -> tuple[GeodesicEntry, ...]:
    out = []
    for inner in _pairs(text, line):
        expr, sep, mult = inner.rpartition(",")
        if not sep:
            raise CertificateFileError(f"expected (expression, multiplicity), got ({inner})", line)
        try:
            m = int(mult.strip())
            out.append(GeodesicEntry(expr.strip(), m))
        except (ValueError, ExpressionError) as exc:
            raise CertificateFileError(str(exc), line) from None
    return tuple(out)


def _tokenize(text: str):
    """Yield (section, key, value, line) tuples, rejecting unknown names."""
    section = None
    seen: dict[str, set] = {}
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("["):
            if not body.endswith("]"):
                raise CertificateFileError(f"malformed section header {body!r}", n)
            section = body[1:-1].strip()
            if section not in SECTIONS:
                raise CertificateFileError(f"unknown section [{section}]", n)
            if section in seen:
                raise CertificateFileError(f"duplicate section [{section}]", n)
            seen[section] = set()
            yield section, None, None, n
            continue
        if section is None:
            raise CertificateFileError("key outside of any section", n)
        key, eq, value = body.partition("=")
        if not eq:
            raise CertificateFileError(f"expected 'key = value', got {body!r}", n)
        key = key.strip()
        if key not in SECTIONS[section]:
            raise CertificateFileError(f"unknown key {key!r} in [{section}]", n)
        if key in seen[section]:
            raise CertificateFileError(f"duplicate key {key!r}", n)
        seen[section].add(key)
        yield section, key, value.strip(), n
    for s in REQUIRED_SECTIONS:
        if s not in seen:
            raise CertificateFileError(f"missing section [{s}]")


def parse_certificate(text: str) -> Certificate:
    fields: dict[str, dict[str, tuple[str, int]]] = {}
    for section, key, value, n in _tokenize(text):
        fields.setdefault(section, {})
        if key is not None:
            fields[section][key] = (value, n)

    head = fields["certificate"]
    for k in REQUIRED_KEYS:
        if k not in head:
            raise CertificateFileError(f"[certificate] is missing {k!r}")

    def get(k):
        return head[k]

    name = get("name")[0]
    text_g, ln = get("genus")
    try:
        genus = int(text_g)
    except ValueError:
        raise CertificateFileError(f"genus must be an integer, got {text_g!r}", ln) from None
    direction = get("direction")[0]
    wtext, ln = get("window")
    window = _rational_list(wtext, ln)
    if len(window) != 2:
        raise CertificateFileError("window needs two numbers 'a b'", ln)
    if not window[0] < window[1]:
        raise CertificateFileError("a < b violated", ln)
    etext, ln = get("expected")
    comp, t = etext[:1], etext[1:]
    if not comp or comp not in "<>":
        raise CertificateFileError(f"expected must look like '< t' or '> t', got {etext!r}", ln)
    expected = (comp, _rational(t, ln))
    shape_default = "min_at_endpoints" if direction == "upper" else "max_decreasing"
    shape = head.get("shape", (shape_default, 0))[0]
    systole_floor = _rational(*head["systole_floor"]) if "systole_floor" in head else Fraction(0)
    declared_c = _rational(*head["declared_c"]) if "declared_c" in head else None
    reference = None
    if "reference" in head:
        reference = head["reference"][0]
        _rational(reference, head["reference"][1])

    def side(sec):
        f = fields.get(sec, {})
        return {
            f"{sec}_simple_zeros": _rational_list(*f["simple_zeros"]) if "simple_zeros" in f else (),
            f"{sec}_double_zeros": _rational_list(*f["double_zeros"]) if "double_zeros" in f else (),
            f"{sec}_values": _values(*f["values"]) if "values" in f else (),
        }

    spec = ConstraintSpec(**side("u"), **side("v"))
    if "coefficients" in head:
        ctext, ln = head["coefficients"]
        try:
            declared = int(ctext)
        except ValueError:
            raise CertificateFileError(f"coefficients must be an integer, got {ctext!r}", ln) from None
        if declared != spec.constraint_count:
            raise CertificateFileError(
                f"constraint-count mismatch: {spec.constraint_count} constraint rows, {declared} declared", ln
            )

    geodesics = None
    if "geodesics" in fields:
        g = fields["geodesics"]
        if "builtin" in g and "entries" in g:
            raise CertificateFileError("use either builtin or entries in [geodesics]", g["entries"][1])
        try:
            if "builtin" in g:
                geodesics = builtin_geodesics(g["builtin"][0])
            elif "entries" in g:
                geodesics = GeodesicSet("custom", _entries(*g["entries"]))
        except ValueError as exc:
            line = (g.get("builtin") or g.get("entries"))[1]
            raise CertificateFileError(str(exc), line) from None

    quad = QuadratureConfig()
    if "quadrature" in fields:
        q = fields["quadrature"]
        kw = {}
        if "cutoff" in q:
            kw["cutoff_T"] = _rational(*q["cutoff"])
        if "tolerance" in q:
            kw["tolerance"] = _rational(*q["tolerance"])
        if "max_depth" in q:
            try:
                kw["max_depth"] = int(q["max_depth"][0])
            except ValueError:
                raise CertificateFileError("max_depth must be an integer", q["max_depth"][1]) from None
        try:
            quad = QuadratureConfig(**kw)
        except ValueError as exc:
            raise CertificateFileError(str(exc)) from None

    try:
        return Certificate(
            name=name,
            genus=genus,
            direction=direction,
            window=window,
            spec=spec,
            systole_floor=systole_floor,
            geodesics=geodesics,
            shape_mode=shape,
            expected=expected,
            quadrature=quad,
            declared_c=declared_c,
            reference=reference,
        )
    except CertificateError as exc:
        raise CertificateFileError(str(exc)) from None


def format_rational(x: Fraction) -> str:
    """Shortest exact spelling: a decimal when the expansion terminates, else p/q."""
    x = Fraction(x)
    d = x.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    k = max(twos, fives)
    if k == 0:
        return str(x.numerator)
    scaled = abs(x.numerator) * (10**k // x.denominator)
    digits = str(scaled).rjust(k + 1, "0")
    text = f"{digits[:-k]}.{digits[-k:]}".rstrip("0").rstrip(".")
    return ("-" if x < 0 else "") + text


def serialize_certificate(cert: Certificate) -> str:
    fr = format_rational
    lines = [
        "[certificate]",
        f"name = {cert.name}",
        f"genus = {cert.genus}",
        f"direction = {cert.direction}",
        f"window = {fr(cert.window[0])} {fr(cert.window[1])}",
        f"expected = {cert.expected[0]} {fr(cert.expected[1])}",
        f"systole_floor = {fr(cert.systole_floor)}",
        f"shape = {cert.shape_mode}",
        f"coefficients = {cert.spec.constraint_count}",
    ]
    if cert.declared_c is not None:
        lines.append(f"declared_c = {fr(cert.declared_c)}")
    if cert.reference is not None:
        lines.append(f"reference = {cert.reference}")
    for sec in ("u", "v"):
        lines += ["", f"[{sec}]"]
        simple = getattr(cert.spec, f"{sec}_simple_zeros")
        double = getattr(cert.spec, f"{sec}_double_zeros")
        values = getattr(cert.spec, f"{sec}_values")
        if simple:
            lines.append("simple_zeros = " + ", ".join(fr(z) for z in simple))
        if double:
            lines.append("double_zeros = " + ", ".join(fr(z) for z in double))
        if values:
            lines.append("values = " + "; ".join(f"({fr(p)}, {fr(v)})" for p, v in values))
    if cert.geodesics is not None:
        lines += ["", "[geodesics]"]
        g = cert.geodesics
        if g.surface in ("klein", "bolza") and g == builtin_geodesics(g.surface):
            lines.append(f"builtin = {g.surface}")
        else:
            lines.append("entries = " + "; ".join(f"({e.expr}, {e.multiplicity})" for e in g.entries))
    q = cert.quadrature
    lines += [
        "",
        "[quadrature]",
        f"cutoff = {fr(q.cutoff_T)}",
        f"tolerance = {fr(q.tolerance)}",
        f"max_depth = {q.max_depth}",
    ]
    return "\n".join(lines) + "\n"


def load_certificate(path) -> Certificate:
    with open(path, encoding="utf-8") as fh:
        return parse_certificate(fh.read())


EMBEDDED = (
    "lem_f0", "lem_f1",
    "klein_less6", "klein_less12", "klein_more7",
    "genus2_a", "genus2_b", "genus2_c",
    "bolza",
)


def embedded_text(name: str) -> str:
    if name not in EMBEDDED:
        raise KeyError(f"no embedded certificate named {name!r}")
    return resources.files("selbergcert").joinpath("certificates").joinpath(f"{name}.cert").read_text("utf-8")


def embedded_certificates() -> dict[str, Certificate]:
    return {n: parse_certificate(embedded_text(n)) for n in EMBEDDED}
