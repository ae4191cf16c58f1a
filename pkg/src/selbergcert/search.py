"""Fast floating-point estimates and a zero-placement search built on them.

Nothing here is rigorous. Estimates use a floating-point linear solve, dense sampling
for the sign screens and fixed-order Gauss-Legendre quadrature. They come
back as FloatEstimate so rigorous code cannot mistake them for enclosures;
a searched certificate must be re-run through run_certificate before its
bound means anything.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .certify import Certificate
from .exactpoly import laguerre_half
from .testfn import ConstraintSpec

# quadrature layout: PIECES panels of NODES Gauss-Legendre nodes on [0, FLOAT_CUTOFF]
FLOAT_CUTOFF = 40.0
PIECES = 160
NODES = 24
SAMPLES = 6000
SIGN_SLACK = 1e-9
SOLVE_DIGITS = 40


class SearchError(RuntimeError):
    """No candidate produced a finite, feasible estimate."""


@dataclass(frozen=True)
class FloatEstimate:
    bound: float
    feasible: bool
    spec_echo: ConstraintSpec
    reason: str = ""

    def better_than(self, other: "FloatEstimate | None", direction: str) -> bool:
        if not self.feasible or not math.isfinite(self.bound):
            return False
        if other is None or not other.feasible:
            return True
        return self.bound < other.bound if direction == "upper" else self.bound > other.bound


def _polyval(coeffs: np.ndarray, y):
    return np.polynomial.polynomial.polyval(y, coeffs)


def float_pair(spec: ConstraintSpec) -> tuple[np.ndarray, np.ndarray]:
    """Monomial float coefficients of (u, v); raises ZeroDivisionError if the system is singular.

    The system is badly conditioned when double zeros cluster, so the solve
    runs in SOLVE_DIGITS-digit floating point before rounding to doubles.
    """
    n = spec.constraint_count
    ub = [laguerre_half(k) for k in range(n)]
    vb = [b if k % 2 == 0 else -b for k, b in enumerate(ub)]
    dub, dvb = [b.derivative() for b in ub], [b.derivative() for b in vb]
    with mpmath.workdps(SOLVE_DIGITS):
        rows, rhs = [], []
        for side, point, order, value in spec.rows():
            basis = (ub if order == 0 else dub) if side == "u" else (vb if order == 0 else dvb)
            x = mpmath.mpf(point.numerator) / point.denominator
            rows.append([mpmath.polyval([_mpf(c) for c in reversed(b.coeffs)], x) if b.coeffs else 0 for b in basis])
            rhs.append(_mpf(value))
        s = mpmath.lu_solve(mpmath.matrix(rows), mpmath.matrix(rhs))
        width = max(len(b.coeffs) for b in ub)
        u = [mpmath.mpf(0)] * width
        v = [mpmath.mpf(0)] * width
        for k in range(n):
            for j, c in enumerate(ub[k].coeffs):
                u[j] += s[k] * _mpf(c)
            for j, c in enumerate(vb[k].coeffs):
                v[j] += s[k] * _mpf(c)
        return np.array([float(c) for c in u]), np.array([float(c) for c in v])


def _mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def _one_signed(coeffs: np.ndarray, r0: float, sign: int) -> bool:
    """Screen sign * p(r^2) exp(-r^2/2) >= 0 for r >= r0 by dense sampling."""
    r = np.linspace(r0, max(r0, 0.0) + FLOAT_CUTOFF, SAMPLES)
    y = r * r
    vals = sign * _polyval(coeffs, y)
    # rounding noise of the evaluation scales with sum |c_k| y^k, not with |p|;
    # near the origin the solve error in the low coefficients dominates
    noise = _polyval(np.abs(coeffs), np.maximum(y, 1.0))
    return bool(np.all(vals >= -SIGN_SLACK * noise))


def _gauss_legendre():
    x, w = np.polynomial.legendre.leggauss(NODES)
    edges = np.linspace(0.0, FLOAT_CUTOFF, PIECES + 1)
    mids, halves = (edges[1:] + edges[:-1]) / 2, (edges[1:] - edges[:-1]) / 2
    nodes = (mids[:, None] + halves[:, None] * x[None, :]).ravel()
    weights = (halves[:, None] * w[None, :]).ravel()
    return nodes, weights


_NODES, _WEIGHTS = _gauss_legendre()


def _geodesic_lengths(cert: Certificate) -> list[tuple[float, int]]:
    if cert.geodesics is None:
        return []
    return [(float(length.mid()), m) for length, m in cert.geodesics.enclosures()]


def estimate_bound(cert: Certificate, spec: ConstraintSpec | None = None) -> FloatEstimate:
    """Float analogue of run_certificate; unsound by design, only for ranking candidates."""
    spec = spec if spec is not None else cert.spec
    try:
        u, v = float_pair(spec)
    except ZeroDivisionError:
        return FloatEstimate(math.nan, False, spec, "singular float system")
    if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
        return FloatEstimate(math.nan, False, spec, "non-finite coefficients")
    a, b = (float(x) for x in cert.window)
    ray = -1 if cert.direction == "upper" else 1
    problems = []
    if not _one_signed(u, float(cert.systole_floor), ray):
        problems.append("u sign screen failed")
    if not _one_signed(v, math.sqrt(b - 0.25), -ray):
        problems.append("v tail screen failed")

    def fhat(lam):
        y = np.asarray(lam) - 0.25
        return _polyval(v, y) * np.exp(-y / 2)

    vals = fhat(np.linspace(a, b, 801))
    if cert.shape_mode == "min_at_endpoints":
        c = min(vals[0], vals[-1])
        if vals.min() < c - 1e-12 * abs(c):
            problems.append("interior minimum in the window")
    else:
        c = vals[0]
        if np.any(np.diff(vals) > 0):
            problems.append("transform not decreasing on the window")
    if c <= 0:
        problems.append("transform not positive on the window")
    if cert.declared_c is not None:
        c = float(cert.declared_c)

    r = _NODES
    integral = float(np.sum(_WEIGHTS * r * _polyval(v, r * r) * np.exp(-r * r / 2) * np.tanh(np.pi * r)))
    I = 2 * (cert.genus - 1) * integral
    G = sum(m * L * _polyval(u, L * L) * math.exp(-L * L / 2) / math.sinh(L / 2)
            for L, m in _geodesic_lengths(cert)) / math.sqrt(2 * math.pi)
    S = _polyval(v, -0.25) * math.exp(0.125)
    bound = (I + G - S) / c if c != 0 else math.nan
    if not math.isfinite(bound):
        problems.append("non-finite bound")
    return FloatEstimate(float(bound), not problems, spec, "; ".join(problems))


# ----------------------------------------------------------------------------
# Zero-placement search
# ----------------------------------------------------------------------------

Slot = tuple[str, int]  # ("u" | "v", index into that side's double zeros)


def all_double_zero_slots(spec: ConstraintSpec) -> list[Slot]:
    return [("u", i) for i in range(len(spec.u_double_zeros))] + [("v", i) for i in range(len(spec.v_double_zeros))]


def _get(spec: ConstraintSpec, slot: Slot) -> Fraction:
    return getattr(spec, f"{slot[0]}_double_zeros")[slot[1]]


def _set(spec: ConstraintSpec, slot: Slot, value: Fraction) -> ConstraintSpec:
    name = f"{slot[0]}_double_zeros"
    zeros = list(getattr(spec, name))
    zeros[slot[1]] = value
    return replace(spec, **{name: tuple(zeros)})


def _round2(x: float) -> Fraction:
    return Fraction(round(x * 100), 100)


def search_zero_placement(
    template: Certificate,
    free: Sequence[Slot] | str = "all",
    budget: int = 400,
    initial_step: float = 1.0,
    min_step: float = 0.01,
    restarts: int = 2,
    seed: int = 0,
) -> Certificate:
    """Coordinate descent over the free double-zero positions, minimizing (upper) or maximizing (lower) the estimate.

    ``free`` lists (side, index) slots into the double-zero tuples, or "all".
    ``budget`` caps the number of estimate evaluations. Candidates live on the
    grid of 2-decimal rationals, so the returned certificate has placements
    in the same style as the embedded ones.
    """
    slots = all_double_zero_slots(template.spec) if free == "all" else list(free)
    if not slots:
        return template
    # declared_c and the reference value belong to the original placement
    template = replace(template, declared_c=None, reference=None)
    direction = template.direction
    rng = random.Random(seed)
    evaluations = 0
    cache: dict[tuple, FloatEstimate] = {}

    def estimate(spec: ConstraintSpec) -> FloatEstimate:
        nonlocal evaluations
        key = tuple(_get(spec, s) for s in slots)
        if key not in cache:
            evaluations += 1
            cache[key] = estimate_bound(template, spec)
        return cache[key]

    def snapped(spec: ConstraintSpec) -> ConstraintSpec:
        for s in slots:
            spec = _set(spec, s, _round2(float(_get(spec, s))))
        return spec

    def descend(spec: ConstraintSpec, best: FloatEstimate | None):
        step = initial_step
        while step >= min_step and evaluations < budget:
            improved = False
            for s in slots:
                for sgn in (1, -1):
                    if evaluations >= budget:
                        break
                    x = float(_get(spec, s)) + sgn * step
                    if x <= 0:
                        continue
                    cand = _set(spec, s, _round2(x))
                    est = estimate(cand)
                    if est.better_than(best, direction):
                        spec, best, improved = cand, est, True
                        break
            if not improved:
                step /= 2
        return spec, best

    start = snapped(template.spec)
    best_spec, best = descend(start, estimate(start) if estimate(start).feasible else None)
    for _ in range(restarts):
        if evaluations >= budget:
            break
        spec = best_spec
        for s in slots:
            x = float(_get(spec, s)) * (1 + rng.uniform(-0.05, 0.05))
            spec = _set(spec, s, _round2(max(x, 0.01)))
        cand_spec, cand = descend(spec, estimate(spec) if estimate(spec).feasible else None)
        if cand is not None and cand.better_than(best, direction):
            best_spec, best = cand_spec, cand
    if best is None:
        raise SearchError("no candidate produced a feasible estimate")
    return replace(template, spec=best_spec)
