"""Secant variety ideals via the affine-cone join, the deficiency report
with its independently computed image dimension, fiber schemes of the
quadric map, and cubic-generation checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .groebner import (
    DEFAULT_DEGREE_CAP,
    Ideal,
    irrelevant_ideal,
    kernel_of_map,
)
from .poly import Polynomial, Ring, block_order
from .linalg import SpanTracker
from .syzygy import monomials_of_degree


class BasePointError(ValueError):
    """The chosen point lies on the base scheme of the system."""


def secant_ideal(ideal: Ideal, cap: int = DEFAULT_DEGREE_CAP) -> Ideal:
    """Ideal of the secant variety by the classical join elimination.

    Affine-cone gluing: in k[x, z] take I(x) + I(z - x) and eliminate the
    x block; the surviving relations in z cut out the cone over Sec X.  The
    output is saturated (a no-op for the integral inputs this is meant for,
    but cheap insurance on the principal outputs we see).
    """
    if not ideal.homogeneous:
        raise ValueError("secant construction needs a homogeneous ideal")
    ring = ideal.ring
    if ideal.is_zero():
        return ideal
    prefix = "u"
    while any(v.startswith(prefix) for v in ring.vars):
        prefix += "u"
    k = ring.nvars
    big = Ring(tuple(prefix + v for v in ring.vars) + ring.vars,
               ring.field, block_order(k))

    def lift(f: Polynomial) -> Polynomial:
        return big.from_terms((exps + (0,) * k, c) for exps, c in f.terms)

    diffs = [big.var(k + i) - big.var(i) for i in range(k)]
    gens = [lift(g) for g in ideal.gens]
    gens += [g.substitute(big, diffs) for g in ideal.gens]
    joined = Ideal(big, gens)
    out = joined.eliminate(k, cap)
    projected = Ideal(ring, [ring.from_terms(g.terms) for g in out.gens])
    if projected.is_zero():
        return projected
    return projected.saturate(irrelevant_ideal(ring), cap)


def quadric_system(ideal: Ideal, cap: int = DEFAULT_DEGREE_CAP) -> list[Polynomial]:
    """Basis of the degree-2 graded piece of the ideal."""
    ring = ideal.ring
    monos = monomials_of_degree(ring.nvars, 2)
    index = {m: i for i, m in enumerate(monos)}
    tracker = SpanTracker(len(monos), ring.field)
    basis = []
    for g in ideal.gens:
        if not g.is_homogeneous():
            raise ValueError("need homogeneous generators")
        d = g.degree()
        if d > 2 or d < 1:
            continue
        shifts = monomials_of_degree(ring.nvars, 2 - d)
        for u in shifts:
            f = g.mul_monomial(u)
            row = [ring.field.zero] * len(monos)
            for exps, c in f.terms:
                row[index[exps]] = c
            if tracker.add(row):
                basis.append(f)
    return basis


@dataclass(frozen=True)
class SecantReport:
    dim_x: int
    secant: Ideal
    fills_space: bool
    dim_secant: int
    degree_secant: int | None
    deficiency: int
    dim_y: int
    formula_consistent: bool
    generated_in_degree_le_3: bool | None


def secant_report(ideal: Ideal, cap: int = DEFAULT_DEGREE_CAP) -> SecantReport:
    """Dimension, deficiency and the image-variety cross-check.

    dim Y is computed independently of the deficiency: Y is the closed image
    of Sec X under the quadrics through X (relations found by
    kernel-of-map restricted to the secant's coordinate ring), and the
    consistency flag records whether 2*deficiency = 2 dim X - dim Y holds
    exactly.
    """
    hd = ideal.hilbert(cap)
    r = hd.dim
    n = ideal.ring.nvars - 1
    quadrics = quadric_system(ideal, cap)
    if not quadrics:
        raise ValueError("the system has no quadrics: X is not cut out in degree 2")
    sec = secant_ideal(ideal, cap)
    if sec.is_zero():
        dim_sec: int = n
        deg_sec = None
        fills = True
        cubic = None
    else:
        hs = sec.hilbert(cap)
        dim_sec = hs.dim
        deg_sec = hs.degree
        fills = False
        cubic = cubic_generation(sec, cap)
    delta = 2 * r + 1 - dim_sec
    relations = kernel_of_map(quadrics, modulo=None if sec.is_zero() else sec,
                              cap=cap)
    if relations.is_zero():
        dim_y = len(quadrics) - 1
    else:
        dim_y = relations.hilbert(cap).dim
    consistent = (2 * delta == 2 * r - dim_y)
    return SecantReport(r, sec, fills, dim_sec, deg_sec, delta, dim_y,
                        consistent, cubic)


def fiber_ideal(quadrics: list[Polynomial], point,
                cap: int = DEFAULT_DEGREE_CAP) -> Ideal:
    """Scheme of points whose system values are proportional to the values
    at ``point``: generated by F_i(z) F_j(p) - F_j(z) F_i(p), then saturated
    by the base ideal (which removes the base scheme X itself, always a
    component, along with irrelevant junk)."""
    if not quadrics:
        raise ValueError("empty system")
    ring = quadrics[0].ring
    field = ring.field
    values = []
    pt = [Fraction(c) for c in point]
    if len(pt) != ring.nvars:
        raise ValueError("point of the wrong dimension")
    coerced = pt if field.tag == "q" else [
        field.of_rational(c.numerator, c.denominator) for c in pt
    ]
    for f in quadrics:
        values.append(f.evaluate(coerced))
    if all(field.is_zero(v) for v in values):
        raise BasePointError("the point lies on the base scheme of the system")
    gens = []
    m = len(quadrics)
    for i in range(m):
        for j in range(i + 1, m):
            g = quadrics[i].scale(values[j]) - quadrics[j].scale(values[i])
            if g:
                gens.append(g)
    pencil = Ideal(ring, gens)
    base = Ideal(ring, quadrics)
    return pencil.saturate(base, cap)


def cubic_generation(ideal: Ideal, cap: int = DEFAULT_DEGREE_CAP) -> bool:
    """Are all minimal generators of degree at most 3?"""
    gens = ideal.min_gens(cap)
    return all(g.degree() <= 3 for g in gens)


@dataclass(frozen=True)
class FiberClassification:
    kind: str                      # "point" | "linear" | "other"
    fiber_dim: int
    fiber_degree: int | None
    intersection_dim: int | None   # of (fiber + X), for the linear case
    intersection_degree: int | None


def classify_fiber(quadrics: list[Polynomial], base: Ideal, point,
                   cap: int = DEFAULT_DEGREE_CAP) -> FiberClassification:
    """Dichotomy check: a fiber is a reduced point, or a linear space whose
    intersection with X is a degree-d hypersurface inside it."""
    fib = fiber_ideal(quadrics, point, cap)
    hd = fib.hilbert(cap)
    if hd.dim == 0 and hd.degree == 1:
        return FiberClassification("point", 0, 1, None, None)
    gens = fib.min_gens(cap)
    if gens and all(g.degree() == 1 for g in gens):
        hx = fib.plus(base).saturate(irrelevant_ideal(base.ring), cap).hilbert(cap)
        return FiberClassification("linear", hd.dim, hd.degree,
                                   hx.dim, hx.degree)
    return FiberClassification("other", hd.dim, hd.degree, None, None)
