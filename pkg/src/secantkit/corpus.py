"""Built-in families: rational normal curves, Veroneses, Segres, complete
intersections.  Each family carries its generators, a rational
parametrization when one exists (used for seeded point sampling), and a
certificate recording what is known about lines and conics on it.

Generated ideals are verified on construction: sampled parametrization
points must satisfy every generator exactly; complete intersections get an
exact Jacobian smoothness check instead (no rational points to sample).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fields import QQ, Field
from .groebner import DEFAULT_DEGREE_CAP, Ideal
from .poly import Polynomial, Ring
from .rng import DetRng
from .syzygy import monomials_of_degree

MAX_VARIABLES = 12


class CorpusError(ValueError):
    pass


class SamplingUnavailable(RuntimeError):
    """The variety has no registered rational parametrization."""


@dataclass(frozen=True)
class Certificate:
    """What is known about low-degree curves on the family member."""

    no_lines: bool | None      # None = unknown
    no_conics: bool | None
    note: str


@dataclass
class CorpusVariety:
    name: str
    ideal: Ideal
    gen_degree: int
    certificate: Certificate
    param_arity: int | None  # projective dim of the parametrizing space, or None

    def parametrize(self, params: list[Fraction]) -> tuple[Fraction, ...]:
        raise SamplingUnavailable(f"{self.name} has no parametrization")

    def has_parametrization(self) -> bool:
        return self.param_arity is not None

    def sample_point(self, rng: DetRng, bound: int = 9) -> tuple[Fraction, ...]:
        if not self.has_parametrization():
            raise SamplingUnavailable(f"{self.name} has no parametrization")
        while True:
            params = [Fraction(rng.randint(-bound, bound))
                      for _ in range(self.param_arity + 1)]
            if any(params):
                return normalize_point(self.parametrize(params))

    def sample_distinct_points(self, rng: DetRng, count: int,
                               bound: int = 9) -> list[tuple[Fraction, ...]]:
        out: list[tuple[Fraction, ...]] = []
        while len(out) < count:
            p = self.sample_point(rng, bound)
            if p not in out:
                out.append(p)
        return out


def normalize_point(coords) -> tuple[Fraction, ...]:
    """Projective normal form: first nonzero coordinate scaled to 1."""
    coords = [Fraction(c) for c in coords]
    pivot = next((c for c in coords if c != 0), None)
    if pivot is None:
        raise ValueError("zero vector is not a projective point")
    return tuple(c / pivot for c in coords)


class _MonomialMapVariety(CorpusVariety):
    """Image of a projective space under a list of monomial exponent tuples."""

    def __init__(self, name, ideal, gen_degree, certificate, arity, exponents):
        super().__init__(name, ideal, gen_degree, certificate, arity)
        self._exponents = exponents

    def parametrize(self, params):
        if len(params) != self.param_arity + 1:
            raise ValueError("wrong parameter count")
        out = []
        for exps in self._exponents:
            v = Fraction(1)
            for p, e in zip(params, exps):
                v *= p ** e
            out.append(v)
        return tuple(out)


def rational_normal_curve(d: int, field: Field = QQ) -> CorpusVariety:
    """Image of P^1 under O(d): 2x2 minors of the 2 x d Hankel matrix."""
    if d < 2:
        raise CorpusError("degree must be at least 2")
    if d + 1 > MAX_VARIABLES:
        raise CorpusError("too many variables for desk scale")
    ring = Ring(tuple(f"x{i}" for i in range(d + 1)), field)
    xs = [ring.var(i) for i in range(d + 1)]
    gens = [xs[i] * xs[j + 1] - xs[i + 1] * xs[j]
            for i in range(d) for j in range(i + 1, d)]
    cert = Certificate(
        no_lines=True,
        no_conics=(d != 2),
        note="irreducible curve of degree %d: containment of a line or conic "
             "would force equality" % d,
    )
    exps = [(d - i, i) for i in range(d + 1)]
    v = _MonomialMapVariety(f"rational-normal-curve:{d}", Ideal(ring, gens),
                            2, cert, 1, exps)
    _verify_on_generation(v)
    return v


def veronese(n: int, d: int, field: Field = QQ) -> CorpusVariety:
    """Image of P^n under O(d); toric quadric generators, pruned minimal."""
    if n < 1 or d < 2:
        raise CorpusError("need n >= 1 and d >= 2")
    monos = monomials_of_degree(n + 1, d)
    if len(monos) > MAX_VARIABLES:
        raise CorpusError("too many variables for desk scale")
    ring = Ring(tuple(f"z{i}" for i in range(len(monos))), field)
    index = {m: i for i, m in enumerate(monos)}
    by_sum: dict = {}
    for i, mi in enumerate(monos):
        for j in range(i, len(monos)):
            s = tuple(a + b for a, b in zip(mi, monos[j]))
            by_sum.setdefault(s, []).append((i, j))
    gens = []
    for s in sorted(by_sum):
        pairs = by_sum[s]
        i0, j0 = pairs[0]
        for i, j in pairs[1:]:
            gens.append(ring.var(i0) * ring.var(j0) - ring.var(i) * ring.var(j))
    ideal = Ideal(ring, gens)
    minimal = list(ideal.min_gens())
    cert = Certificate(
        no_lines=True,
        no_conics=(d >= 3),
        note="curves on the d-uple embedding have degree divisible by d"
             if d >= 3 else "images of lines are plane conics",
    )
    v = _MonomialMapVariety(f"veronese:{n}:{d}", Ideal(ring, minimal), 2,
                            cert, n, monos)
    _verify_on_generation(v)
    return v


def segre(a: int, b: int, field: Field = QQ) -> CorpusVariety:
    """Segre P^a x P^b: 2x2 minors of the generic (a+1) x (b+1) matrix."""
    if a < 1 or b < 1:
        raise CorpusError("need a, b >= 1")
    if (a + 1) * (b + 1) > MAX_VARIABLES:
        raise CorpusError("too many variables for desk scale")
    ring = Ring(tuple(f"w{i}{j}" for i in range(a + 1) for j in range(b + 1)), field)

    def w(i, j):
        return ring.var(i * (b + 1) + j)

    gens = []
    for i1 in range(a + 1):
        for i2 in range(i1 + 1, a + 1):
            for j1 in range(b + 1):
                for j2 in range(j1 + 1, b + 1):
                    gens.append(w(i1, j1) * w(i2, j2) - w(i1, j2) * w(i2, j1))
    cert = Certificate(no_lines=False, no_conics=None,
                       note="rulings are lines on any Segre")

    class _SegreVariety(CorpusVariety):
        def parametrize(self, params):
            us = params[: a + 1]
            vs = params[a + 1:]
            if not any(us) or not any(vs):
                raise ValueError("degenerate Segre parameters")
            return tuple(u * v for u in us for v in vs)

        def sample_point(self, rng: DetRng, bound: int = 9):
            while True:
                us = [Fraction(rng.randint(-bound, bound)) for _ in range(a + 1)]
                vs = [Fraction(rng.randint(-bound, bound)) for _ in range(b + 1)]
                if any(us) and any(vs):
                    return normalize_point(self.parametrize(us + vs))

    v = _SegreVariety(f"segre:{a}:{b}", Ideal(ring, gens), 2, cert, a + b + 1)
    _verify_on_generation(v)
    return v


def complete_intersection(degrees: list[int], seed: int = 0,
                          field: Field = QQ,
                          cap: int = DEFAULT_DEGREE_CAP) -> CorpusVariety:
    """Seeded random smooth complete intersection in P^(c+1).

    Smoothness is certified exactly: the ideal plus the maximal minors of the
    Jacobian must cut out the empty projective scheme.  Deterministic retry
    on the (rare) singular draw.
    """
    c = len(degrees)
    if c < 1:
        raise CorpusError("at least one degree")
    nvars = c + 2
    if nvars > MAX_VARIABLES:
        raise CorpusError("too many variables for desk scale")
    if any(d < 1 for d in degrees):
        raise CorpusError("degrees must be positive")
    ring = Ring(tuple(f"x{i}" for i in range(nvars)), field)
    base = DetRng(seed)
    for attempt in range(32):
        rng = base.fork(attempt)
        forms = []
        for d in degrees:
            monos = monomials_of_degree(nvars, d)
            f = ring.from_terms(
                (m, Fraction(rng.randint(-3, 3))) for m in monos
            )
            forms.append(f)
        if any(not f for f in forms):
            continue
        ideal = Ideal(ring, forms)
        if _ci_is_smooth(ideal, forms, cap):
            cert_no_curves = (c == 2 and degrees == [2, 2])
            cert = Certificate(
                no_lines=cert_no_curves or None,
                no_conics=cert_no_curves or None,
                note="smooth CI; a (2,2) curve in P^3 is an irreducible "
                     "elliptic quartic" if cert_no_curves
                     else "line/conic content not certified for this family",
            )
            name = "complete-intersection:" + ",".join(map(str, degrees)) \
                   + f":seed{seed}"
            v = CorpusVariety(name, ideal, max(degrees), cert, None)
            return v
    raise CorpusError("no smooth complete intersection found for this seed")


def _ci_is_smooth(ideal: Ideal, forms: list[Polynomial], cap: int) -> bool:
    ring = ideal.ring
    c = len(forms)
    jac = [[_partial(f, i) for i in range(ring.nvars)] for f in forms]
    minors = []
    cols = range(ring.nvars)
    idx = list(cols)
    # c x c minors of the c x nvars Jacobian
    from itertools import combinations

    for combo in combinations(idx, c):
        m = _det([[jac[r][cc] for cc in combo] for r in range(c)], ring)
        if m:
            minors.append(m)
    sing = Ideal(ring, list(ideal.gens) + minors)
    return sing.hilbert(cap).empty


def _partial(f: Polynomial, i: int) -> Polynomial:
    ring = f.ring
    terms = []
    for exps, cc in f.terms:
        if exps[i]:
            e = list(exps)
            e[i] -= 1
            terms.append((tuple(e), cc * exps[i]))
    return ring.from_terms(terms)


def _det(mat, ring: Ring) -> Polynomial:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    out = ring.zero()
    for j in range(n):
        minor = _det([row[:j] + row[j + 1:] for row in mat[1:]], ring)
        term = mat[0][j] * minor
        out = out + term if j % 2 == 0 else out - term
    return out


def _verify_on_generation(v: CorpusVariety, samples: int = 5):
    """Sampled parametrization points must satisfy every generator exactly."""
    rng = DetRng(0xC0FFEE)
    field = v.ideal.ring.field
    for _ in range(samples):
        p = v.sample_point(rng)
        if field.tag == "q":
            values = [Fraction(c) for c in p]
        else:
            values = [field.of_rational(Fraction(c).numerator,
                                        Fraction(c).denominator) for c in p]
        for g in v.ideal.gens:
            if not field.is_zero(g.evaluate(values)):
                raise CorpusError(
                    f"{v.name}: parametrization point fails generator {g}"
                )


# ---------------------------------------------------------------------------
# family strings


def corpus_generate(spec: str, seed: int = 0, field: Field = QQ) -> CorpusVariety:
    """Family spec strings: rational-normal-curve:d | veronese:n:d |
    segre:a:b | complete-intersection:d1,d2,..[:seedN]."""
    parts = spec.split(":")
    kind = parts[0]
    try:
        if kind in ("rational-normal-curve", "rnc"):
            return rational_normal_curve(int(parts[1]), field)
        if kind == "veronese":
            return veronese(int(parts[1]), int(parts[2]), field)
        if kind == "segre":
            return segre(int(parts[1]), int(parts[2]), field)
        if kind in ("complete-intersection", "ci"):
            degrees = [int(x) for x in parts[1].split(",")]
            s = seed
            if len(parts) > 2 and parts[2].startswith("seed"):
                s = int(parts[2][4:])
            return complete_intersection(degrees, s, field)
    except (IndexError, ValueError) as exc:
        if isinstance(exc, CorpusError):
            raise
        raise CorpusError(f"bad family spec {spec!r}: {exc}") from exc
    raise CorpusError(f"unknown family {kind!r}")


def golden_corpus(field: Field = QQ) -> list[CorpusVariety]:
    """The fixed battery every report-all run walks, in order."""
    return [
        rational_normal_curve(3, field),
        rational_normal_curve(4, field),
        veronese(2, 2, field),
        complete_intersection([2, 2], 0, field),
    ]


def chord_point(p, q, lam: Fraction, mu: Fraction) -> tuple[Fraction, ...]:
    """lam*p + mu*q on the chord through two points."""
    return normalize_point([lam * a + mu * b for a, b in zip(p, q)])
