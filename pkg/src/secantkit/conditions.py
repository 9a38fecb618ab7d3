"""The checkable hypotheses: linear-syzygy generation of the Koszul
relations, the quadrics-plus-linear-syzygies-plus-normality package,
restriction to linear subspaces, line restriction ranks, four-point spans,
and line content via Fano ideals on Grassmannian charts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .groebner import DEFAULT_DEGREE_CAP, Ideal, irrelevant_ideal
from .linalg import SpanTracker, rank
from .poly import GREVLEX, Polynomial, Ring, RingMismatchError
from .rng import DetRng
from .syzygy import (
    SyzygyElement,
    Membership,
    module_member,
    monomials_of_degree,
    syzygies,
)


@dataclass(frozen=True)
class KoszulPairResult:
    i: int
    j: int
    member: bool
    certificate: tuple[Polynomial, ...] | None
    witness: str | None


@dataclass(frozen=True)
class KdReport:
    holds: bool
    d: int
    linear_syzygy_count: int
    syzygy_count: int
    pairs: tuple[KoszulPairResult, ...]


def check_kd(forms: list[Polynomial], d: int | None = None,
             cap: int = DEFAULT_DEGREE_CAP) -> KdReport:
    """Do the Koszul relations among equal-degree forms lie in the submodule
    generated by the linear syzygies?

    Certificates are explicit: member pairs carry coefficients, failures a
    normal-form witness.
    """
    forms = list(forms)
    if not forms:
        raise ValueError("empty system")
    ring = forms[0].ring
    degs = {f.degree() for f in forms}
    if len(degs) != 1 or not all(f.is_homogeneous() and f for f in forms):
        raise ValueError("mixed degrees: the system must be homogeneous of one degree")
    deg = degs.pop()
    if d is not None and d != deg:
        raise ValueError(f"system has degree {deg}, not {d}")
    d = deg
    _require_independent(forms)
    syz = syzygies(forms, cap)
    twists = tuple(d for _ in forms)
    linear = [s for s in syz if s.max_entry_degree() <= 1]
    zero = ring.zero()
    pairs = []
    holds = True
    for i in range(len(forms)):
        for j in range(i + 1, len(forms)):
            entries = [zero] * len(forms)
            entries[i] = forms[j]
            entries[j] = -forms[i]
            koszul = SyzygyElement(tuple(entries), twists)
            res: Membership = module_member(koszul, linear, cap)
            if res.member:
                pairs.append(KoszulPairResult(i, j, True, res.certificate, None))
            else:
                holds = False
                pairs.append(KoszulPairResult(i, j, False, None, str(res.witness)))
    return KdReport(holds, d, len(linear), len(syz), tuple(pairs))


def _require_independent(forms: list[Polynomial]):
    monos = sorted({e for f in forms for e, _ in f.terms})
    index = {m: i for i, m in enumerate(monos)}
    tracker = SpanTracker(len(monos), forms[0].ring.field)
    for f in forms:
        row = [forms[0].ring.field.zero] * len(monos)
        for e, c in f.terms:
            row[index[e]] = c
        if not tracker.add(row):
            raise ValueError("generators are linearly dependent; pass a basis")


@dataclass(frozen=True)
class N2Report:
    quadric_generation: bool
    linear_first_syzygies: bool
    projective_normality_checked_to: int
    projectively_normal_in_range: bool

    @property
    def holds(self) -> bool:
        return (self.quadric_generation and self.linear_first_syzygies
                and self.projectively_normal_in_range)


def check_n2(ideal: Ideal, normality_degree_bound: int | None = None,
             cap: int = DEFAULT_DEGREE_CAP) -> N2Report:
    """Quadric generation, linear first syzygies, and projective normality
    certified up to a degree bound (default 2d+2).

    Normality in degree k is h^1 of the twisted ideal sheaf vanishing; the
    report always states how far it was checked.
    """
    from .cohomology import ModuleCohomology

    if not ideal.homogeneous:
        raise ValueError("need a homogeneous ideal")
    if not _is_saturated(ideal, cap):
        raise ValueError("input ideal is not saturated; saturate first")
    gens = ideal.min_gens(cap)
    gen_degrees = sorted(g.degree() for g in gens)
    quadric_generation = bool(gens) and all(dd == 2 for dd in gen_degrees)
    syz = syzygies(list(gens), cap)
    linear_first = all(s.max_entry_degree() <= 1 for s in syz)
    d = max(gen_degrees) if gen_degrees else 2
    bound = normality_degree_bound if normality_degree_bound is not None else 2 * d + 2
    engine = ModuleCohomology("ideal", ideal, cap=cap)
    normal = True
    for k in range(1, bound + 1):
        if engine.sheaf_cohomology(k)[1] != 0:
            normal = False
            break
    return N2Report(quadric_generation, linear_first, bound, normal)


def _is_saturated(ideal: Ideal, cap: int) -> bool:
    if not ideal.gens:
        return True
    quot = ideal.quotient(irrelevant_ideal(ideal.ring), cap)
    return quot.groebner_basis(cap=cap) == ideal.groebner_basis(cap=cap)


def restrict_system(forms: list[Polynomial], subspace: list[Polynomial],
                    var_prefix: str = "y") -> list[Polynomial]:
    """Restrict forms to the linear subspace cut out by independent linear
    forms; output lives in a fresh ring on the subspace coordinates."""
    if not forms:
        raise ValueError("empty system")
    ring = forms[0].ring
    field = ring.field
    c = len(subspace)
    if c == 0:
        return list(forms)
    rows = []
    for ell in subspace:
        if ell.ring != ring:
            raise RingMismatchError("subspace form from a different ring")
        if ell.is_zero() or ell.degree() != 1 or not ell.is_homogeneous():
            raise ValueError("subspace forms must be nonzero linear forms")
        row = [field.zero] * ring.nvars
        for exps, cc in ell.terms:
            row[exps.index(1)] = cc
        rows.append(row)
    if rank(rows, field) != c:
        raise ValueError("subspace forms are dependent")
    # reduced row echelon: pivot variables in terms of the free ones
    basis: list[list] = []
    pivots: list[int] = []
    for row in rows:
        r = list(row)
        for b, p in zip(basis, pivots):
            coef = r[p]
            if not field.is_zero(coef):
                r = [field.sub(x, field.mul(coef, y)) for x, y in zip(r, b)]
        p = next(i for i, x in enumerate(r) if not field.is_zero(x))
        inv = field.inv(r[p])
        r = [field.mul(inv, x) for x in r]
        for bi in range(len(basis)):
            coef = basis[bi][p]
            if not field.is_zero(coef):
                basis[bi] = [
                    field.sub(x, field.mul(coef, y)) for x, y in zip(basis[bi], r)
                ]
        basis.append(r)
        pivots.append(p)
    free = [i for i in range(ring.nvars) if i not in pivots]
    small = Ring(tuple(f"{var_prefix}{i}" for i in range(len(free))),
                 field, GREVLEX)
    images = [None] * ring.nvars
    for fi, i in enumerate(free):
        images[i] = small.var(fi)
    for b, p in zip(basis, pivots):
        acc = small.zero()
        for fi, i in enumerate(free):
            if not field.is_zero(b[i]):
                acc = acc - small.var(fi).scale(b[i])
        images[p] = acc
    return [f.substitute(small, images) for f in forms]


def _coerce_point(field, coords) -> list:
    out = []
    for c in coords:
        fr = Fraction(c)
        out.append(fr if field.tag == "q"
                   else field.of_rational(fr.numerator, fr.denominator))
    return out


def line_restriction_rank(quadrics: list[Polynomial], p, q) -> int:
    """Rank of the system restricted to the line through p and q, inside the
    3-dimensional space of binary quadrics."""
    if not quadrics:
        raise ValueError("empty system")
    ring = quadrics[0].ring
    field = ring.field
    p = _coerce_point(field, p)
    q = _coerce_point(field, q)
    if len(p) != ring.nvars or len(q) != ring.nvars:
        raise ValueError("points of the wrong dimension")
    if rank([list(p), list(q)], field) != 2:
        raise ValueError("coincident points do not span a line")
    psum = [field.add(x, y) for x, y in zip(p, q)]
    rows = []
    for f in quadrics:
        if f.degree() != 2 or not f.is_homogeneous():
            raise ValueError("the system must consist of quadrics")
        # f(s*p + t*q) = f(p) s^2 + (f(p+q) - f(p) - f(q)) st + f(q) t^2
        a = f.evaluate(p)
        c = f.evaluate(q)
        b = field.sub(f.evaluate(psum), field.add(a, c))
        rows.append([a, b, c])
    return rank(rows, field)


@dataclass(frozen=True)
class FourPointReport:
    all_passed: bool
    trials: int
    failures: tuple
    certifies_very_ampleness: bool
    note: str


def four_point_span_check(variety, trials: int = 100, seed: int = 0,
                          bound: int = 9) -> FourPointReport:
    """Sampled necessary condition for 4-very-ampleness: four distinct
    rational points of X must span a P^3.

    A passing run certifies 4-very-ampleness only together with the
    registered no-lines / no-conics certificate (reduced points in general
    position say nothing about thick subschemes).
    """
    rng = DetRng(seed)
    failures = []
    field = variety.ideal.ring.field
    for trial in range(trials):
        sub = rng.fork(trial)
        pts = variety.sample_distinct_points(sub, 4, bound)
        rows = [[field.of_rational(c.numerator, c.denominator)
                 if field.tag != "q" else c for c in p] for p in pts]
        if rank(rows, field) != 4:
            failures.append({"trial": trial, "points": [list(map(str, p)) for p in pts]})
    cert = variety.certificate
    no_curves = bool(cert.no_lines) and bool(cert.no_conics)
    note = ("reduced-point spot check only; with the registered no-lines/"
            "no-conics certificate this instantiates the 4-very-ampleness "
            "criterion" if no_curves else
            "reduced-point spot check only; NOT certifying 4-very-ampleness "
            "(family contains or may contain conics)")
    return FourPointReport(not failures, trials, tuple(failures),
                           not failures and no_curves, note)


@dataclass(frozen=True)
class FanoChart:
    pivot: tuple[int, int]
    empty: bool
    condition_count: int
    groebner_size: int


@dataclass(frozen=True)
class FanoReport:
    contains_line: bool
    charts: tuple[FanoChart, ...]


def fano_lines(ideal: Ideal, cap: int = DEFAULT_DEGREE_CAP,
               max_n: int = 5) -> FanoReport:
    """Line content of V(I) by incidence elimination over the standard
    affine charts of the Grassmannian of lines.

    A chart is empty exactly when its condition ideal is the unit ideal
    (Nullstellensatz: that verdict is stable under field extension, so this
    decides line content over the algebraic closure).
    """
    ring = ideal.ring
    n = ring.nvars - 1
    if n > max_n:
        raise ValueError(f"n = {n} exceeds the desk-scale chart cap {max_n}")
    field = ring.field
    charts = []
    contains = False
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            rest = [c for c in range(n + 1) if c not in (i, j)]
            names = (("s", "t")
                     + tuple(f"a{c}" for c in rest)
                     + tuple(f"b{c}" for c in rest))
            big = Ring(names, field, GREVLEX)
            avars = {c: big.var(2 + k) for k, c in enumerate(rest)}
            bvars = {c: big.var(2 + len(rest) + k) for k, c in enumerate(rest)}
            s, t = big.var(0), big.var(1)
            images = []
            for c in range(n + 1):
                if c == i:
                    images.append(s)
                elif c == j:
                    images.append(t)
                else:
                    images.append(s * avars[c] + t * bvars[c])
            chart_ring = Ring(names[2:], field, GREVLEX)
            conditions: list[Polynomial] = []
            for g in ideal.gens:
                expanded = g.substitute(big, images)
                by_st: dict = {}
                for exps, cc in expanded.terms:
                    key = (exps[0], exps[1])
                    by_st.setdefault(key, []).append((exps[2:], cc))
                for key in sorted(by_st):
                    conditions.append(chart_ring.from_terms(by_st[key]))
            chart_ideal = Ideal(chart_ring, conditions)
            gb = chart_ideal.groebner_basis(cap=cap)
            empty = len(gb) == 1 and gb[0].degree() == 0
            if not empty:
                contains = True
            charts.append(FanoChart((i, j), empty, len(conditions), len(gb)))
    return FanoReport(contains, tuple(charts))
