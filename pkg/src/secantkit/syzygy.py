"""Syzygies, graded free resolutions, Betti tables, module membership.

First syzygies come out of the kernel-harvesting module engine; minimal
generating sets are then cut down degree by degree with exact linear algebra
(a vector is kept iff it falls outside m*(module) plus the span of vectors
already kept in its degree, which is Nakayama in coordinates).  Resolutions
iterate the same two steps, so every map in a resolution is minimal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd

from .fields import QQ
from .groebner import DEFAULT_DEGREE_CAP, Ideal
from .linalg import SpanTracker
from .modgb import make_graph_key, make_top_key, module_buchberger, module_normal_form
from .poly import Polynomial, Ring, RingMismatchError, mono_mul

# ---------------------------------------------------------------------------
# vectors of polynomials


@dataclass(frozen=True)
class SyzygyElement:
    """Vector in a graded free module, one entry per S(-twist_i) summand."""

    entries: tuple[Polynomial, ...]
    twists: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != len(self.twists):
            raise ValueError("one twist per component")

    @property
    def ring(self) -> Ring:
        return self.entries[0].ring

    def degree(self) -> int:
        """Internal degree; entries of a homogeneous vector all agree."""
        degs = [e.degree() + t for e, t in zip(self.entries, self.twists) if e]
        return max(degs) if degs else -1

    def is_zero(self) -> bool:
        return all(not e for e in self.entries)

    def is_homogeneous(self) -> bool:
        degs = set()
        for e, t in zip(self.entries, self.twists):
            if not e:
                continue
            if not e.is_homogeneous():
                return False
            degs.add(e.degree() + t)
        return len(degs) <= 1

    def max_entry_degree(self) -> int:
        return max((e.degree() for e in self.entries if e), default=-1)

    def contract(self, polys) -> Polynomial:
        """Sum entry_i * polys[i]; zero exactly when this is a syzygy of polys."""
        ring = self.ring
        acc = ring.zero()
        for e, p in zip(self.entries, polys):
            if e and p:
                acc = acc + e * p
        return acc

    def __str__(self):
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


def _vector_to_intdict(entries, serial_base: int = 0) -> dict:
    """Clear denominators across the vector, strip content; int module dict."""
    den = 1
    for e in entries:
        for _, c in e.terms:
            den = den * c.denominator // gcd(den, c.denominator)
    d = {}
    for comp, e in enumerate(entries):
        for exps, c in e.terms:
            d[(comp + serial_base, exps)] = int(c * den)
    g = 0
    for v in d.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        d = {t: v // g for t, v in d.items()}
    return d


def _intdict_to_vector(d: dict, ring: Ring, rank: int, base: int = 0):
    per_comp: list[dict] = [dict() for _ in range(rank)]
    for (c, exps), v in d.items():
        per_comp[c - base][exps] = Fraction(v)
    return tuple(ring.from_dict(pc) for pc in per_comp)


def _canonical_vector(entries, ring: Ring):
    """Primitive integer form with positive lead under TOP (canonical rep)."""
    d = _vector_to_intdict(entries)
    if not d:
        return entries
    key = make_top_key(ring)
    lead = max(d, key=key)
    if d[lead] < 0:
        d = {t: -v for t, v in d.items()}
    return _intdict_to_vector(d, ring, len(entries))


def monomials_of_degree(nvars: int, d: int) -> list[tuple]:
    """All exponent tuples of total degree d, deterministic order."""
    if d < 0:
        return []
    if nvars == 0:
        return [()] if d == 0 else []
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    out.sort(reverse=True)
    return out


# ---------------------------------------------------------------------------
# kernels and minimal generators


def kernel_generators(columns: list[tuple[Polynomial, ...]],
                      target_twists: tuple[int, ...],
                      cap: int = DEFAULT_DEGREE_CAP) -> list[SyzygyElement]:
    """Generators of the kernel of e_i -> col_i between graded free modules.

    Unminimalized; run :func:`minimal_vector_generators` on the output.
    """
    if not columns:
        return []
    ring = columns[0][0].ring
    if ring.field.tag != "q":
        raise ValueError("module computations run over Q only")
    r = len(target_twists)
    m = len(columns)
    top = make_top_key(ring)
    col_degrees = []
    dicts = []
    coord_leads = []
    for i, col in enumerate(columns):
        deg = max(e.degree() + t for e, t in zip(col, target_twists) if e)
        col_degrees.append(deg)
        d = _vector_to_intdict(col)
        lead = max(d, key=top)
        coord_leads.append(lead)
        d[(r + i, (0,) * ring.nvars)] = 1
        dicts.append(d)
    key = make_graph_key(ring, r, coord_leads)
    twists = {c: t for c, t in enumerate(target_twists)}
    for i, deg in enumerate(col_degrees):
        twists[r + i] = deg
    res = module_buchberger(dicts, ring, key, cap=cap, split=r, twists=twists)
    out = []
    for h in res.harvest:
        entries = _intdict_to_vector(h, ring, m, base=r)
        # undo the per-column primitive scaling so these contract against
        # the original columns exactly
        fixed = tuple(e.scale(_lambda_of(columns[i])) for i, e in enumerate(entries))
        vec = SyzygyElement(_canonical_vector(fixed, ring), tuple(col_degrees))
        if not vec.is_zero():
            out.append(vec)
    return out


def _lambda_of(col) -> Fraction:
    """Scalar lam with primitive(col) = lam * col."""
    den = 1
    for e in col:
        for _, c in e.terms:
            den = den * c.denominator // gcd(den, c.denominator)
    num = 0
    for e in col:
        for _, c in e.terms:
            num = gcd(num, int(c * den))
    return Fraction(den, num) if num else Fraction(1)


def minimal_vector_generators(vectors: list[SyzygyElement],
                              twists: tuple[int, ...],
                              ring: Ring) -> list[SyzygyElement]:
    """Graded Nakayama pruning: minimal generating set of the span."""
    vectors = [v for v in vectors if not v.is_zero()]
    if not vectors:
        return []
    decorated = sorted(vectors, key=lambda v: (v.degree(), str(v)))
    degrees = sorted({v.degree() for v in decorated})
    kept: list[SyzygyElement] = []
    nv = ring.nvars
    for dd in degrees:
        basis_terms = []
        for comp, tw in enumerate(twists):
            for exps in monomials_of_degree(nv, dd - tw):
                basis_terms.append((comp, exps))
        index = {t: i for i, t in enumerate(basis_terms)}
        tracker = SpanTracker(len(basis_terms), QQ)
        # rows of m * (everything available below this degree)
        for v in decorated:
            if v.degree() >= dd:
                continue
            for u in monomials_of_degree(nv, dd - v.degree()):
                tracker.add(_vector_row(v, u, index))
        for v in decorated:
            if v.degree() != dd:
                continue
            row = _vector_row(v, (0,) * nv, index)
            if tracker.add(row):
                kept.append(v)
    return kept


def _vector_row(v: SyzygyElement, shift: tuple, index: dict) -> list:
    row = [Fraction(0)] * len(index)
    for comp, e in enumerate(v.entries):
        for exps, c in e.terms:
            row[index[(comp, mono_mul(exps, shift))]] = Fraction(c)
    return row


# ---------------------------------------------------------------------------
# public operations


def minimal_generators(ideal: Ideal, cap: int = DEFAULT_DEGREE_CAP):
    """Minimal homogeneous generating set of an ideal."""
    if not ideal.homogeneous:
        raise ValueError("minimal generators need a homogeneous ideal")
    ring = ideal.ring
    vectors = [SyzygyElement((g,), (0,)) for g in ideal.gens]
    kept = minimal_vector_generators(vectors, (0,), ring)
    return tuple(v.entries[0] for v in kept)


def syzygies(polys, cap: int = DEFAULT_DEGREE_CAP) -> list[SyzygyElement]:
    """Minimal generating set of the first syzygy module of ``polys``."""
    polys = list(polys)
    if not polys:
        return []
    ring = polys[0].ring
    for p in polys:
        if p.ring != ring:
            raise RingMismatchError("generators from different rings")
        if not p.is_homogeneous():
            raise ValueError("syzygies need homogeneous input")
        if p.is_zero():
            raise ValueError("zero generator")
    if len(polys) == 1:
        return []
    columns = [(p,) for p in polys]
    raw = kernel_generators(columns, (0,), cap)
    twists = tuple(p.degree() for p in polys)
    return minimal_vector_generators(raw, twists, ring)


@dataclass(frozen=True)
class BettiTable:
    """(homological index i, internal degree j) -> rank of the minimal piece."""

    table: tuple[tuple[tuple[int, int], int], ...]

    def get(self, i: int, j: int) -> int:
        for (ii, jj), v in self.table:
            if ii == i and jj == j:
                return v
        return 0

    def row(self, i: int) -> dict:
        return {j: v for (ii, j), v in self.table if ii == i}

    def max_index(self) -> int:
        return max((i for (i, _), _ in self.table), default=-1)

    def items(self):
        return list(self.table)

    @staticmethod
    def from_dict(d: dict) -> "BettiTable":
        return BettiTable(tuple(sorted(d.items())))


@dataclass(frozen=True)
class Resolution:
    """Minimal graded free resolution of an ideal I (index 0 = generators).

    steps[s] holds the internal degrees (twists) of the s-th free module's
    basis and, for s >= 1, the columns of the map into step s-1.
    """

    ideal_gens: tuple[Polynomial, ...]
    step_twists: tuple[tuple[int, ...], ...]
    maps: tuple[tuple[SyzygyElement, ...], ...]  # maps[s] : F_{s+1} -> F_s
    betti: BettiTable

    def length(self) -> int:
        return len(self.step_twists) - 1


def free_resolution(ideal: Ideal, max_length: int = 3,
                    cap: int = DEFAULT_DEGREE_CAP) -> Resolution:
    """Minimal free resolution of the ideal, up to homological index max_length."""
    if not ideal.homogeneous:
        raise ValueError("resolutions need homogeneous ideals")
    ring = ideal.ring
    gens = list(minimal_generators(ideal, cap))
    if not gens:
        return Resolution((), ((),), (), BettiTable(()))
    twists = tuple(g.degree() for g in gens)
    step_twists = [twists]
    maps: list[tuple[SyzygyElement, ...]] = []
    betti: dict = {}
    for j in twists:
        betti[(0, j)] = betti.get((0, j), 0) + 1
    target_twists: tuple[int, ...] = (0,)
    columns: list[tuple[Polynomial, ...]] = [(g,) for g in gens]
    for s in range(1, max_length + 1):
        raw = kernel_generators(columns, target_twists, cap)
        mins = minimal_vector_generators(raw, step_twists[-1], ring)
        if not mins:
            break
        maps.append(tuple(mins))
        new_twists = tuple(v.degree() for v in mins)
        for j in new_twists:
            betti[(s, j)] = betti.get((s, j), 0) + 1
        target_twists = step_twists[-1]
        columns = [v.entries for v in mins]
        step_twists.append(new_twists)
    return Resolution(tuple(gens), tuple(step_twists), tuple(maps),
                      BettiTable.from_dict(betti))


@dataclass(frozen=True)
class Membership:
    member: bool
    certificate: tuple[Polynomial, ...] | None
    witness: SyzygyElement | None


def module_member(v: SyzygyElement, gens: list[SyzygyElement],
                  cap: int = DEFAULT_DEGREE_CAP) -> Membership:
    """Is v in the submodule generated by gens?  Certificate or witness.

    The certificate c satisfies v = sum c_i * gens[i], verified exactly
    before returning.
    """
    if not gens:
        if v.is_zero():
            return Membership(True, (), None)
        return Membership(False, None, v)
    ring = v.ring
    rank = len(v.entries)
    for g in gens:
        if len(g.entries) != rank or g.twists != v.twists:
            raise ValueError("incompatible free modules")
    key = make_top_key(ring)
    dicts = [_vector_to_intdict(g.entries) for g in gens]
    res = module_buchberger(dicts, ring, key, cap=cap, transform=True)
    vdict = {}
    for comp, e in enumerate(v.entries):
        for exps, c in e.terms:
            vdict[(comp, exps)] = c
    remainder, quots = module_normal_form(vdict, res.basis, res.leads, key,
                                          with_quotients=True)
    if remainder:
        entries = [dict() for _ in range(rank)]
        for (c, exps), val in remainder.items():
            entries[c][exps] = val
        witness = SyzygyElement(tuple(ring.from_dict(d) for d in entries), v.twists)
        return Membership(False, None, witness)
    # cert over original gens: quotients over the basis composed with transforms
    cert_dicts = [dict() for _ in gens]
    for ell, q in enumerate(quots):
        if not q:
            continue
        for j, tr in enumerate(res.transforms[ell]):
            if not tr:
                continue
            acc = cert_dicts[j]
            for qe, qc in q.items():
                for te, tc in tr.items():
                    e = mono_mul(qe, te)
                    acc[e] = acc.get(e, Fraction(0)) + qc * tc
    # primitive scaling of gens: transform rows express basis over the
    # primitive gens, so correct each coefficient by lambda_j
    cert = []
    for j, d in enumerate(cert_dicts):
        lam = _lambda_of(gens[j].entries)
        cert.append(ring.from_dict({e: c * lam for e, c in d.items()}))
    # exact verification
    check = [ring.zero() for _ in range(rank)]
    for cj, g in zip(cert, gens):
        if not cj:
            continue
        for comp in range(rank):
            if g.entries[comp]:
                check[comp] = check[comp] + cj * g.entries[comp]
    for comp in range(rank):
        if check[comp] != v.entries[comp]:
            raise AssertionError("membership certificate failed verification")
    return Membership(True, tuple(cert), None)


def ideal_quotient(ideal: Ideal, other: Ideal,
                   cap: int = DEFAULT_DEGREE_CAP) -> Ideal:
    """(ideal : other) via one kernel computation.

    With J = (h_1..h_q): f lies in the quotient iff f*(h_1,..,h_q) falls in
    the submodule {g_i e_j}; project the kernel of [u | g_i e_j] onto the
    u-coordinate.
    """
    ring = ideal.ring
    if other.ring != ring:
        raise RingMismatchError("ideals in different rings")
    hs = [h for h in other.gens if h]
    if not hs:
        raise ValueError("quotient by the zero ideal")
    if not ideal.gens:
        return ideal
    q = len(hs)
    zero = ring.zero()
    u = tuple(hs)
    columns = [u]
    for g in ideal.gens:
        for j in range(q):
            col = [zero] * q
            col[j] = g
            columns.append(tuple(col))
    target_twists = tuple(-h.degree() for h in hs)
    raw = kernel_generators(columns, target_twists, cap)
    out = []
    seen = set()
    for v in raw:
        f = v.entries[0]
        if f and f.terms not in seen:
            seen.add(f.terms)
            out.append(f)
    quotient = Ideal(ring, out + list(ideal.gens))
    return quotient
