"""Groebner engine: Buchberger with sugar selection and Gebauer-Moeller
pair pruning, normal forms, elimination, quotients and saturation.

Internally polynomials live as ``dict exps -> int``: over Q the dicts are
content-free integer polynomials with positive leading coefficient
(fraction-free reduction keeps coefficients small), over GF(p) the values are
canonical residues.  The public surface speaks :class:`~secantkit.poly.Polynomial`.

Determinism: pair selection is a heap ordered by (sugar, lcm key, i, j), the
reducer is always the first match in basis order, and the reduced basis is
returned sorted by leading monomial.  Identical inputs give identical bases,
bit for bit.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd

from .fields import Field, PrimeField
from .poly import (
    GREVLEX,
    MonomialOrder,
    Polynomial,
    Ring,
    RingMismatchError,
    block_order,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

DEFAULT_DEGREE_CAP = 40


class DegreeCapExceeded(RuntimeError):
    """Raised instead of letting a runaway basis computation hang."""

    def __init__(self, cap: int, degree: int):
        super().__init__(
            f"computation needs degree {degree}, above the cap {cap}; "
            "raise --degree-cap if this is intended"
        )
        self.cap = cap
        self.degree = degree


# ---------------------------------------------------------------------------
# integer-dict polynomial helpers

def _poly_to_intdict(f: Polynomial) -> dict:
    """Clear denominators and strip content; GF(p) values pass through."""
    if not f.terms:
        return {}
    if f.ring.field.tag == "q":
        den = 1
        for _, c in f.terms:
            den = den * c.denominator // gcd(den, c.denominator)
        vals = {e: int(c * den) for e, c in f.terms}
        g = 0
        for v in vals.values():
            g = gcd(g, v)
        return {e: v // g for e, v in vals.items()}
    return {e: int(c) for e, c in f.terms}


def _intdict_to_poly(d: dict, ring: Ring, monic: bool, key) -> Polynomial:
    if not d:
        return ring.zero()
    items = sorted(d.items(), key=lambda t: key(t[0]), reverse=True)
    if ring.field.tag == "q":
        lead = items[0][1]
        if monic:
            terms = tuple((e, Fraction(c, lead)) for e, c in items)
        else:
            sign = -1 if lead < 0 else 1
            terms = tuple((e, Fraction(sign * c)) for e, c in items)
    else:
        p = ring.field.p
        if monic:
            inv = ring.field.inv(items[0][1])
            terms = tuple((e, (c * inv) % p) for e, c in items)
        else:
            terms = tuple((e, c % p) for e, c in items)
    return Polynomial(ring, terms)


class _QArith:
    """Coefficient strategy over Q: primitive integer storage, monic
    Fraction reducers inside the division loop."""

    tag = "q"

    @staticmethod
    def normalize(d: dict, lead) -> dict:
        g = 0
        for v in d.values():
            g = gcd(g, v)
            if g == 1:
                break
        if d.get(lead, 1) < 0:
            g = -g
        if g not in (0, 1):
            return {e: v // g for e, v in d.items()}
        return d



class _PArith:
    """Arithmetic mod p; basis elements are kept monic."""

    tag = "p"

    def __init__(self, p: int):
        self.p = p

    def normalize(self, d: dict, lead) -> dict:
        inv = pow(d[lead], self.p - 2, self.p)
        if inv == 1:
            return d
        return {e: (v * inv) % self.p for e, v in d.items()}



def _arith_for(field: Field):
    if field.tag == "q":
        return _QArith()
    if isinstance(field, PrimeField):
        return _PArith(field.p)
    raise RingMismatchError(f"no groebner arithmetic for field {field}")


def _support_mask(exps: tuple) -> int:
    m = 0
    for i, e in enumerate(exps):
        if e:
            m |= 1 << i
    return m


def _reduce_full(d: dict, reducers: list, leads: list, masks: list, order,
                 arith) -> dict:
    """Full normal form with a heap-tracked leading term.

    Over Q this is fraction-free pseudo-reduction against primitive integer
    reducers (the working polynomial and emitted remainder are rescaled
    together, with periodic content stripping); over GF(p) the reducers are
    monic mod p.  Returns a primitive / canonical dict.
    """
    if arith.tag == "p":
        return _reduce_full_p(d, reducers, leads, masks, order, arith.p)
    negkey = order.neg_key
    work = dict(d)
    heap = [(negkey(e), e) for e in work]
    heapq.heapify(heap)
    remainder: dict = {}
    steps = 0
    while heap:
        _, e = heapq.heappop(heap)
        c = work.get(e)
        if not c:
            work.pop(e, None)
            continue
        emask = _support_mask(e)
        hit = -1
        for idx, le in enumerate(leads):
            if masks[idx] & ~emask:
                continue
            if mono_divides(le, e):
                hit = idx
                break
        if hit < 0:
            del work[e]
            remainder[e] = c
            continue
        g = reducers[hit]
        lead = leads[hit]
        lg = g[lead]
        s = gcd(c, lg)
        cf, ct = lg // s, c // s
        if cf != 1:
            for t in work:
                work[t] *= cf
            for t in remainder:
                remainder[t] *= cf
        del work[e]
        shift = mono_div(e, lead)
        for ge, gv in g.items():
            if ge == lead:
                continue
            t = mono_mul(ge, shift)
            prev = work.get(t)
            if prev is None:
                work[t] = -ct * gv
                heapq.heappush(heap, (negkey(t), t))
            else:
                w = prev - ct * gv
                if w:
                    work[t] = w
                else:
                    del work[t]
        steps += 1
        if steps & 127 == 0:
            g0 = 0
            for v in work.values():
                g0 = gcd(g0, v)
                if g0 == 1:
                    break
            if g0 > 1:
                for v in remainder.values():
                    g0 = gcd(g0, v)
                    if g0 == 1:
                        break
            if g0 > 1:
                for t in work:
                    work[t] //= g0
                for t in remainder:
                    remainder[t] //= g0
    if not remainder:
        return {}
    g0 = 0
    for v in remainder.values():
        g0 = gcd(g0, v)
        if g0 == 1:
            return remainder
    return {e: v // g0 for e, v in remainder.items()}


def _reduce_full_p(d: dict, monics: list, leads: list, masks: list, order,
                   p: int) -> dict:
    negkey = order.neg_key
    work = {e: c % p for e, c in d.items()}
    heap = [(negkey(e), e) for e in work]
    heapq.heapify(heap)
    remainder: dict = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = work.get(e)
        if not c:
            work.pop(e, None)
            continue
        emask = _support_mask(e)
        hit = -1
        for idx, le in enumerate(leads):
            if masks[idx] & ~emask:
                continue
            if mono_divides(le, e):
                hit = idx
                break
        if hit < 0:
            del work[e]
            remainder[e] = c
            continue
        del work[e]
        lead = leads[hit]
        shift = mono_div(e, lead)
        for ge, gv in monics[hit].items():
            if ge == lead:
                continue
            t = mono_mul(ge, shift)
            prev = work.get(t)
            if prev is None:
                w = (-c * gv) % p
                if w:
                    work[t] = w
                    heapq.heappush(heap, (negkey(t), t))
            else:
                w = (prev - c * gv) % p
                if w:
                    work[t] = w
                else:
                    del work[t]
    return remainder


def _sugar_of(d: dict) -> int:
    return max(mono_deg(e) for e in d) if d else -1


def _buchberger(seeds: list[dict], ring: Ring, cap: int) -> list[dict]:
    """Reduced basis of the ideal generated by the seed dicts."""
    arith = _arith_for(ring.field)
    key = ring.order.key

    basis: list[dict] = []
    masks: list[int] = []
    leads: list[tuple] = []
    sugars: list[int] = []
    pairs: list = []  # heap of (sugar, lcm_key, i, j)
    pair_set: set = set()

    def push_pair(i: int, j: int):
        li, lj = leads[i], leads[j]
        l = mono_lcm(li, lj)
        sug = max(
            sugars[i] + mono_deg(l) - mono_deg(li),
            sugars[j] + mono_deg(l) - mono_deg(lj),
        )
        heapq.heappush(pairs, (sug, key(l), i, j))
        pair_set.add((i, j))

    def add_element(d: dict, sug: int):
        t = len(basis)
        lt = max(d, key=key)
        d = arith.normalize(d, lt)
        masks.append(_support_mask(lt))
        # Gebauer-Moeller: drop old pairs whose lcm is a proper multiple
        lt_new = lt
        survivors = []
        while pairs:
            entry = heapq.heappop(pairs)
            survivors.append(entry)
        for entry in survivors:
            _, _, i, j = entry
            if (i, j) not in pair_set:
                continue
            lij = mono_lcm(leads[i], leads[j])
            if (
                mono_divides(lt_new, lij)
                and lij != mono_lcm(leads[i], lt_new)
                and lij != mono_lcm(leads[j], lt_new)
            ):
                pair_set.discard((i, j))
            else:
                heapq.heappush(pairs, entry)
        basis.append(d)
        leads.append(lt)
        sugars.append(sug)
        # new pairs, minimal lcms only
        lcms = {}
        for i in range(t):
            lcms[i] = mono_lcm(leads[i], lt_new)
        keep = []
        for i in range(t):
            li = lcms[i]
            redundant = False
            for j in range(t):
                if j == i:
                    continue
                lj = lcms[j]
                if lj != li and mono_divides(lj, li):
                    redundant = True
                    break
                if lj == li and j < i:
                    redundant = True
                    break
            if not redundant:
                keep.append(i)
        for i in keep:
            # product criterion: coprime leading monomials reduce to zero
            if lcms[i] == mono_mul(leads[i], lt_new):
                continue
            push_pair(i, t)

    def spoly_of(i: int, j: int) -> dict:
        li, lj = leads[i], leads[j]
        l = mono_lcm(li, lj)
        fi, fj = basis[i], basis[j]
        ci, cj = fi[li], fj[lj]
        si, sj = mono_div(l, li), mono_div(l, lj)
        if arith.tag == "q":
            s = gcd(ci, cj)
            ci, cj = ci // s, cj // s
        out = {mono_mul(e, si): cj * v for e, v in fi.items()}
        for e, v in fj.items():
            t = mono_mul(e, sj)
            w = out.get(t, 0) - ci * v
            if w:
                out[t] = w
            else:
                out.pop(t, None)
        return out

    for d in seeds:
        if d:
            add_element(dict(d), _sugar_of(d))

    while pairs:
        sug, _, i, j = heapq.heappop(pairs)
        if (i, j) not in pair_set:
            continue
        pair_set.discard((i, j))
        if sug > cap:
            raise DegreeCapExceeded(cap, sug)
        red = _reduce_full(spoly_of(i, j), basis, leads, masks, ring.order, arith)
        if red:
            add_element(red, sug)

    # minimalize: keep only elements whose lead is not divisible by another lead
    order_idx = sorted(range(len(basis)), key=lambda i: key(leads[i]))
    minimal: list[int] = []
    for i in order_idx:
        if not any(mono_divides(leads[j], leads[i]) for j in minimal):
            minimal.append(i)
    # interreduce tails
    reduced: list[dict] = []
    min_leads = [leads[i] for i in minimal]
    min_masks = [masks[i] for i in minimal]
    for pos, i in enumerate(minimal):
        others = [basis[minimal[k]] for k in range(len(minimal)) if k != pos]
        other_leads = [min_leads[k] for k in range(len(minimal)) if k != pos]
        other_masks = [min_masks[k] for k in range(len(minimal)) if k != pos]
        r = _reduce_full(basis[i], others, other_leads, other_masks, ring.order, arith)
        reduced.append(r)
    reduced.sort(key=lambda d: key(max(d, key=key)))
    return reduced


# ---------------------------------------------------------------------------
# public surface

class Ideal:
    """Ideal in a polynomial ring with cached reduced bases per order."""

    __slots__ = ("ring", "gens", "_gb_cache", "_hilbert")

    def __init__(self, ring: Ring, gens):
        self.ring = ring
        cleaned = []
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator from a different ring")
            if g:
                cleaned.append(g)
        self.gens = tuple(cleaned)
        self._gb_cache: dict = {}
        self._hilbert = None

    def __repr__(self):
        return f"Ideal({len(self.gens)} gens in {self.ring!r})"

    @property
    def homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    # -- groebner ------------------------------------------------------------

    def groebner_basis(self, order: MonomialOrder | None = None,
                       cap: int = DEFAULT_DEGREE_CAP) -> tuple[Polynomial, ...]:
        order = order or self.ring.order
        cache_key = (order, cap)
        hit = self._gb_cache.get(cache_key)
        if hit is not None:
            return hit
        # a basis computed under the same order at any cap is the same basis
        for (o, _c), basis in self._gb_cache.items():
            if o == order:
                self._gb_cache[cache_key] = basis
                return basis
        ring = self.ring if order == self.ring.order else self.ring.with_order(order)
        seeds = [_poly_to_intdict(g) for g in self.gens]
        reduced = _buchberger(seeds, ring, cap)
        out = tuple(_intdict_to_poly(d, ring, monic=True, key=ring.order.key) for d in reduced)
        self._gb_cache[cache_key] = out
        return out

    def normal_form(self, f: Polynomial, order: MonomialOrder | None = None,
                    cap: int = DEFAULT_DEGREE_CAP) -> Polynomial:
        """Remainder of f; zero iff f lies in the ideal."""
        order = order or self.ring.order
        gb = self.groebner_basis(order, cap)
        ring = gb[0].ring if gb else (
            self.ring if order == self.ring.order else self.ring.with_order(order)
        )
        if f.ring.vars != ring.vars or f.ring.field != ring.field:
            raise RingMismatchError("polynomial from a different ring")
        work = f if f.ring == ring else ring.from_terms(f.terms)
        remainder = _field_normal_form(work, gb)[0]
        if remainder.ring != f.ring:
            remainder = f.ring.from_terms(remainder.terms)
        return remainder

    def normal_form_with_quotients(self, f: Polynomial,
                                   cap: int = DEFAULT_DEGREE_CAP):
        gb = self.groebner_basis(self.ring.order, cap)
        work = f if f.ring == self.ring else self.ring.from_terms(f.terms)
        return _field_normal_form(work, gb)

    def contains(self, f: Polynomial, cap: int = DEFAULT_DEGREE_CAP) -> bool:
        return self.normal_form(f, cap=cap).is_zero()

    def contains_ideal(self, other: "Ideal", cap: int = DEFAULT_DEGREE_CAP) -> bool:
        return all(self.contains(g, cap=cap) for g in other.gens)

    def equals(self, other: "Ideal", cap: int = DEFAULT_DEGREE_CAP) -> bool:
        return self.contains_ideal(other, cap) and other.contains_ideal(self, cap)

    # -- constructions --------------------------------------------------------

    def plus(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise RingMismatchError("ideals in different rings")
        return Ideal(self.ring, self.gens + other.gens)

    def product(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise RingMismatchError("ideals in different rings")
        return Ideal(self.ring, tuple(a * b for a in self.gens for b in other.gens))

    def power(self, a: int) -> "Ideal":
        if a < 1:
            raise ValueError("power must be >= 1")
        out = self
        for _ in range(a - 1):
            out = out.product(self)
        # a-fold products repeat; dedup keeps generator lists small
        seen = []
        terms_seen = set()
        for g in out.gens:
            if g.terms not in terms_seen:
                terms_seen.add(g.terms)
                seen.append(g)
        return Ideal(self.ring, seen)

    def eliminate(self, first_block: int, cap: int = DEFAULT_DEGREE_CAP) -> "Ideal":
        """Intersection with the subring dropping the first ``first_block`` vars."""
        n = self.ring.nvars
        if first_block < 0 or first_block > n:
            raise ValueError("block size out of range")
        if first_block == 0:
            return self
        gb = self.groebner_basis(block_order(first_block), cap)
        rest = Ring(self.ring.vars[first_block:], self.ring.field, GREVLEX)
        out = []
        for g in gb:
            if all(all(e == 0 for e in exps[:first_block]) for exps, _ in g.terms):
                out.append(rest.from_terms(
                    (exps[first_block:], c) for exps, c in g.terms
                ))
        return Ideal(rest, out)

    def quotient(self, other: "Ideal", cap: int = DEFAULT_DEGREE_CAP) -> "Ideal":
        """Ideal quotient (self : other)."""
        from .syzygy import ideal_quotient

        return ideal_quotient(self, other, cap)

    def saturate(self, other: "Ideal", cap: int = DEFAULT_DEGREE_CAP) -> "Ideal":
        """(self : other^infinity) by iterated quotient, GB-equality stop."""
        if not other.gens:
            raise ValueError("saturation by the zero ideal")
        current = self
        current_gb = current.groebner_basis(cap=cap)
        while True:
            nxt = current.quotient(other, cap)
            nxt_gb = nxt.groebner_basis(cap=cap)
            if nxt_gb == current_gb:
                return current
            current, current_gb = nxt, nxt_gb

    def min_gens(self, cap: int = DEFAULT_DEGREE_CAP) -> tuple[Polynomial, ...]:
        """Minimal homogeneous generators (graded Nakayama pruning)."""
        from .syzygy import minimal_generators

        return minimal_generators(self, cap)

    # -- numerics --------------------------------------------------------------

    def hilbert(self, cap: int = DEFAULT_DEGREE_CAP):
        from .hilbert import hilbert_data

        if self._hilbert is None:
            self._hilbert = hilbert_data(self, cap)
        return self._hilbert

    def dim(self) -> int:
        return self.hilbert().dim

    def degree(self) -> int:
        return self.hilbert().degree


def _field_normal_form(f: Polynomial, gb: tuple[Polynomial, ...]):
    """Division with quotients against a monic basis, over the ring's field."""
    ring = f.ring
    field = ring.field
    key = ring.order.key
    quotients = [ring.zero() for _ in gb]
    leads = [g.leading_exps() for g in gb]
    work = dict(f.terms)
    remainder: dict = {}
    while work:
        e = max(work, key=key)
        c = work.pop(e)
        if field.is_zero(c):
            continue
        hit = -1
        for idx, le in enumerate(leads):
            if mono_divides(le, e):
                hit = idx
                break
        if hit < 0:
            remainder[e] = c
            continue
        shift = mono_div(e, leads[hit])
        quotients[hit] = quotients[hit] + ring.monomial(shift, c)
        for exps, cc in gb[hit].terms:
            em = mono_mul(exps, shift)
            prev = work.get(em, field.zero)
            val = field.sub(prev, field.mul(c, cc)) if em != e else field.zero
            if em == e:
                continue
            if field.is_zero(val):
                work.pop(em, None)
            else:
                work[em] = val
    return ring.from_dict(remainder), quotients


def irrelevant_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, [ring.var(i) for i in range(ring.nvars)])


def kernel_of_map(images: list[Polynomial], target_names=None,
                  modulo: Ideal | None = None,
                  cap: int = DEFAULT_DEGREE_CAP) -> Ideal:
    """Ideal of algebraic relations among homogeneous images of equal degree.

    Graph-and-eliminate: in k[source vars, t_0..t_s] form (t_i - image_i),
    plus the relations of ``modulo`` when the map is restricted to a
    subvariety, then eliminate the source block.
    """
    if not images:
        raise ValueError("no images")
    src = images[0].ring
    degs = set()
    for f in images:
        if f.ring != src:
            raise RingMismatchError("images from different rings")
        if not f.is_homogeneous() or f.is_zero():
            raise ValueError("images must be nonzero homogeneous of equal degree")
        degs.add(f.degree())
    if len(degs) != 1:
        raise ValueError("images must be nonzero homogeneous of equal degree")
    if modulo is not None and modulo.ring != src:
        raise RingMismatchError("modulo ideal in a different ring")
    if target_names is None:
        target_names = tuple(f"t{i}" for i in range(len(images)))
    if set(target_names) & set(src.vars):
        raise ValueError("target names clash with source variables")
    k = src.nvars
    big = Ring(src.vars + tuple(target_names), src.field, block_order(k))
    pad = (0,) * len(images)

    def lift(f: Polynomial) -> Polynomial:
        return big.from_terms((exps + pad, c) for exps, c in f.terms)

    gens = []
    if modulo is not None:
        gens.extend(lift(g) for g in modulo.gens)
    for i, f in enumerate(images):
        evec = [0] * big.nvars
        evec[k + i] = 1
        gens.append(big.monomial(tuple(evec)) - lift(f))
    joined = Ideal(big, gens)
    return joined.eliminate(k, cap)
