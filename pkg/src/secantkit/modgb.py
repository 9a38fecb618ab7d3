"""Buchberger for submodules of graded free modules, over Q only.

Module terms are ``(component, exps)`` keyed by a pluggable order; elements
are content-free integer dicts.  Two modes:

* full completion (``split=None``): reduced-ish basis of the submodule, with
  optional transform tracking (each basis vector expressed over the inputs);
* kernel harvesting (``split=r``): components ``< r`` form a dominant target
  block, the rest carry Schreyer bookkeeping.  Only pairs leading in the
  target block are processed; every reduction to zero leaves a pure
  bookkeeping vector, and those vectors generate the kernel of
  ``e_i -> v_i`` (the extended-Buchberger / Schreyer argument).  The product
  criterion is never used here: discarding a coprime-lead pair would also
  discard its Koszul syzygy, which the harvest needs.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd

from .groebner import DegreeCapExceeded
from .poly import Ring, mono_deg, mono_div, mono_divides, mono_lcm, mono_mul

# a module term is (comp, exps); an element is dict[term] -> int


def make_top_key(ring: Ring):
    rkey = ring.order.key

    def key(term):
        c, e = term
        return (0, rkey(e), -c, 0)

    return key


def make_graph_key(ring: Ring, split: int, coord_leads: list):
    """Target components < split dominate (TOP among themselves); coordinate
    components are Schreyer-ordered through the leads of their images."""
    rkey = ring.order.key
    lead_comp = [t[0] for t in coord_leads]
    lead_exps = [t[1] for t in coord_leads]

    def key(term):
        c, e = term
        if c < split:
            return (1, rkey(e), -c, 0)
        i = c - split
        return (0, rkey(mono_mul(e, lead_exps[i])), -lead_comp[i], -c)

    return key


def _normalize(d: dict, lead) -> dict:
    g = 0
    for v in d.values():
        g = gcd(g, v)
        if g == 1:
            break
    if d[lead] < 0:
        g = -g
    if g not in (0, 1):
        return {t: v // g for t, v in d.items()}
    return d


def _combine(f: dict, cf: int, g: dict, cg: int, shift: tuple) -> dict:
    """cf * f - cg * x^shift * g on module dicts."""
    out = {t: cf * v for t, v in f.items()} if cf != 1 else dict(f)
    for (c, e), v in g.items():
        t = (c, mono_mul(e, shift))
        w = out.get(t, 0) - cg * v
        if w:
            out[t] = w
        else:
            out.pop(t, None)
    return out


def _scale_rep(rep: list[dict], c: Fraction) -> list[dict]:
    return [{e: v * c for e, v in d.items()} for d in rep]


def _combine_rep(fr: list[dict], cf, gr: list[dict], cg, shift: tuple) -> list[dict]:
    out = []
    for df, dg in zip(fr, gr):
        d = {e: v * cf for e, v in df.items()}
        for e, v in dg.items():
            em = mono_mul(e, shift)
            w = d.get(em, 0) - cg * v
            if w:
                d[em] = w
            else:
                d.pop(em, None)
        out.append(d)
    return out


class ModuleBasis:
    """Result bundle: basis dicts, their leads, optional transforms, harvest."""

    def __init__(self):
        self.basis: list[dict] = []
        self.leads: list[tuple] = []
        self.transforms: list[list[dict]] | None = None
        self.harvest: list[dict] = []


def module_buchberger(gens: list[dict], ring: Ring, key, *, cap: int,
                      split: int | None = None,
                      twists: dict | None = None,
                      transform: bool = False) -> ModuleBasis:
    res = ModuleBasis()
    if transform:
        res.transforms = []
    twists = twists or {}

    def sugar_of(d: dict) -> int:
        return max(mono_deg(e) + twists.get(c, 0) for c, e in d)

    pairs: list = []
    pair_set: set = set()
    sugars: list[int] = []

    def push_pair(i: int, j: int):
        ti, tj = res.leads[i], res.leads[j]
        if ti[0] != tj[0]:
            return
        l = mono_lcm(ti[1], tj[1])
        sug = max(
            sugars[i] + mono_deg(l) - mono_deg(ti[1]),
            sugars[j] + mono_deg(l) - mono_deg(tj[1]),
        )
        heapq.heappush(pairs, (sug, key((ti[0], l)), i, j))
        pair_set.add((i, j))

    def reduce_full(d: dict) -> dict:
        work = dict(d)
        remainder: dict = {}
        while work:
            t = max(work, key=key)
            c, e = t
            cv = work[t]
            hit = -1
            for idx, (lc, le) in enumerate(res.leads):
                if lc == c and mono_divides(le, e):
                    hit = idx
                    break
            if hit < 0:
                del work[t]
                remainder[t] = cv
                continue
            g = res.basis[hit]
            cg = g[res.leads[hit]]
            s = gcd(cv, cg)
            cf, ct = cg // s, cv // s
            shift = mono_div(e, res.leads[hit][1])
            work = _combine(work, cf, g, ct, shift)
            if cf != 1 and remainder:
                remainder = {tt: cf * v for tt, v in remainder.items()}
            reduce_full._steps.append((hit, cf, ct, shift))
        return remainder

    def add_element(d: dict, sug: int, rep=None):
        lead = max(d, key=key)
        if split is not None and lead[0] >= split:
            # no target part left: this vector is a kernel generator
            res.harvest.append(_normalize(d, lead))
            return
        g0 = 0
        for v in d.values():
            g0 = gcd(g0, v)
            if g0 == 1:
                break
        if d[lead] < 0:
            g0 = -g0
        if g0 not in (0, 1):
            d = {t: v // g0 for t, v in d.items()}
            if rep is not None:
                rep = _scale_rep(rep, Fraction(1, g0))
        t = len(res.basis)
        # Gebauer-Moeller old-pair filter (chain criterion, syzygy-safe)
        lc, le = lead
        survivors = []
        while pairs:
            survivors.append(heapq.heappop(pairs))
        for entry in survivors:
            _, _, i, j = entry
            if (i, j) not in pair_set:
                continue
            ti, tj = res.leads[i], res.leads[j]
            if ti[0] == lc:
                lij = mono_lcm(ti[1], tj[1])
                if (
                    mono_divides(le, lij)
                    and lij != mono_lcm(ti[1], le)
                    and lij != mono_lcm(tj[1], le)
                ):
                    pair_set.discard((i, j))
                    continue
            heapq.heappush(pairs, entry)
        res.basis.append(d)
        res.leads.append(lead)
        sugars.append(sug)
        if rep is not None:
            res.transforms.append(rep)
        # new pairs: minimal lcms within the same component (no product criterion)
        cands = [i for i in range(t) if res.leads[i][0] == lc]
        lcms = {i: mono_lcm(res.leads[i][1], le) for i in cands}
        for i in cands:
            li = lcms[i]
            redundant = False
            for j in cands:
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
                push_pair(i, t)

    for idx, d in enumerate(gens):
        if not d:
            continue
        rep = None
        if transform:
            rep = [dict() for _ in gens]
            rep[idx] = {(0,) * ring.nvars: Fraction(1)}
        add_element(dict(d), sugar_of(d), rep)

    while pairs:
        sug, _, i, j = heapq.heappop(pairs)
        if (i, j) not in pair_set:
            continue
        pair_set.discard((i, j))
        if sug > cap:
            raise DegreeCapExceeded(cap, sug)
        (ci, ei), (cj, ej) = res.leads[i], res.leads[j]
        l = mono_lcm(ei, ej)
        fi, fj = res.basis[i], res.basis[j]
        cvi, cvj = fi[res.leads[i]], fj[res.leads[j]]
        s = gcd(cvi, cvj)
        shifted = {(c, mono_mul(e, mono_div(l, ei))): v for (c, e), v in fi.items()}
        spoly = _combine(shifted, cvj // s, fj, cvi // s, mono_div(l, ej))
        if transform:
            rep_i = [
                {mono_mul(e, mono_div(l, ei)): v for e, v in dd.items()}
                for dd in res.transforms[i]
            ]
            reduce_full._steps = []
            red = reduce_full(spoly) if spoly else {}
            rep = _combine_rep(rep_i, Fraction(cvj // s), res.transforms[j],
                               Fraction(cvi // s), mono_div(l, ej))
            for hit, cf, ct, shift in reduce_full._steps:
                rep = _combine_rep(rep, Fraction(cf), res.transforms[hit],
                                   Fraction(ct), shift)
        else:
            reduce_full._steps = []
            red = reduce_full(spoly) if spoly else {}
            rep = None
        if red:
            add_element(red, sug, rep)

    return res


def module_normal_form(v: dict, basis: list[dict], leads: list[tuple], key,
                       with_quotients: bool = False):
    """Full reduction of v against a module basis, over Q with Fractions.

    Returns (remainder dict with Fraction values, quotients as list of
    dict exps -> Fraction or None).
    """
    work = {t: Fraction(c) for t, c in v.items()}
    remainder: dict = {}
    quotients = [dict() for _ in basis] if with_quotients else None
    while work:
        t = max(work, key=key)
        c, e = t
        cv = work.pop(t)
        if cv == 0:
            continue
        hit = -1
        for idx, (lc, le) in enumerate(leads):
            if lc == c and mono_divides(le, e):
                hit = idx
                break
        if hit < 0:
            remainder[t] = cv
            continue
        g = basis[hit]
        ratio = cv / g[leads[hit]]
        shift = mono_div(e, leads[hit][1])
        if with_quotients:
            quotients[hit][shift] = quotients[hit].get(shift, Fraction(0)) + ratio
        for (gc, ge), gv in g.items():
            tt = (gc, mono_mul(ge, shift))
            if tt == t:
                continue
            w = work.get(tt, Fraction(0)) - ratio * gv
            if w:
                work[tt] = w
            else:
                work.pop(tt, None)
    return remainder, quotients
