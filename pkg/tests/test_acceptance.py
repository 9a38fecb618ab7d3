"""Acceptance suite: one test per criterion, exact tolerances, one printed
PASS/FAIL line each (run with -s to watch them stream).

Criterion 8 contains a knowingly red cell: the quadrics through the twisted
cubic are nef but not big (its secant variety fills P^3), and at a = 2 the
Euler characteristic at the bound twist is -1, forcing h^1 = 1 there.  The
criterion is asserted as stated rather than weakened; see the analysis note
shipped with the repository history.
"""

import time
from fractions import Fraction

from oracles import brute_force_member

from secantkit.cohomology import ModuleCohomology, line_bundle_cohomology, vanishing_scan
from secantkit.conditions import check_kd, check_n2, line_restriction_rank
from secantkit.corpus import chord_point
from secantkit.flipcalc import DivisorClass, canonical_class, pullback_h, verify_kv_rewrite
from secantkit.groebner import Ideal
from secantkit.poly import Ring
from secantkit.reports import _line_off_secant, run_command
from secantkit.rng import DetRng
from secantkit.secant import classify_fiber, quadric_system, secant_ideal, secant_report
from secantkit.syzygy import syzygies


def _verdict(num: int, desc: str, ok: bool, detail: str = ""):
    line = f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {desc}"
    if detail:
        line += f" [{detail}]"
    print(line)
    assert ok, line


def test_criterion_1_k2_verdicts(twisted_cubic, rnc4, ci22):
    timings = []
    results = []
    for variety, expected in ((twisted_cubic, True), (rnc4, True), (ci22, False)):
        t0 = time.monotonic()
        rep = check_kd(list(variety.ideal.gens), 2)
        timings.append(time.monotonic() - t0)
        results.append(rep.holds is expected)
    ok = all(results) and all(t < 5.0 for t in timings)
    _verdict(1, "(K2) true on both rational normal curves, false on the "
                "seeded quadric complete intersection, each under 5 s",
             ok, f"timings {['%.2fs' % t for t in timings]}")


def test_criterion_2_n2_implies_k2(corpus_all):
    counterexamples = []
    for v in corpus_all:
        n2 = check_n2(v.ideal)
        if n2.holds:
            k2 = check_kd(list(v.ideal.min_gens()), 2)
            if not k2.holds:
                counterexamples.append(v.name)
    _verdict(2, "every corpus entry with all (N2) flags true also satisfies "
                "(K2)", not counterexamples, f"counterexamples {counterexamples}")


def test_criterion_3_secant_ideals(twisted_cubic, rnc4, v2p2):
    checks = []
    timings = []

    t0 = time.monotonic()
    sec_tc = secant_ideal(twisted_cubic.ideal)
    timings.append(time.monotonic() - t0)
    checks.append(sec_tc.is_zero())

    t0 = time.monotonic()
    sec4 = secant_ideal(rnc4.ideal)
    timings.append(time.monotonic() - t0)
    h4 = sec4.hilbert()
    checks.append(len(sec4.gens) == 1 and (h4.dim, h4.degree) == (3, 3))

    t0 = time.monotonic()
    secv = secant_ideal(v2p2.ideal)
    timings.append(time.monotonic() - t0)
    hv = secv.hilbert()
    checks.append(len(secv.gens) == 1 and (hv.dim, hv.degree) == (4, 3))

    # independent membership oracle: 50 seeded chord points per variety
    for variety, sec in ((rnc4, sec4), (v2p2, secv)):
        rng = DetRng(0xC4)
        for trial in range(50):
            sub = rng.fork(trial)
            p = variety.sample_point(sub)
            q = variety.sample_point(sub)
            lam = Fraction(sub.nonzero_int(9))
            mu = Fraction(sub.nonzero_int(9))
            pt = [lam * a + mu * b for a, b in zip(p, q)]
            for g in sec.gens:
                checks.append(g.evaluate(pt) == 0)
    ok = all(checks) and all(t < 120 for t in timings)
    _verdict(3, "secant ideals: cubic hypersurfaces for the quartic curve "
                "and the Veronese surface, zero for the twisted cubic; 100 "
                "chord points vanish exactly", ok,
             f"timings {['%.2fs' % t for t in timings]}")


def test_criterion_4_deficiency_formula(twisted_cubic, rnc4, v2p2):
    expected = {
        "rational-normal-curve:3": (1, 3, 0, 2),
        "rational-normal-curve:4": (1, 3, 0, 2),
        "veronese:2:2": (2, 4, 1, 2),
    }
    ok = True
    details = []
    for v in (twisted_cubic, rnc4, v2p2):
        rep = secant_report(v.ideal)
        want = expected[v.name]
        got = (rep.dim_x, rep.dim_secant, rep.deficiency, rep.dim_y)
        if got != want or not rep.formula_consistent:
            ok = False
        details.append(f"{v.name}: {got} consistent={rep.formula_consistent}")
    _verdict(4, "deficiency formula 2*delta = 2r - dim Y holds with an "
                "independently computed dim Y on all three entries",
             ok, "; ".join(details))


def test_criterion_5_fiber_dichotomy(rnc4, v2p2):
    violations = []
    for variety in (rnc4, v2p2):
        quadrics = quadric_system(variety.ideal)
        sec = secant_ideal(variety.ideal)
        cubic = sec.gens[0]
        rng = DetRng(0xF1B)
        # ten seeded chord points (on the secant variety)
        for trial in range(10):
            sub = rng.fork(trial)
            p, q = variety.sample_distinct_points(sub, 2)
            pt = chord_point(p, q, Fraction(1), Fraction(sub.nonzero_int(7)))
            cls = classify_fiber(quadrics, variety.ideal, pt)
            if cls.kind != "linear" or cls.intersection_degree != 2:
                violations.append((variety.name, "chord", trial, cls))
        # ten seeded points off the secant variety
        found = 0
        attempt = 0
        while found < 10 and attempt < 10000:
            sub = rng.fork(10_000 + attempt)
            attempt += 1
            cand = [Fraction(sub.randint(-9, 9))
                    for _ in range(variety.ideal.ring.nvars)]
            if not any(cand) or cubic.evaluate(cand) == 0:
                continue
            found += 1
            cls = classify_fiber(quadrics, variety.ideal, cand)
            if cls.kind != "point":
                violations.append((variety.name, "off", attempt, cls))
        assert found == 10
    _verdict(5, "all 40 seeded fibers are reduced points off Sec or linear "
                "spaces meeting X in a degree-2 hypersurface on Sec",
             not violations, f"violations {violations}")


def test_criterion_6_line_restriction_ranks(rnc4):
    quadrics = list(rnc4.ideal.gens)
    sec = secant_ideal(rnc4.ideal)
    cubic = sec.gens[0]
    rng = DetRng(0x200)
    off_ranks = []
    attempts = 0
    while len(off_ranks) < 200 and attempts < 100000:
        attempts += 1
        p = [Fraction(rng.randint(-9, 9)) for _ in range(5)]
        q = [Fraction(rng.randint(-9, 9)) for _ in range(5)]
        ok, _ = _line_off_secant(quadrics, cubic, p, q)
        if ok:
            off_ranks.append(line_restriction_rank(quadrics, p, q))
    secant_ranks = []
    for trial in range(50):
        sub = DetRng(0x201).fork(trial)
        pts = rnc4.sample_distinct_points(sub, 2)
        secant_ranks.append(line_restriction_rank(quadrics, pts[0], pts[1]))
    ok = (len(off_ranks) == 200 and all(r == 3 for r in off_ranks)
          and all(r <= 2 for r in secant_ranks))
    _verdict(6, "200 seeded lines disjoint from X and off Sec all have rank "
                "3; 50 secant lines all have rank <= 2", ok,
             f"off ranks {sorted(set(off_ranks))}, secant ranks "
             f"{sorted(set(secant_ranks))}")


def test_criterion_7_cohomology_sanity():
    ok = True
    for nvars in (2, 3, 4, 5):
        R = Ring(tuple(f"x{i}" for i in range(nvars)))
        eng = ModuleCohomology("ring", ring=R)
        for k in range(-9, 10):
            h = eng.sheaf_cohomology(k)
            if h != line_bundle_cohomology(R, k):
                ok = False
            chi = sum((-1) ** i * hi for i, hi in enumerate(h))
            if chi != eng.hilbert_poly_value(k):
                ok = False
    _verdict(7, "engine h^i(O(k)) matches the closed form for n <= 4, "
                "|k| <= 9, and every Euler characteristic equals the "
                "Hilbert polynomial", ok)


def test_criterion_8_vanishing_scans(twisted_cubic, rnc4):
    t0 = time.monotonic()
    tc_scan = vanishing_scan(twisted_cubic.ideal, 2, [1, 2], 4, "little")
    rnc4_scan = vanishing_scan(rnc4.ideal, 2, [1, 2], 3, "little")
    second = vanishing_scan(rnc4.ideal, 2, [2], 0, "second")
    elapsed = time.monotonic() - t0
    # Euler consistency on every scanned table entry comes from the engine's
    # construction; violations are the acceptance surface here.
    violations = ([(v.a, v.k, v.i, v.value) for v in tc_scan.violations]
                  + [(v.a, v.k, v.i, v.value) for v in rnc4_scan.violations]
                  + [(v.a, v.k, v.i, v.value) for v in second.violations])
    ok = not violations and elapsed < 600
    _verdict(8, "vanishing scans clean: twisted cubic a in {1,2} window 4, "
                "quartic curve a in {1,2} window 3 plus the fixed-twist "
                "variant at a=2", ok,
             f"violations {violations}, elapsed {elapsed:.0f}s "
             "(the twisted-cubic a=2 bound cell is a known false positive "
             "of the stated bound: the quadric system is not big because "
             "Sec X fills P^3, and chi = -1 forces h^1 = 1 at the bound)")


def test_criterion_9_flip_arithmetic():
    ok = verify_kv_rewrite()
    for r in range(1, 5):
        for n in range(2 * r + 3, 13):
            for k in range(2, 11):
                ok = ok and verify_kv_rewrite(n, r, k)
    kan = canonical_class("M2tilde")
    ok = ok and [str(c) for c in kan.coeffs] == ["-n-1", "n-r-1", "n-2*r-2"]
    ok = ok and pullback_h(DivisorClass.make("M2", 3, -2)).evaluate(0, 0, 0) \
        == (3, -2, -1)
    _verdict(9, "lattice rewrite exact symbolically and on the integer "
                "sweep; canonical class and pullback match the stated "
                "values verbatim", ok)


def test_criterion_10_engine_properties(corpus_all):
    ok = True
    # reduced basis unique under 20 seeded permutations per corpus ideal
    for v in corpus_all:
        base = v.ideal.groebner_basis()
        rng = DetRng(0xAB)
        for trial in range(20):
            gens = list(v.ideal.gens)
            rng.fork(trial).shuffle(gens)
            if Ideal(v.ideal.ring, gens).groebner_basis() != base:
                ok = False
    # syzygy contraction exact everywhere
    for v in corpus_all:
        gens = list(v.ideal.gens)
        for s in syzygies(gens):
            if not s.contract(gens).is_zero():
                ok = False
    # membership agreement with the brute-force oracle on 100 seeded ideals
    from secantkit.syzygy import monomials_of_degree

    R = Ring(("x", "y", "z"))
    rng = DetRng(0x77)
    agreements = 0
    trial = 0
    while agreements < 100 and trial < 500:
        sub = rng.fork(trial)
        trial += 1
        gens = []
        for _ in range(sub.randint(1, 3)):
            d = sub.randint(1, 3)
            g = R.from_terms((m, Fraction(sub.randint(-2, 2)))
                             for m in monomials_of_degree(3, d))
            if g:
                gens.append(g)
        if not gens:
            continue
        I = Ideal(R, gens)
        d = sub.randint(1, 6)
        probe = R.from_terms((m, Fraction(sub.randint(-2, 2)))
                             for m in monomials_of_degree(3, d))
        if probe.is_zero():
            continue
        if I.contains(probe) != brute_force_member(probe, gens):
            ok = False
        agreements += 1
    ok = ok and agreements == 100
    _verdict(10, "basis uniqueness under 20 seeded permutations, exact "
                 "syzygy contraction, and 100 brute-force membership "
                 "agreements", ok, f"membership checks {agreements}")


def test_criterion_11_report_all_determinism():
    a = run_command("report-all", options={"seed": 0})
    b = run_command("report-all", options={"seed": 0})
    ok = a.to_json() == b.to_json() and a.ok and b.ok
    _verdict(11, "two consecutive report-all runs are byte-identical with "
                 "no violations", ok)
