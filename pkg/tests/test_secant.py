from fractions import Fraction

import pytest

from secantkit.corpus import chord_point
from secantkit.groebner import Ideal
from secantkit.poly import Ring
from secantkit.rng import DetRng
from secantkit.secant import (
    BasePointError,
    classify_fiber,
    cubic_generation,
    fiber_ideal,
    quadric_system,
    secant_ideal,
    secant_report,
)


class TestSecantIdeal:
    def test_twisted_cubic_fills_space(self, twisted_cubic):
        assert secant_ideal(twisted_cubic.ideal).is_zero()

    def test_rnc4_hankel_cubic(self, rnc4):
        sec = secant_ideal(rnc4.ideal)
        assert len(sec.gens) == 1
        hd = sec.hilbert()
        assert (hd.dim, hd.degree) == (3, 3)
        # the generator is the 3x3 catalecticant determinant
        R = rnc4.ideal.ring
        x = [R.var(i) for i in range(5)]
        det = (x[0] * (x[2] * x[4] - x[3] * x[3])
               - x[1] * (x[1] * x[4] - x[2] * x[3])
               + x[2] * (x[1] * x[3] - x[2] * x[2]))
        assert sec.contains(det) and Ideal(R, [det]).contains(sec.gens[0])

    def test_v2_symmetric_determinant(self, v2p2):
        sec = secant_ideal(v2p2.ideal)
        assert len(sec.gens) == 1
        hd = sec.hilbert()
        assert (hd.dim, hd.degree) == (4, 3)

    def test_containment_x_inside_secant(self, rnc4):
        # generators of Sec vanish on X: reduce against I after z -> x
        sec = secant_ideal(rnc4.ideal)
        for g in sec.gens:
            assert rnc4.ideal.contains(g)

    def test_chord_points_satisfy_generators(self, rnc4, v2p2):
        for variety in (rnc4, v2p2):
            sec = secant_ideal(variety.ideal)
            if sec.is_zero():
                continue
            rng = DetRng(31)
            for t in range(50):
                sub = rng.fork(t)
                p = variety.sample_point(sub)
                q = variety.sample_point(sub)
                lam = Fraction(sub.nonzero_int(9))
                mu = Fraction(sub.nonzero_int(9))
                pt = [lam * a + mu * b for a, b in zip(p, q)]
                for g in sec.gens:
                    assert g.evaluate(pt) == 0

    def test_dimension_bound(self, corpus_all):
        for v in corpus_all:
            r = v.ideal.hilbert().dim
            n = v.ideal.ring.nvars - 1
            sec = secant_ideal(v.ideal)
            dim_sec = n if sec.is_zero() else sec.hilbert().dim
            assert dim_sec <= min(n, 2 * r + 1)
            assert 2 * r + 1 - dim_sec >= 0


class TestSecantReport:
    def test_rnc4(self, rnc4):
        rep = secant_report(rnc4.ideal)
        assert (rep.dim_x, rep.dim_secant, rep.deficiency) == (1, 3, 0)
        assert rep.dim_y == 2
        assert rep.formula_consistent
        assert rep.degree_secant == 3

    def test_v2(self, v2p2):
        rep = secant_report(v2p2.ideal)
        assert (rep.dim_x, rep.dim_secant, rep.deficiency) == (2, 4, 1)
        assert rep.dim_y == 2
        assert rep.formula_consistent

    def test_twisted_cubic(self, twisted_cubic):
        rep = secant_report(twisted_cubic.ideal)
        assert rep.fills_space
        assert (rep.deficiency, rep.dim_y) == (0, 2)
        assert rep.formula_consistent

    def test_whole_space_has_no_quadrics(self):
        R = Ring(("x0", "x1", "x2"))
        with pytest.raises(ValueError):
            secant_report(Ideal(R, []))


class TestFiberIdeal:
    def test_point_on_base_rejected(self, rnc4):
        p = rnc4.parametrize([Fraction(1), Fraction(2)])
        with pytest.raises(BasePointError):
            fiber_ideal(list(rnc4.ideal.gens), p)

    def test_chord_fiber_is_the_secant_line(self, rnc4):
        p = rnc4.parametrize([Fraction(1), Fraction(0)])
        q = rnc4.parametrize([Fraction(0), Fraction(1)])
        pt = chord_point(p, q, Fraction(1), Fraction(1))
        fib = fiber_ideal(list(rnc4.ideal.gens), pt)
        hd = fib.hilbert()
        assert (hd.dim, hd.degree) == (1, 1)
        gens = fib.min_gens()
        assert sorted(g.degree() for g in gens) == [1, 1, 1]

    def test_off_secant_fiber_is_the_point(self, rnc4):
        sec = secant_ideal(rnc4.ideal)
        cubic = sec.gens[0]
        rng = DetRng(8)
        pt = None
        while pt is None:
            cand = [Fraction(rng.randint(-5, 5)) for _ in range(5)]
            if any(cand) and cubic.evaluate(cand) != 0:
                pt = cand
        cls = classify_fiber(list(rnc4.ideal.gens), rnc4.ideal, pt)
        assert cls.kind == "point"

    def test_v2_fiber_is_a_plane_meeting_x_in_a_conic(self, v2p2):
        rng = DetRng(12)
        p = v2p2.sample_point(rng)
        q = v2p2.sample_point(rng)
        pt = chord_point(p, q, Fraction(1), Fraction(1))
        cls = classify_fiber(quadric_system(v2p2.ideal), v2p2.ideal, pt)
        assert cls.kind == "linear"
        assert cls.fiber_dim == 2
        assert (cls.intersection_dim, cls.intersection_degree) == (1, 2)


class TestCubicGeneration:
    def test_secant_cubics(self, rnc4, v2p2):
        assert cubic_generation(secant_ideal(rnc4.ideal))
        assert cubic_generation(secant_ideal(v2p2.ideal))

    def test_quartic_generator_detected(self):
        R = Ring(("x0", "x1", "x2"))
        I = Ideal(R, [R.var(0) ** 4 + R.var(1) ** 4, R.var(1) * R.var(2)])
        assert not cubic_generation(I)
