from fractions import Fraction

import pytest

from secantkit.corpus import (
    CorpusError,
    SamplingUnavailable,
    chord_point,
    complete_intersection,
    corpus_generate,
    normalize_point,
    rational_normal_curve,
    segre,
    veronese,
)
from secantkit.rng import DetRng


class TestFamilies:
    def test_twisted_cubic_is_rnc3(self, twisted_cubic):
        assert len(twisted_cubic.ideal.gens) == 3
        assert twisted_cubic.certificate.no_lines
        assert twisted_cubic.certificate.no_conics

    def test_rnc2_is_a_conic(self):
        v = rational_normal_curve(2)
        assert not v.certificate.no_conics

    def test_veronese_minimal_quadrics(self, v2p2):
        assert len(v2p2.ideal.gens) == 6
        assert all(g.degree() == 2 for g in v2p2.ideal.gens)
        assert not v2p2.certificate.no_conics

    def test_big_veronese_has_no_conics(self):
        v = veronese(1, 3)  # the twisted cubic again, as a 3-uple image
        assert v.certificate.no_conics

    def test_segre_has_lines(self):
        s = segre(1, 1)
        assert s.certificate.no_lines is False
        hd = s.ideal.hilbert()
        assert (hd.dim, hd.degree) == (2, 2)

    def test_parametrization_satisfies_generators(self, corpus_all):
        rng = DetRng(123)
        for v in corpus_all:
            if not v.has_parametrization():
                continue
            for t in range(5):
                p = v.sample_point(rng.fork(t))
                for g in v.ideal.gens:
                    assert g.evaluate(list(p)) == 0

    def test_distinct_points_resample_duplicates(self, twisted_cubic):
        rng = DetRng(0)
        pts = twisted_cubic.sample_distinct_points(rng, 6, bound=2)
        assert len({p for p in pts}) == 6

    def test_desk_scale_cap(self):
        with pytest.raises(CorpusError):
            rational_normal_curve(12)
        with pytest.raises(CorpusError):
            veronese(3, 3)


class TestCompleteIntersection:
    def test_seed0_smooth_quartic_curve(self, ci22):
        hd = ci22.ideal.hilbert()
        assert (hd.dim, hd.degree) == (1, 4)
        assert ci22.certificate.no_lines
        assert ci22.certificate.no_conics

    def test_no_parametrization(self, ci22):
        assert not ci22.has_parametrization()
        with pytest.raises(SamplingUnavailable):
            ci22.sample_point(DetRng(0))

    def test_seed_determinism(self):
        a = complete_intersection([2, 2], 7)
        b = complete_intersection([2, 2], 7)
        assert [g.terms for g in a.ideal.gens] == [g.terms for g in b.ideal.gens]

    def test_smoothness_is_actually_checked(self, ci22):
        # the Jacobian minors together with the ideal cut out nothing
        from secantkit.corpus import _ci_is_smooth

        assert _ci_is_smooth(ci22.ideal, list(ci22.ideal.gens), 40)


class TestSpecStrings:
    def test_round_trips(self):
        assert corpus_generate("rational-normal-curve:3").name == "rational-normal-curve:3"
        assert corpus_generate("rnc:4").name == "rational-normal-curve:4"
        assert corpus_generate("veronese:2:2").name == "veronese:2:2"
        assert corpus_generate("segre:1:1").name == "segre:1:1"
        assert corpus_generate("ci:2,2").name == "complete-intersection:2,2:seed0"
        assert corpus_generate("complete-intersection:2,2:seed3").name.endswith("seed3")

    def test_unknown_family(self):
        with pytest.raises(CorpusError):
            corpus_generate("grassmannian:2:4")

    def test_malformed(self):
        with pytest.raises(CorpusError):
            corpus_generate("veronese:x:y")


class TestPoints:
    def test_normalize(self):
        assert normalize_point([0, 2, 4]) == (0, 1, 2)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            normalize_point([0, 0])

    def test_chord(self):
        p = (Fraction(1), Fraction(0), Fraction(0))
        q = (Fraction(0), Fraction(0), Fraction(1))
        assert chord_point(p, q, Fraction(2), Fraction(3)) == (1, 0, Fraction(3, 2))
