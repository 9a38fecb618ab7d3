from fractions import Fraction

import pytest

from secantkit.fields import PrimeField
from secantkit.inputlang import InputError, parse_input


GOLDEN = """# twisted cubic with a marked point
ring R vars x0 x1 x2 x3;
ideal TC = x0*x2-x1^2, x1*x3-x2^2, x0*x3-x1*x2;
point P = (1 : 0 : 0 : 2/3);
"""


class TestParse:
    def test_golden(self):
        m = parse_input(GOLDEN)
        assert m.ring_name == "R"
        assert m.ring.vars == ("x0", "x1", "x2", "x3")
        assert len(m.ideals["TC"]) == 3
        assert m.points["P"] == (Fraction(1), Fraction(0), Fraction(0),
                                 Fraction(2, 3))

    def test_rational_coefficient(self):
        m = parse_input("ring R vars x y;\nideal I = 2/3*x^2 - y^2;\n")
        f = m.ideals["I"][0]
        assert any(c == Fraction(2, 3) for _, c in f.terms)

    def test_gfp_field(self):
        m = parse_input("ring R vars x y;\nideal I = 6*x - y;\n", PrimeField(5))
        f = m.ideals["I"][0]
        assert f.ring.field.p == 5
        assert {c for _, c in f.terms} == {1, 4}  # 6 = 1, -1 = 4 mod 5

    def test_round_trip(self):
        m = parse_input(GOLDEN)
        again = parse_input(m.render())
        assert again.render() == m.render()
        assert again.ideals["TC"] == m.ideals["TC"]
        assert again.points == m.points


class TestErrors:
    def test_negative_exponent_with_position(self):
        with pytest.raises(InputError) as err:
            parse_input("ring R vars x;\nideal I = x^-1;\n")
        assert err.value.line == 2
        assert "exponent" in str(err.value)

    def test_undeclared_variable(self):
        with pytest.raises(InputError, match="undeclared variable"):
            parse_input("ring R vars x;\nideal I = y;\n")

    def test_missing_ring(self):
        with pytest.raises(InputError, match="before the ring"):
            parse_input("ideal I = x;\n")

    def test_double_ring(self):
        with pytest.raises(InputError, match="one ring"):
            parse_input("ring R vars x;\nring S vars y;\n")

    def test_redeclared_ideal(self):
        with pytest.raises(InputError, match="redeclared"):
            parse_input("ring R vars x;\nideal I = x;\nideal I = x;\n")

    def test_point_arity(self):
        with pytest.raises(InputError, match="coordinates"):
            parse_input("ring R vars x y;\npoint P = (1);\n")

    def test_zero_point(self):
        with pytest.raises(InputError, match="zero vector"):
            parse_input("ring R vars x y;\npoint P = (0 : 0);\n")

    def test_unexpected_character(self):
        with pytest.raises(InputError):
            parse_input("ring R vars x;\nideal I = x @ x;\n")

    def test_missing_semicolon(self):
        with pytest.raises(InputError):
            parse_input("ring R vars x\nideal I = x;\n")

    def test_zero_denominator(self):
        with pytest.raises(InputError, match="zero denominator"):
            parse_input("ring R vars x;\nideal I = 1/0*x;\n")
