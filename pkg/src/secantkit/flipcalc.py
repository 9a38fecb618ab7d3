"""Picard-lattice arithmetic for the blow-up spaces of the flip.

Divisor classes live over (H, E) on the blown-up projective space or over
(H, E1, E2) on the double blow-up; coefficients are exact rational functions
of the symbols n (ambient dimension), r (dim X) and k (the twist), so the
lattice identities can be verified once and for all rather than instance by
instance.  Equality of rational functions is decided by cross-multiplication,
no simplification is ever trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fields import QQ
from .poly import GREVLEX, Polynomial, Ring

SYM_RING = Ring(("n", "r", "k"), QQ, GREVLEX)
N_SYM = SYM_RING.var(0)
R_SYM = SYM_RING.var(1)
K_SYM = SYM_RING.var(2)

SPACES = ("BlownUpPn", "M2tilde", "M2")
_RANK = {"BlownUpPn": 2, "M2tilde": 3, "M2": 2}


class SpaceMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class SymExpr:
    """Rational function num/den in Q[n, r, k]; den normalized nonzero."""

    num: Polynomial
    den: Polynomial

    @staticmethod
    def of(value) -> "SymExpr":
        if isinstance(value, SymExpr):
            return value
        if isinstance(value, Polynomial):
            return SymExpr(value, SYM_RING.one())
        fr = Fraction(value)
        return SymExpr(SYM_RING.const(Fraction(fr.numerator)),
                       SYM_RING.const(Fraction(fr.denominator)))

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")

    def __add__(self, other):
        other = SymExpr.of(other)
        return SymExpr(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __sub__(self, other):
        other = SymExpr.of(other)
        return SymExpr(self.num * other.den - other.num * self.den,
                       self.den * other.den)

    def __neg__(self):
        return SymExpr(-self.num, self.den)

    def __mul__(self, other):
        other = SymExpr.of(other)
        return SymExpr(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = SymExpr.of(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero expression")
        return SymExpr(self.num * other.den, self.den * other.num)

    def eq(self, other) -> bool:
        other = SymExpr.of(other)
        return (self.num * other.den - other.num * self.den).is_zero()

    def __eq__(self, other):
        if isinstance(other, (SymExpr, Polynomial, int, Fraction)):
            return self.eq(other)
        return NotImplemented

    def __hash__(self):
        raise TypeError("SymExpr is not hashable")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def evaluate(self, n: Fraction, r: Fraction, k: Fraction) -> Fraction:
        vals = [Fraction(n), Fraction(r), Fraction(k)]
        den = self.den.evaluate(vals)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at this point")
        return self.num.evaluate(vals) / den

    def __str__(self):
        if self.den == SYM_RING.one():
            return str(self.num)
        return f"({self.num})/({self.den})"


def _sym(value) -> SymExpr:
    return SymExpr.of(value)


@dataclass(frozen=True)
class DivisorClass:
    """Class in the Picard lattice of one of the three spaces."""

    space: str
    coeffs: tuple[SymExpr, ...]

    @staticmethod
    def make(space: str, *coeffs) -> "DivisorClass":
        if space not in SPACES:
            raise SpaceMismatchError(f"unknown space {space!r}")
        if len(coeffs) != _RANK[space]:
            raise SpaceMismatchError(
                f"{space} classes have {_RANK[space]} coefficients"
            )
        return DivisorClass(space, tuple(_sym(c) for c in coeffs))

    def _guard(self, other: "DivisorClass"):
        if self.space != other.space:
            raise SpaceMismatchError(
                f"cannot combine classes on {self.space} and {other.space}"
            )

    def add(self, other: "DivisorClass") -> "DivisorClass":
        self._guard(other)
        return DivisorClass(self.space, tuple(
            a + b for a, b in zip(self.coeffs, other.coeffs)
        ))

    def sub(self, other: "DivisorClass") -> "DivisorClass":
        self._guard(other)
        return DivisorClass(self.space, tuple(
            a - b for a, b in zip(self.coeffs, other.coeffs)
        ))

    def scale(self, q) -> "DivisorClass":
        q = _sym(q)
        return DivisorClass(self.space, tuple(a * q for a in self.coeffs))

    def neg(self) -> "DivisorClass":
        return self.scale(-1)

    def eq(self, other: "DivisorClass") -> bool:
        self._guard(other)
        return all(a.eq(b) for a, b in zip(self.coeffs, other.coeffs))

    def evaluate(self, n, r, k) -> tuple[Fraction, ...]:
        return tuple(c.evaluate(n, r, k) for c in self.coeffs)

    def __str__(self):
        return f"{self.space}(" + ", ".join(str(c) for c in self.coeffs) + ")"


def class_arith(a: DivisorClass, b: DivisorClass | None = None,
                op: str = "add", q=None) -> DivisorClass:
    """Dispatcher: op in {\"add\", \"scale\"} (scale ignores b, uses q)."""
    if op == "add":
        if b is None:
            raise ValueError("add needs two classes")
        return a.add(b)
    if op == "scale":
        if q is None:
            raise ValueError("scale needs a scalar q")
        return a.scale(q)
    raise ValueError(f"unknown op {op!r}")


def canonical_class(space: str, n=None, r=None) -> DivisorClass:
    """Canonical class: blow-up formula on the single blow-up, the
    three-coefficient class on the double blow-up."""
    n = _sym(N_SYM if n is None else n)
    r = _sym(R_SYM if r is None else r)
    if space == "BlownUpPn":
        # pi* K_{P^n} + (codim - 1) E, codim = n - r
        return DivisorClass.make(space, -(n + 1), n - r - 1)
    if space == "M2tilde":
        return DivisorClass.make(space, -(n + 1), n - r - 1, n - r * 2 - 2)
    raise SpaceMismatchError(f"no canonical class on {space!r}")


def lk_class(k=None) -> DivisorClass:
    """(2k-1)H - kE1 - E2 on the double blow-up; k rational or symbolic."""
    k = _sym(K_SYM if k is None else k)
    return DivisorClass.make("M2tilde", k * 2 - 1, -k, -1)


def pullback_h(c: DivisorClass) -> DivisorClass:
    """Pullback along the blow-down to M2: aH + bE -> aH + bE1 + (a+2b)E2.

    The linear rule is pinned by its two certified values, (3,-2) ->
    (3,-2,-1) and (2,-1) -> (2,-1,0); every (2k-1, -k) lands on -1.
    """
    if c.space != "M2":
        raise SpaceMismatchError("pullback starts from a class on M2")
    a, b = c.coeffs
    return DivisorClass.make("M2tilde", a, b, a + b * 2)


def verify_kv_rewrite(n=None, r=None, k=None) -> bool:
    """The rewrite feeding the vanishing argument: with
    B = (2k-1)H - kE1 - 2E2 and alpha = (k+n-r-1)/(n-2r),

        B - K  ==  (n-2r) * L_alpha + (2, 0, 0)

    checked as an exact lattice identity (symbolically when no values are
    given)."""
    ns = _sym(N_SYM if n is None else n)
    rs = _sym(R_SYM if r is None else r)
    ks = _sym(K_SYM if k is None else k)
    scale = ns - rs * 2
    if scale.is_zero():
        raise ZeroDivisionError("n - 2r must be nonzero")
    b_class = DivisorClass.make("M2tilde", ks * 2 - 1, -ks, -2)
    kan = canonical_class("M2tilde", ns, rs)
    lhs = b_class.sub(kan)
    alpha = (ks + ns - rs - 1) / scale
    rhs = lk_class(alpha).scale(scale).add(DivisorClass.make("M2tilde", 2, 0, 0))
    return lhs.eq(rhs)


def kv_rewrite_sides(n=None, r=None, k=None):
    """Both sides of the rewrite, for reporting."""
    ns = _sym(N_SYM if n is None else n)
    rs = _sym(R_SYM if r is None else r)
    ks = _sym(K_SYM if k is None else k)
    scale = ns - rs * 2
    b_class = DivisorClass.make("M2tilde", ks * 2 - 1, -ks, -2)
    lhs = b_class.sub(canonical_class("M2tilde", ns, rs))
    alpha = (ks + ns - rs - 1) / scale
    rhs = lk_class(alpha).scale(scale).add(DivisorClass.make("M2tilde", 2, 0, 0))
    return lhs, rhs


def assumption_ok(n: int, r: int) -> bool:
    """The construction assumes the secant is not a hypersurface."""
    return n - 2 * r - 1 >= 2


@dataclass(frozen=True)
class ThresholdFormula:
    """A vanishing bound: ``subject`` compared against ``bound``."""

    variant: str
    subject: str          # "k" or "a"
    bound: Fraction
    strict: bool
    twist: int | None     # fixed twist for the "second" variant
    params: tuple[tuple[str, int], ...]

    def satisfied_by(self, value) -> bool:
        v = Fraction(value)
        return v > self.bound if self.strict else v >= self.bound

    def __str__(self):
        cmp = ">" if self.strict else ">="
        return f"{self.subject} {cmp} {self.bound}"


def threshold(variant: str, d: int | None = None, e: int | None = None,
              a: int | None = None, n: int | None = None,
              r: int | None = None) -> ThresholdFormula:
    """The three bounds: ideal-power vanishing on P^n, the Veronese variant
    with its 3/2 slope, and the flipped-space bound with fixed twist 2a-1."""
    if variant == "little":
        _need(d=d, e=e, a=a, n=n)
        bound = Fraction(d) * (e + a - 1) - (n + 1)
        return ThresholdFormula(variant, "k", bound, False, None,
                                (("d", d), ("e", e), ("a", a), ("n", n)))
    if variant == "veronese":
        _need(e=e, a=a, n=n)
        bound = Fraction(3, 2) * (e + a - 1) - (n + 1)
        return ThresholdFormula(variant, "k", bound, True, None,
                                (("e", e), ("a", a), ("n", n)))
    if variant == "second":
        _need(n=n, r=r)
        bound = Fraction(n - 3 * r - 1)
        twist = 2 * a - 1 if a is not None else None
        params = (("n", n), ("r", r)) + ((("a", a),) if a is not None else ())
        return ThresholdFormula(variant, "a", bound, True, twist, params)
    raise ValueError(f"unknown threshold variant {variant!r}")


def _need(**kwargs):
    missing = [k for k, v in kwargs.items() if v is None]
    if missing:
        raise ValueError(f"missing parameters: {', '.join(missing)}")
