"""Exact coefficient fields: arbitrary-precision rationals and prime fields.

Scalars are plain Python values (``Fraction`` for Q, canonical ``int`` in
``0..p-1`` for GF(p)); the field object carries the tag and the arithmetic.
Everything downstream is generic over a :class:`Field`.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface; see :class:`RationalField` and :class:`PrimeField`."""

    tag: str

    def __eq__(self, other):
        return isinstance(other, Field) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return self.tag


class RationalField(Field):
    tag = "q"
    char = 0

    zero = Fraction(0)
    one = Fraction(1)

    def of_int(self, n: int) -> Fraction:
        return Fraction(n)

    def of_rational(self, num: int, den: int) -> Fraction:
        if den == 0:
            raise FieldError("zero denominator")
        return Fraction(num, den)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise FieldError("division by zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise FieldError("division by zero")
        return a / b

    def is_zero(self, a) -> bool:
        return a == 0

    def to_str(self, a) -> str:
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"


class PrimeField(Field):
    char: int

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.tag = f"gfp:{p}"
        self.zero = 0
        self.one = 1 % p

    def of_int(self, n: int) -> int:
        return n % self.p

    def of_rational(self, num: int, den: int) -> int:
        if den % self.p == 0:
            raise FieldError("denominator divisible by the characteristic")
        return (num * self.inv(den % self.p)) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise FieldError("division by zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def to_str(self, a) -> str:
        return str(a % self.p)


QQ = RationalField()

DEFAULT_PRIME = 32003


def field_from_tag(tag: str) -> Field:
    """Parse a ``--field`` style tag: ``q`` or ``gfp:<p>``."""
    if tag == "q":
        return QQ
    if tag.startswith("gfp:"):
        return PrimeField(int(tag.split(":", 1)[1]))
    raise FieldError(f"unknown field tag {tag!r}")
