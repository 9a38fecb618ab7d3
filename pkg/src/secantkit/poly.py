"""Sparse exact multivariate polynomials with pluggable monomial orders.

Monomial exponent vectors are plain tuples of non-negative ints; the
:class:`Monomial` wrapper caches the total degree.  A :class:`Ring` fixes the
variable names, the coefficient field and the monomial order; polynomials are
immutable values whose term lists are kept strictly sorted, largest first,
under the ring's order, with no zero coefficients stored.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction

from .fields import Field, QQ


class RingMismatchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# exponent-tuple helpers (hot path: keep them free of object wrappers)

def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(map(operator.add, a, b))


def mono_div(a: tuple, b: tuple) -> tuple:
    """a / b; caller guarantees divisibility."""
    return tuple(map(operator.sub, a, b))


def mono_divides(a: tuple, b: tuple) -> bool:
    """Does a divide b?"""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_gcd(a: tuple, b: tuple) -> tuple:
    return tuple(x if x < y else y for x, y in zip(a, b))


def mono_deg(a: tuple) -> int:
    return sum(a)


# ---------------------------------------------------------------------------
# monomial orders

@dataclass(frozen=True)
class MonomialOrder:
    """grevlex | lex | block(k): eliminate the first k variables.

    ``key`` maps an exponent tuple to a sort key that is ascending in the
    order, so ``max(..., key=order.key)`` picks the leading monomial.  A block
    order compares the first k exponents grevlex first, so any monomial
    involving the first block beats every monomial free of it.
    """

    kind: str
    block: int = 0

    def key(self, exps: tuple):
        if self.kind == "grevlex":
            return _grevlex_key(exps)
        if self.kind == "lex":
            return exps
        if self.kind == "block":
            k = self.block
            return (_grevlex_key(exps[:k]), _grevlex_key(exps[k:]))
        raise ValueError(f"unknown order kind {self.kind!r}")

    def neg_key(self, exps: tuple):
        """Key for min-heaps: ascending neg_key is descending in the order."""
        if self.kind == "grevlex":
            return (-sum(exps), tuple(reversed(exps)))
        if self.kind == "lex":
            return tuple(-e for e in exps)
        if self.kind == "block":
            k = self.block
            head, tail = exps[:k], exps[k:]
            return ((-sum(head), tuple(reversed(head))),
                    (-sum(tail), tuple(reversed(tail))))
        raise ValueError(f"unknown order kind {self.kind!r}")

    def compare(self, a: tuple, b: tuple) -> int:
        if len(a) != len(b):
            raise RingMismatchError("monomials with different variable counts")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


def _grevlex_key(exps: tuple):
    return (sum(exps), tuple(-e for e in reversed(exps)))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(first_block_size: int) -> MonomialOrder:
    return MonomialOrder("block", first_block_size)


class Monomial:
    """Exponent vector plus cached total degree."""

    __slots__ = ("exps", "degree")

    def __init__(self, exps):
        self.exps = tuple(exps)
        if any(e < 0 for e in self.exps):
            raise ValueError("negative exponent")
        self.degree = sum(self.exps)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self):
        return hash(self.exps)

    def __repr__(self):
        return f"Monomial{self.exps}"


def mono_compare(order: MonomialOrder, a: Monomial, b: Monomial) -> int:
    """-1 / 0 / +1 as a <, =, > b under ``order``."""
    return order.compare(a.exps, b.exps)


# ---------------------------------------------------------------------------
# rings and polynomials

class Ring:
    """Polynomial ring context: named variables, field, monomial order."""

    __slots__ = ("vars", "field", "order", "nvars", "_zero_exps")

    def __init__(self, variables, field: Field = QQ, order: MonomialOrder = GREVLEX):
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("duplicate variable names")
        self.field = field
        self.order = order
        self.nvars = len(self.vars)
        self._zero_exps = (0,) * self.nvars

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.vars == other.vars
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.vars, self.field, self.order))

    def __repr__(self):
        return f"Ring({','.join(self.vars)}; {self.field}; {self.order.kind})"

    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.vars, self.field, order)

    # -- constructors -------------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return self.const(self.field.one)

    def const(self, c) -> "Polynomial":
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, ((self._zero_exps, c),))

    def var(self, i: int) -> "Polynomial":
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, ((tuple(exps), self.field.one),))

    def monomial(self, exps, coeff=None) -> "Polynomial":
        c = self.field.one if coeff is None else coeff
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, ((tuple(exps), c),))

    def from_terms(self, terms) -> "Polynomial":
        """Canonicalize an iterable of (exps, coeff): merge, drop zeros, sort."""
        acc: dict = {}
        for exps, c in terms:
            exps = tuple(exps)
            if len(exps) != self.nvars:
                raise RingMismatchError("term with wrong variable count")
            if exps in acc:
                acc[exps] = self.field.add(acc[exps], c)
            else:
                acc[exps] = c
        key = self.order.key
        ordered = sorted(
            ((e, c) for e, c in acc.items() if not self.field.is_zero(c)),
            key=lambda t: key(t[0]),
            reverse=True,
        )
        return Polynomial(self, tuple(ordered))

    def from_dict(self, d: dict) -> "Polynomial":
        return self.from_terms(d.items())


class Polynomial:
    """Immutable sparse polynomial; terms sorted descending by the ring order."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: tuple):
        self.ring = ring
        self.terms = terms

    # -- basic structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_deg(e) for e, _ in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        d = mono_deg(self.terms[0][0])
        return all(mono_deg(e) == d for e, _ in self.terms)

    def leading_data(self) -> tuple[Monomial, object]:
        """Largest term under the ring order. Raises on the zero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps, c = self.terms[0]
        return Monomial(exps), c

    def leading_exps(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0][0]

    def constant_value(self):
        """Coefficient of the constant term (field zero if absent)."""
        for e, c in self.terms:
            if mono_deg(e) == 0:
                return c
        return self.ring.field.zero

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError("polynomials from different rings")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        return self.ring.from_terms(list(self.terms) + list(other.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        f = self.ring.field
        return self.ring.from_terms(
            list(self.terms) + [(e, f.neg(c)) for e, c in other.terms]
        )

    def __neg__(self) -> "Polynomial":
        f = self.ring.field
        return Polynomial(self.ring, tuple((e, f.neg(c)) for e, c in self.terms))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        f = self.ring.field
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = mono_mul(e1, e2)
                c = f.mul(c1, c2)
                if e in acc:
                    acc[e] = f.add(acc[e], c)
                else:
                    acc[e] = c
        return self.ring.from_dict(acc)

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        if f.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, tuple((e, f.mul(c, cc)) for e, cc in self.terms))

    def mul_monomial(self, exps: tuple, coeff=None) -> "Polynomial":
        f = self.ring.field
        c = f.one if coeff is None else coeff
        if f.is_zero(c):
            return self.ring.zero()
        return Polynomial(
            self.ring, tuple((mono_mul(e, exps), f.mul(c, cc)) for e, cc in self.terms)
        )

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        f = self.ring.field
        lc = self.terms[0][1]
        inv = f.inv(lc)
        return Polynomial(self.ring, tuple((e, f.mul(inv, c)) for e, c in self.terms))

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.terms))

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, values: list):
        """Evaluate at field scalars (one per variable)."""
        if len(values) != self.ring.nvars:
            raise RingMismatchError("wrong number of values")
        f = self.ring.field
        total = f.zero
        for exps, c in self.terms:
            term = c
            for v, e in zip(values, exps):
                for _ in range(e):
                    term = f.mul(term, v)
            total = f.add(total, term)
        return total

    def substitute(self, target_ring: Ring, images: list) -> "Polynomial":
        """Ring map sending variable i to ``images[i]`` (polynomials in target)."""
        if len(images) != self.ring.nvars:
            raise RingMismatchError("one image per variable required")
        out = target_ring.zero()
        cache: dict = {}

        def power(i: int, e: int) -> Polynomial:
            if (i, e) not in cache:
                cache[(i, e)] = images[i] ** e
            return cache[(i, e)]

        for exps, c in self.terms:
            term = target_ring.const(_convert_scalar(self.ring.field, target_ring.field, c))
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    # -- printing ------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        f = self.ring.field
        parts = []
        for exps, c in self.terms:
            factors = []
            for name, e in zip(self.ring.vars, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            cs = f.to_str(c)
            neg = cs.startswith("-")
            mag = cs[1:] if neg else cs
            if factors and mag == "1":
                body = "*".join(factors)
            elif factors:
                body = mag + "*" + "*".join(factors)
            else:
                body = mag
            parts.append(("-" if neg else "+", body))
        sign0, body0 = parts[0]
        out = ("-" if sign0 == "-" else "") + body0
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"<{self} in {self.ring!r}>"


def _convert_scalar(src: Field, dst: Field, c):
    if src == dst:
        return c
    if src.tag == "q":
        fr = Fraction(c)
        return dst.of_rational(fr.numerator, fr.denominator)
    if dst.tag == "q":
        return Fraction(int(c))
    raise RingMismatchError(f"cannot convert scalars from {src} to {dst}")


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    """Spec-surface arithmetic dispatcher: op in {'add', 'mul'}."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")
