"""The little input language: ring / ideal / point declarations.

Grammar (statements end with ';', '#' starts a line comment):

    ring R vars x0 x1 x2 x3;
    ideal TC = x0*x2-x1^2, x1*x3-x2^2, x0*x3-x1*x2;
    point P = (1 : 0 : 2/3 : -1);

Polynomials use + - * ^ with integer or num/den rational coefficients and a
mandatory '*' between factors.  Errors carry line and column of the first
offending token.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .fields import QQ, Field
from .poly import GREVLEX, Polynomial, Ring


class InputError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # ident | int | punct | end
    text: str
    line: int
    col: int


_PUNCT = set("+-*^=,;:()/")


def _tokenize(text: str) -> list[Token]:
    out = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("ident", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("int", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            out.append(Token("punct", ch, line, start_col))
            i += 1
            col += 1
            continue
        raise InputError(f"unexpected character {ch!r}", line, col)
    out.append(Token("end", "", line, col))
    return out


@dataclass
class InputModel:
    ring_name: str
    ring: Ring
    ideals: dict = field(default_factory=dict)   # name -> tuple[Polynomial]
    points: dict = field(default_factory=dict)   # name -> tuple[Fraction]

    def first_ideal_name(self) -> str | None:
        return next(iter(self.ideals), None)

    def render(self) -> str:
        """Canonical text; parses back to an equal model."""
        lines = [f"ring {self.ring_name} vars {' '.join(self.ring.vars)};"]
        for name, gens in self.ideals.items():
            body = ", ".join(str(g) for g in gens)
            lines.append(f"ideal {name} = {body};")
        for name, coords in self.points.items():
            body = " : ".join(_frac_str(c) for c in coords)
            lines.append(f"point {name} = ({body});")
        return "\n".join(lines) + "\n"


def _frac_str(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class _Parser:
    def __init__(self, tokens: list[Token], fld: Field):
        self.toks = tokens
        self.pos = 0
        self.field = fld
        self.model: InputModel | None = None

    # -- token helpers -------------------------------------------------------

    def peek(self) -> Token:
        return self.toks[self.pos]

    def next(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str, text: str | None = None) -> Token:
        t = self.next()
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            raise InputError(f"expected {want!r}, found {t.text or 'end of input'!r}",
                             t.line, t.col)
        return t

    def fail(self, msg: str):
        t = self.peek()
        raise InputError(msg, t.line, t.col)

    # -- grammar --------------------------------------------------------------

    def parse(self) -> InputModel:
        while self.peek().kind != "end":
            head = self.expect("ident")
            if head.text == "ring":
                self._ring_stmt(head)
            elif head.text == "ideal":
                self._ideal_stmt(head)
            elif head.text == "point":
                self._point_stmt(head)
            else:
                raise InputError(f"unknown statement {head.text!r}",
                                 head.line, head.col)
        if self.model is None:
            raise InputError("no ring declaration", 1, 1)
        return self.model

    def _ring_stmt(self, head: Token):
        if self.model is not None:
            raise InputError("only one ring declaration allowed",
                             head.line, head.col)
        name = self.expect("ident").text
        self.expect("ident", "vars")
        variables = []
        while self.peek().kind == "ident":
            variables.append(self.next().text)
        if not variables:
            self.fail("ring needs at least one variable")
        self.expect("punct", ";")
        try:
            ring = Ring(tuple(variables), self.field, GREVLEX)
        except ValueError as exc:
            raise InputError(str(exc), head.line, head.col) from exc
        self.model = InputModel(name, ring)

    def _require_ring(self, tok: Token) -> Ring:
        if self.model is None:
            raise InputError("declaration before the ring", tok.line, tok.col)
        return self.model.ring

    def _ideal_stmt(self, head: Token):
        ring = self._require_ring(head)
        name = self.expect("ident").text
        if name in self.model.ideals:
            raise InputError(f"ideal {name!r} redeclared", head.line, head.col)
        self.expect("punct", "=")
        gens = [self._polynomial(ring)]
        while self.peek().text == ",":
            self.next()
            gens.append(self._polynomial(ring))
        self.expect("punct", ";")
        self.model.ideals[name] = tuple(gens)

    def _point_stmt(self, head: Token):
        ring = self._require_ring(head)
        name = self.expect("ident").text
        if name in self.model.points:
            raise InputError(f"point {name!r} redeclared", head.line, head.col)
        self.expect("punct", "=")
        self.expect("punct", "(")
        coords = [self._coordinate()]
        while self.peek().text == ":":
            self.next()
            coords.append(self._coordinate())
        self.expect("punct", ")")
        self.expect("punct", ";")
        if len(coords) != ring.nvars:
            raise InputError(
                f"point has {len(coords)} coordinates, ring has {ring.nvars}",
                head.line, head.col)
        if not any(coords):
            raise InputError("zero vector is not a projective point",
                             head.line, head.col)
        self.model.points[name] = tuple(coords)

    def _coordinate(self) -> Fraction:
        sign = 1
        if self.peek().text == "-":
            self.next()
            sign = -1
        num = int(self.expect("int").text)
        if self.peek().text == "/":
            self.next()
            den_tok = self.expect("int")
            den = int(den_tok.text)
            if den == 0:
                raise InputError("zero denominator", den_tok.line, den_tok.col)
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    def _polynomial(self, ring: Ring) -> Polynomial:
        acc = ring.zero()
        acc = acc + self._term(ring, negate=self._swallow_sign())
        while self.peek().text in ("+", "-"):
            neg = self.next().text == "-"
            acc = acc + self._term(ring, negate=neg)
        return acc

    def _swallow_sign(self) -> bool:
        if self.peek().text == "-":
            self.next()
            return True
        if self.peek().text == "+":
            self.next()
        return False

    def _term(self, ring: Ring, negate: bool) -> Polynomial:
        factors = [self._factor(ring)]
        while self.peek().text == "*":
            self.next()
            factors.append(self._factor(ring))
        acc = factors[0]
        for f in factors[1:]:
            acc = acc * f
        return -acc if negate else acc

    def _factor(self, ring: Ring) -> Polynomial:
        t = self.peek()
        if t.kind == "int":
            self.next()
            num = int(t.text)
            if self.peek().text == "/":
                self.next()
                den_tok = self.expect("int")
                den = int(den_tok.text)
                if den == 0:
                    raise InputError("zero denominator", den_tok.line, den_tok.col)
                return ring.const(ring.field.of_rational(num, den))
            return ring.const(ring.field.of_rational(num, 1))
        if t.kind == "ident":
            self.next()
            if t.text not in ring.vars:
                raise InputError(f"undeclared variable {t.text!r}", t.line, t.col)
            v = ring.var(ring.vars.index(t.text))
            if self.peek().text == "^":
                self.next()
                e_tok = self.peek()
                if e_tok.kind != "int":
                    raise InputError("exponent must be a non-negative integer",
                                     e_tok.line, e_tok.col)
                self.next()
                return v ** int(e_tok.text)
            return v
        raise InputError(f"expected a coefficient or variable, found "
                         f"{t.text or 'end of input'!r}", t.line, t.col)


def parse_input(text: str, fld: Field = QQ) -> InputModel:
    """Parse the input language; raises :class:`InputError` with position."""
    return _Parser(_tokenize(text), fld).parse()
