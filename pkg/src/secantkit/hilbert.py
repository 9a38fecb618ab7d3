"""Hilbert series, dimension and degree through the leading-term ideal.

For a homogeneous ideal I in S = k[x_0..x_n], HS(S/I) = N(t) / (1-t)^(n+1)
with N the numerator computed from the monomial ideal of leading terms by the
classical pivot recursion N(I) = N(I + (x)) + t * N(I : x).  Writing
N(t) = (1-t)^c * Q(t) with Q(1) != 0, the Krull dimension of S/I is
(n+1) - c, the projective dimension one less, and the degree is Q(1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .groebner import DEFAULT_DEGREE_CAP, Ideal
from .poly import mono_deg


@dataclass(frozen=True)
class HilbertData:
    """numerator of HS(S/I) over (1-t)^nvars, projective dim, degree."""

    numerator: tuple[int, ...]
    dim: int
    degree: int
    nvars: int

    @property
    def empty(self) -> bool:
        return self.dim < 0


def _minimalize_monos(gens: list[tuple]) -> tuple[tuple, ...]:
    gens = sorted(set(gens), key=lambda e: (mono_deg(e), e))
    out = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return tuple(out)


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _poly_shift(a: list[int], k: int) -> list[int]:
    return [0] * k + list(a)


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _numerator(gens: tuple[tuple, ...], memo: dict) -> list[int]:
    """Numerator of HS(S/(gens)) over (1-t)^nvars for a monomial ideal."""
    if not gens:
        return [1]
    if any(mono_deg(g) == 0 for g in gens):
        return [0]
    hit = memo.get(gens)
    if hit is not None:
        return hit
    # pairwise coprime generators: product formula
    coprime = True
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if any(x > 0 and y > 0 for x, y in zip(gens[i], gens[j])):
                coprime = False
                break
        if not coprime:
            break
    if coprime:
        out = [1]
        for g in gens:
            factor = [0] * (mono_deg(g) + 1)
            factor[0] = 1
            factor[-1] -= 1
            out = _poly_mul(out, factor)
        memo[gens] = out
        return out
    # pivot on the variable hitting the most generators
    nvars = len(gens[0])
    counts = [0] * nvars
    for g in gens:
        for i, e in enumerate(g):
            if e > 0:
                counts[i] += 1
    pivot = max(range(nvars), key=lambda i: counts[i])
    evec = tuple(1 if i == pivot else 0 for i in range(nvars))
    plus = _minimalize_monos([g for g in gens if g[pivot] == 0] + [evec])
    colon = _minimalize_monos(
        [tuple(e - 1 if i == pivot else e for i, e in enumerate(g)) if g[pivot] > 0 else g
         for g in gens]
    )
    # N(I) = N(I + (x)) + t * N(I : x), the pivot x having degree 1
    out = _poly_add(_numerator(plus, memo), _poly_shift(_numerator(colon, memo), 1))
    memo[gens] = out
    return out


def leading_term_exps(ideal: Ideal, cap: int = DEFAULT_DEGREE_CAP) -> tuple[tuple, ...]:
    gb = ideal.groebner_basis(cap=cap)
    return _minimalize_monos([g.leading_exps() for g in gb])


def hilbert_numerator(ideal: Ideal, cap: int = DEFAULT_DEGREE_CAP) -> list[int]:
    if not ideal.homogeneous:
        raise ValueError("hilbert series needs a homogeneous ideal")
    return _numerator(leading_term_exps(ideal, cap), {})


def hilbert_data(ideal: Ideal, cap: int = DEFAULT_DEGREE_CAP) -> HilbertData:
    num = hilbert_numerator(ideal, cap)
    nvars = ideal.ring.nvars
    q = list(num)
    cancelled = 0
    while q and any(q) and sum(q) == 0:
        # synthetic division by (1 - t)
        out = []
        acc = 0
        for c in q[:-1]:
            acc += c
            out.append(acc)
        q = out
        cancelled += 1
    if not q or not any(q):
        return HilbertData(tuple(num), -1, 0, nvars)
    krull = nvars - cancelled
    return HilbertData(tuple(num), krull - 1, sum(q), nvars)


def _binomial_poly(m: int, d: int) -> Fraction:
    """C(m, d) as the degree-d polynomial in m, valid for any integer m."""
    num = 1
    for i in range(d):
        num *= m - i
    den = 1
    for i in range(2, d + 1):
        den *= i
    return Fraction(num, den)


def hilbert_function(ideal: Ideal, k: int, cap: int = DEFAULT_DEGREE_CAP) -> int:
    """dim_k (S/I)_k, exactly."""
    num = hilbert_numerator(ideal, cap)
    n = ideal.ring.nvars - 1
    total = 0
    for j, c in enumerate(num):
        if c and k - j >= 0:
            total += c * _binomial_poly(n + k - j, n)
    assert total == int(total)
    return int(total)


def hilbert_polynomial_value(ideal: Ideal, k: int, cap: int = DEFAULT_DEGREE_CAP) -> int:
    """Hilbert polynomial of S/I evaluated at k (polynomial extension)."""
    num = hilbert_numerator(ideal, cap)
    n = ideal.ring.nvars - 1
    total = Fraction(0)
    for j, c in enumerate(num):
        if c:
            total += c * _binomial_poly(n + k - j, n)
    assert total.denominator == 1
    return int(total)
