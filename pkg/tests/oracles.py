"""Independent oracles shared by the test modules: these deliberately avoid
the code paths they check."""

from fractions import Fraction

from secantkit.fields import QQ
from secantkit.linalg import solve
from secantkit.syzygy import monomials_of_degree


def brute_force_member(f, gens):
    """Ideal membership by graded linear algebra: solve f = sum g_i F_i
    with homogeneous unknown coefficients, one exact linear system."""
    ring = f.ring
    if f.is_zero():
        return True
    d = f.degree()
    cols = []
    for g in gens:
        dd = d - g.degree()
        if dd < 0:
            continue
        for u in monomials_of_degree(ring.nvars, dd):
            cols.append(g.mul_monomial(u))
    if not cols:
        return False
    monos = monomials_of_degree(ring.nvars, d)
    index = {m: i for i, m in enumerate(monos)}
    rows = [[Fraction(0)] * len(cols) for _ in monos]
    for j, col in enumerate(cols):
        for exps, c in col.terms:
            rows[index[exps]][j] = Fraction(c)
    rhs = [Fraction(0)] * len(monos)
    for exps, c in f.terms:
        rhs[index[exps]] = Fraction(c)
    return solve(rows, rhs, QQ) is not None
