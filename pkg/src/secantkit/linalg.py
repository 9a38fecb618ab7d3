"""Exact dense linear algebra over the coefficient fields.

Small matrices only (graded pieces, coordinate matrices); rows are lists of
field scalars.  Everything is deterministic: pivots are chosen left to right,
first nonzero row wins.
"""

from __future__ import annotations

from .fields import Field, QQ


def rank(rows: list[list], field: Field = QQ) -> int:
    """Rank by Gaussian elimination; does not mutate the input."""
    return len(_echelon(rows, field))


def _echelon(rows: list[list], field: Field) -> list[list]:
    """Row echelon basis (pivot-normalized) of the row space."""
    basis: list[list] = []
    pivots: list[int] = []
    for row in rows:
        r = list(row)
        r = _reduce_row(r, basis, pivots, field)
        p = _first_nonzero(r, field)
        if p is None:
            continue
        inv = field.inv(r[p])
        r = [field.mul(inv, x) for x in r]
        basis.append(r)
        pivots.append(p)
    return basis


def _first_nonzero(row: list, field: Field):
    for i, x in enumerate(row):
        if not field.is_zero(x):
            return i
    return None


def _reduce_row(row: list, basis: list[list], pivots: list[int], field: Field) -> list:
    for b, p in zip(basis, pivots):
        c = row[p]
        if not field.is_zero(c):
            row = [field.sub(x, field.mul(c, y)) for x, y in zip(row, b)]
    return row


class SpanTracker:
    """Incremental row space membership: add vectors, query containment.

    Used for graded minimal-generator computations (Nakayama: keep a vector
    only if it falls outside the span accumulated so far).
    """

    def __init__(self, width: int, field: Field = QQ):
        self.width = width
        self.field = field
        self.basis: list[list] = []
        self.pivots: list[int] = []

    def contains(self, row: list) -> bool:
        r = _reduce_row(list(row), self.basis, self.pivots, self.field)
        return _first_nonzero(r, self.field) is None

    def add(self, row: list) -> bool:
        """Insert; returns True if the vector enlarged the span."""
        r = _reduce_row(list(row), self.basis, self.pivots, self.field)
        p = _first_nonzero(r, self.field)
        if p is None:
            return False
        inv = self.field.inv(r[p])
        self.basis.append([self.field.mul(inv, x) for x in r])
        self.pivots.append(p)
        return True

    @property
    def dim(self) -> int:
        return len(self.basis)


def solve(rows: list[list], rhs: list, field: Field = QQ):
    """One solution of ``A x = rhs`` (``rows`` are the rows of A), or None
    when the system is inconsistent.  Free variables are set to zero."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    basis: list[list] = []
    pivots: list[int] = []
    for row in aug:
        r = _reduce_row(row, basis, pivots, field)
        p = _first_nonzero(r, field)
        if p is None:
            continue
        if p == n:
            return None  # 0 = nonzero
        inv = field.inv(r[p])
        basis.append([field.mul(inv, x) for x in r])
        pivots.append(p)
    x = [field.zero] * n
    for b, p in sorted(zip(basis, pivots), key=lambda t: -t[1]):
        acc = b[n]
        for j in range(p + 1, n):
            acc = field.sub(acc, field.mul(b[j], x[j]))
        x[p] = acc
    return x


def kernel_basis(rows: list[list], ncols: int, field: Field = QQ) -> list[list]:
    """Basis of the right kernel {x : A x = 0} of the matrix with given rows."""
    basis: list[list] = []
    pivots: list[int] = []
    for row in rows:
        r = _reduce_row(list(row), basis, pivots, field)
        p = _first_nonzero(r, field)
        if p is None:
            continue
        inv = field.inv(r[p])
        basis.append([field.mul(inv, x) for x in r])
        pivots.append(p)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    out = []
    ordered = sorted(zip(pivots, basis))
    for j in free:
        vec = [field.zero] * ncols
        vec[j] = field.one
        # rows are pivot-normalized, so x_p = -sum_{jj > p} b[jj] * x_jj
        for p, b in reversed(ordered):
            acc = field.zero
            for jj in range(p + 1, ncols):
                if not field.is_zero(vec[jj]) and not field.is_zero(b[jj]):
                    acc = field.sub(acc, field.mul(b[jj], vec[jj]))
            vec[p] = acc
        out.append(vec)
    return out
