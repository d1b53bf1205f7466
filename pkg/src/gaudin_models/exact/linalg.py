"""Exact linear algebra over any field whose elements support ``== 0``.

Matrices are sequences of rows; results are tuples of tuples so they can
be hashed and compared directly.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import EPS, RationalFunction, leading_value, limit_at_zero, valuation

Matrix = tuple[tuple, ...]


class Outcome(enum.Enum):
    NO_SOLUTION = "no-solution"
    NON_UNIQUE = "non-unique"


NO_SOLUTION = Outcome.NO_SOLUTION
NON_UNIQUE = Outcome.NON_UNIQUE


def _c(x):
    return Fraction(x) if isinstance(x, int) else x


def as_matrix(rows) -> list[list]:
    return [[_c(x) for x in row] for row in rows]


def rref_pivots(rows, ncols: int | None = None):
    """Reduced row echelon form and pivot columns; zero rows kept at the bottom."""
    m = as_matrix(rows)
    if not m:
        return (), []
    n = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for col in range(n):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r:
                f = m[i][col]
                if f != 0:
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    return tuple(tuple(row) for row in m), pivots


def rref(rows) -> Matrix:
    return rref_pivots(rows)[0]


def rank(rows) -> int:
    return len(rref_pivots(rows)[1])


def row_basis(rows) -> Matrix:
    """Nonzero rows of the rref."""
    m, piv = rref_pivots(rows)
    return m[: len(piv)]


def nullspace(rows, ncols: int) -> Matrix:
    """Basis of {x : M x = 0}, one vector per free column."""
    if not rows:
        return tuple(tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols))
    m, piv = rref_pivots(rows, ncols)
    free = [j for j in range(ncols) if j not in piv]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(piv):
            v[p] = -m[r][f]
        out.append(tuple(v))
    return tuple(out)


def left_kernel(rows) -> Matrix:
    """Basis of {c : sum_i c_i rows[i] = 0}."""
    if not rows:
        return ()
    ncols = len(rows[0])
    cols = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
    return nullspace(cols, len(rows))


def reduce_vector(v, basis: Matrix, pivots: Sequence[int]) -> tuple:
    """Canonical residue of ``v`` modulo the row space of an rref basis."""
    v = [_c(x) for x in v]
    for row, p in zip(basis, pivots):
        f = v[p]
        if f != 0:
            v = [a - f * b for a, b in zip(v, row)]
    return tuple(v)


def solve_linear(a, b):
    """Solve ``a x = b`` exactly.

    Returns the solution tuple when it is unique, ``NO_SOLUTION`` for an
    inconsistent system and ``NON_UNIQUE`` when the solution set is larger
    than a point.
    """
    a = as_matrix(a)
    if len(a) != len(b):
        raise ValueError("dimension mismatch")
    ncols = len(a[0]) if a else 0
    aug = [row + [_c(bi)] for row, bi in zip(a, b)]
    m, piv = rref_pivots(aug, ncols + 1)
    if ncols in piv:
        return NO_SOLUTION
    if len(piv) < ncols:
        return NON_UNIQUE
    x = [Fraction(0)] * ncols
    for r, p in enumerate(piv):
        x[p] = m[r][ncols]
    return tuple(x)


def mat_mul(a, b) -> Matrix:
    bt = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt) for row in a)


def mat_vec(a, v) -> tuple:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def dot(u, v):
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class Subspace:
    """A row space in canonical (rref, zero rows dropped) form."""

    basis: Matrix
    ncols: int

    @classmethod
    def span(cls, rows, ncols: int | None = None) -> "Subspace":
        rows = [tuple(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for an empty span")
            ncols = len(rows[0])
        if not rows:
            return cls((), ncols)
        return cls(row_basis(rows), ncols)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(row) if x != 0) for row in self.basis]

    def reduce(self, v) -> tuple:
        return reduce_vector(v, self.basis, self.pivots)

    def __contains__(self, v) -> bool:
        return all(x == 0 for x in self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(row in self for row in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(list(self.basis) + list(other.basis), self.ncols)

    def intersection(self, other: "Subspace") -> "Subspace":
        if not self.basis or not other.basis:
            return Subspace((), self.ncols)
        # x = sum a_i u_i = sum b_j w_j  <=>  [U; -W]^T (a, b) = 0
        stacked = list(self.basis) + [tuple(-x for x in w) for w in other.basis]
        ker = left_kernel(stacked)
        vecs = []
        for k in ker:
            coeffs = k[: self.dim]
            vecs.append(tuple(dot(coeffs, col) for col in zip(*self.basis)))
        return Subspace.span(vecs, self.ncols)

    def to_json(self):
        return {"basis": [[str(x) for x in row] for row in self.basis]}


def subspace_limit(rows) -> Subspace:
    """Limit as eps -> 0 of the row space of ``rows`` (entries in eps).

    The rows are first reduced over the rational-function field.  Then each
    row is rescaled to eps-order zero and evaluated at eps = 0; whenever the
    evaluated rows are dependent, a vanishing combination is substituted for
    one of them and divided by eps.  Each such step lowers the eps-order of
    the Pluecker vector by one, so the loop ends with the Grassmannian limit.
    """
    rows = [[x if isinstance(x, RationalFunction) else RationalFunction(x) for x in row] for row in rows]
    if not rows:
        raise ValueError("empty basis")
    ncols = len(rows[0])
    red, piv = rref_pivots(rows, ncols)
    if len(piv) < len(rows):
        raise ValueError(f"generic rank {len(piv)} is below the number of rows {len(rows)}")
    work = [list(r) for r in red[: len(piv)]]
    for _ in range(10_000):
        for i, row in enumerate(work):
            v = min(valuation(x) for x in row if valuation(x) is not None)
            if v != 0:
                scale = EPS ** (-v)
                work[i] = [x * scale for x in row]
        leads = [[leading_value(x, 0) for x in row] for row in work]
        ker = left_kernel(leads)
        if not ker:
            return Subspace.span(leads, ncols)
        c = ker[0]
        k = max(i for i, ci in enumerate(c) if ci != 0)
        combo = [sum((c[i] * work[i][j] for i in range(len(work)) if c[i] != 0), RationalFunction(0))
                 for j in range(ncols)]
        work[k] = combo
    raise RuntimeError("subspace_limit did not converge")


__all__ = [
    "Matrix", "NO_SOLUTION", "NON_UNIQUE", "Outcome", "Subspace", "as_matrix", "dot",
    "left_kernel", "limit_at_zero", "mat_mul", "mat_vec", "nullspace", "rank", "reduce_vector",
    "rref", "rref_pivots", "row_basis", "solve_linear", "subspace_limit",
]
