"""Dense exact linear algebra over a :class:`~geomconn.field.FiniteField`.

Matrices are lists of rows of int encodings. The functions here are the
workhorses; :class:`ExactMatrix` wraps them for callers that want an object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .field import FieldElement, FiniteField

Vector = list[int]


def rref(field: FiniteField, rows: Sequence[Sequence[int]], ncols: int | None = None):
    """Reduced row-echelon form.

    Pivots are chosen column by column, taking the first row (from the current
    position down) with a nonzero entry. Returns ``(nonzero_rows, pivots)``;
    zero rows are dropped.
    """
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        if inv != 1:
            m[r] = field.scale(inv, m[r])
        prow = m[r]
        for i in range(nrows):
            if i != r:
                a = m[i][c]
                if a:
                    m[i] = field.axpy(field.neg(a), prow, m[i])
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(field: FiniteField, rows: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    return len(rref(field, rows, ncols)[1])


def nullspace(field: FiniteField, rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Basis of {v : M v = 0}, one vector per free column, in column order."""
    red, pivots = rref(field, rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, pc in zip(red, pivots):
            if row[free]:
                v[pc] = field.neg(row[free])
        basis.append(v)
    return basis


def solve(field: FiniteField, rows: Sequence[Sequence[int]], b: Sequence[int], ncols: int | None = None):
    """One solution of M v = b with free variables set to 0, or None."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if len(rows) != len(b):
        raise ValueError("right-hand side length does not match row count")
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    red, pivots = rref(field, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    v = [0] * ncols
    for row, pc in zip(red, pivots):
        v[pc] = row[ncols]
    return v


def transpose(rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[Vector]:
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return [[r[j] for r in rows] for j in range(ncols)]


def matvec(field: FiniteField, rows: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    out = []
    add, mul = field.add, field.mul
    for r in rows:
        acc = 0
        for a, x in zip(r, v):
            if a and x:
                acc = add(acc, mul(a, x))
        out.append(acc)
    return out


def matmul(field: FiniteField, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], inner: int, ncols: int):
    bt = transpose(b, ncols) if b else [[] for _ in range(ncols)]
    return [matvec(field, bt, row) for row in a] if inner else [[0] * ncols for _ in a]


def span_basis(field: FiniteField, vectors: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """Echelonized basis of the span of ``vectors``."""
    return rref(field, vectors, dim)[0] if vectors else []


def coordinates(field: FiniteField, basis: Sequence[Sequence[int]], v: Sequence[int]):
    """Coefficients c with sum c_i basis_i = v, or None if v is outside the span."""
    dim = len(v)
    if not basis:
        return [] if not any(v) else None
    return solve(field, transpose(basis, dim), v, len(basis))


@dataclass(frozen=True)
class ExactMatrix:
    field: FiniteField
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, field: FiniteField, rows: Sequence[Sequence[int | FieldElement]], cols: int | None = None):
        def enc(x):
            if isinstance(x, FieldElement):
                return field(x).value
            return field.from_int(x) if field.e == 1 else int(x)

        data = tuple(tuple(enc(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged matrix")
        return cls(field, len(data), cols, data)

    @classmethod
    def identity(cls, field: FiniteField, n: int):
        return cls(field, n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, field: FiniteField, rows: int, cols: int):
        return cls(field, rows, cols, tuple((0,) * cols for _ in range(rows)))

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return self.field.element(self.entries[i][j])

    def rref(self):
        """``(rref matrix, pivot columns, rank)``; the rref keeps the original shape."""
        red, pivots = rref(self.field, self.entries, self.cols)
        padded = [tuple(r) for r in red] + [(0,) * self.cols] * (self.rows - len(red))
        return ExactMatrix(self.field, self.rows, self.cols, tuple(padded)), pivots, len(pivots)

    def rank(self) -> int:
        return rank(self.field, self.entries, self.cols)

    def nullspace(self) -> list[Vector]:
        return nullspace(self.field, self.entries, self.cols)

    def solve(self, b: Sequence[int]):
        return solve(self.field, self.entries, list(b), self.cols)

    def apply(self, v: Sequence[int]) -> Vector:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return matvec(self.field, self.entries, v)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows or self.field != other.field:
            raise ValueError("incompatible matrices")
        prod = matmul(self.field, self.entries, other.entries, self.cols, other.cols)
        return ExactMatrix(self.field, self.rows, other.cols, tuple(tuple(r) for r in prod))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]
