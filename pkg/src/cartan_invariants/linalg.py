"""Exact dense linear algebra over the rationals.

Everything here is plain Gauss-Jordan over ``Fraction``: system sizes in this
project stay small enough (a few thousand columns at the very worst) that
exact rational pivoting is fast and keeps the code obvious.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


class QMatrix:
    """Dense rectangular matrix of rationals."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence]):
        self.data = [[Fraction(x) for x in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence]) -> "QMatrix":
        cols = [list(c) for c in columns]
        if not cols:
            return cls.zeros(0, 0)
        n = len(cols[0])
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(n)])

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.data)

    def row(self, i: int) -> Vector:
        return tuple(self.data[i])

    def transpose(self) -> "QMatrix":
        return QMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def matmul(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            ai = self.data[i]
            out.append(
                [
                    sum((ai[k] * other.data[k][j] for k in range(self.cols)), Fraction(0))
                    for j in range(other.cols)
                ]
            )
        return QMatrix(out)

    def matvec(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        vv = [Fraction(x) for x in v]
        return tuple(
            sum((row[k] * vv[k] for k in range(self.cols)), Fraction(0)) for row in self.data
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.data == other.data

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.data))

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def __repr__(self) -> str:
        return f"QMatrix({self.data!r})"


def _rref_rows(data: list[list[Fraction]], cols: int) -> tuple[list[list[Fraction]], list[int]]:
    rows = len(data)
    pivots: list[int] = []
    r0 = 0
    for col in range(cols):
        pivot_row = None
        for i in range(r0, rows):
            if data[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        data[r0], data[pivot_row] = data[pivot_row], data[r0]
        pv = data[r0][col]
        if pv != 1:
            inv = Fraction(1) / pv
            row = data[r0]
            for j in range(col, cols):
                if row[j]:
                    row[j] *= inv
        prow = data[r0]
        for i in range(rows):
            if i == r0:
                continue
            f = data[i][col]
            if f:
                row = data[i]
                for j in range(col, cols):
                    if prow[j]:
                        row[j] -= f * prow[j]
        pivots.append(col)
        r0 += 1
        if r0 == rows:
            break
    return data, pivots


def rref(m: QMatrix) -> tuple[QMatrix, list[int]]:
    """Reduced row echelon form and the (strictly increasing) pivot columns."""
    data = [row[:] for row in m.data]
    data, pivots = _rref_rows(data, m.cols)
    return QMatrix(data), pivots


def rank(m: QMatrix) -> int:
    return len(rref(m)[1])


def nullspace(m: QMatrix) -> list[Vector]:
    """Basis of the right kernel {v : m v = 0}, one vector per free column."""
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for fc in free:
        v = [Fraction(0)] * m.cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red.data[i][fc]
        basis.append(tuple(v))
    return basis


def solve(m: QMatrix, b: Sequence) -> Vector | None:
    """Particular solution of ``m x = b`` (free variables zero), or None.

    ``None`` means the system is inconsistent; callers use that as the
    "not exact" signal in primitive searches.
    """
    if len(b) != m.rows:
        raise ValueError("right-hand side length must equal row count")
    data = [row[:] + [Fraction(bi)] for row, bi in zip(m.data, [Fraction(x) for x in b])]
    data, pivots = _rref_rows(data, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = data[i][m.cols]
    return tuple(x)


def row_space_rref(vectors: Iterable[Sequence]) -> list[Vector]:
    """Canonical rref basis of the span of the given row vectors."""
    rows = [list(v) for v in vectors]
    if not rows:
        return []
    data, pivots = _rref_rows([r[:] for r in rows], len(rows[0]))
    return [tuple(data[i]) for i in range(len(pivots))]


def same_span(a: Iterable[Sequence], b: Iterable[Sequence]) -> bool:
    return row_space_rref(a) == row_space_rref(b)


def in_span(vectors: Iterable[Sequence], v: Sequence) -> bool:
    base = row_space_rref(vectors)
    return row_space_rref(base + [tuple(Fraction(x) for x in v)]) == base
