"""Exact rational linear algebra over small dense matrices.

Coefficients are ``fractions.Fraction`` values, which are always kept in
lowest terms with a positive denominator, so every rank, kernel and inverse
computed here is exact.  Matrices are immutable once built; all operations
return fresh objects.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ShapeMismatch

Rational = Fraction


def rat(value) -> Fraction:
    """Parse a rational from an int, Fraction, or a "p/q" / "p" string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_str(value: Fraction) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class RatMatrix:
    """Dense matrix of Fractions. Treated as immutable after construction."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable] | None, rows: int | None = None, cols: int | None = None):
        if entries is None:
            if rows is None or cols is None:
                raise ValueError("empty matrix needs explicit rows and cols")
            self.rows = rows
            self.cols = cols
            self.entries = tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows))
            return
        grid = tuple(tuple(rat(x) for x in row) for row in entries)
        self.rows = len(grid)
        self.cols = len(grid[0]) if grid else (cols if cols is not None else 0)
        for row in grid:
            if len(row) != self.cols:
                raise ShapeMismatch("ragged rows in matrix literal")
        self.entries = grid

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(None, rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RatMatrix":
        if not columns:
            return cls.zeros(rows, 0)
        return cls([[rat(col[i]) for col in columns] for i in range(rows)])

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(rat_str(x) for x in row) for row in self.entries)
        return f"RatMatrix({self.rows}x{self.cols}: {body})"

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "RatMatrix":
        return RatMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
                         cols=self.rows)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeMismatch(f"add {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        return RatMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
                         cols=self.cols)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeMismatch(f"subtract {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        return RatMatrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
                         cols=self.cols)

    def scale(self, c) -> "RatMatrix":
        c = rat(c)
        return RatMatrix([[c * x for x in row] for row in self.entries], cols=self.cols)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            ri = self.entries[i]
            out.append([sum((ri[t] * other.entries[t][j] for t in range(self.cols)), Fraction(0))
                        for j in range(other.cols)])
        return RatMatrix(out, rows=self.rows, cols=other.cols)

    def apply(self, vector: Sequence) -> tuple:
        """Matrix-vector product, returning a tuple of Fractions."""
        if len(vector) != self.cols:
            raise ShapeMismatch(f"apply {self.rows}x{self.cols} to vector of length {len(vector)}")
        vec = [rat(x) for x in vector]
        return tuple(sum((row[t] * vec[t] for t in range(self.cols)), Fraction(0)) for row in self.entries)

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows:
            raise ShapeMismatch("hstack needs equal row counts")
        return RatMatrix([list(a) + list(b) for a, b in zip(self.entries, other.entries)],
                         rows=self.rows, cols=self.cols + other.cols)

    def vstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.cols:
            raise ShapeMismatch("vstack needs equal column counts")
        return RatMatrix([list(r) for r in self.entries] + [list(r) for r in other.entries],
                         rows=self.rows + other.rows, cols=self.cols)

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "RatMatrix":
        return RatMatrix([[self.entries[i][j] for j in col_indices] for i in row_indices],
                         rows=len(row_indices), cols=len(col_indices))


def rref(m: RatMatrix) -> tuple[RatMatrix, tuple[int, ...], int]:
    """Reduced row echelon form. Returns (rref, pivot column indices, rank)."""
    work = [list(row) for row in m.entries]
    rows, cols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if work[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(rows):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return RatMatrix(work, rows=rows, cols=cols), tuple(pivots), r


def rank(m: RatMatrix) -> int:
    return rref(m)[2]


def kernel_basis(m: RatMatrix) -> RatMatrix:
    """Basis of the right kernel, one basis vector per column.

    Basis vectors are indexed by the free columns of the rref in ascending
    order, each with a 1 in its free coordinate, so the result is
    deterministic.
    """
    red, pivots, r = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    columns = []
    for j in free:
        vec = [Fraction(0)] * m.cols
        vec[j] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -red.entries[i][j]
        columns.append(vec)
    return RatMatrix.from_columns(columns, m.cols)


def image_basis(m: RatMatrix) -> RatMatrix:
    """Basis of the column space: the pivot columns of the original matrix."""
    _, pivots, _ = rref(m)
    return RatMatrix.from_columns([m.column(j) for j in pivots], m.rows)


def solve(m: RatMatrix, rhs: Sequence) -> tuple | None:
    """One exact solution of m @ x = rhs (free variables set to 0), or None."""
    if len(rhs) != m.rows:
        raise ShapeMismatch(f"solve {m.rows}x{m.cols} with rhs of length {len(rhs)}")
    aug = m.hstack(RatMatrix.from_columns([[rat(x) for x in rhs]], m.rows))
    red, pivots, r = rref(aug)
    if m.cols in pivots:
        return None
    sol = [Fraction(0)] * m.cols
    for i, p in enumerate(pivots):
        sol[p] = red.entries[i][m.cols]
    return tuple(sol)


def invert(m: RatMatrix) -> RatMatrix | None:
    """Exact inverse, or None when the matrix is singular or non-square."""
    if m.rows != m.cols:
        return None
    aug = m.hstack(RatMatrix.identity(m.rows))
    red, pivots, _ = rref(aug)
    if sum(1 for p in pivots if p < m.cols) < m.rows:
        return None
    return red.submatrix(range(m.rows), range(m.cols, 2 * m.cols))
