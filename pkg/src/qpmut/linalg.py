"""Exact rational matrices.

Matrices act on row vectors: a linear map ``V -> W`` is stored as a
``dim V x dim W`` matrix and "first ``f`` then ``g``" is ``F @ G``.  This
matches the left-to-right composition of paths used throughout the package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import StructuralError


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.replace("−", "-").strip())
    return Fraction(x)


class Matrix:
    """Dense matrix over the rationals with an explicit shape (zero sizes allowed)."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        self.rows = [[to_fraction(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise StructuralError("ncols is required for a matrix without rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise StructuralError(f"ragged matrix: expected {ncols} columns, got {len(r)}")

    # construction -----------------------------------------------------
    @classmethod
    def zeros(cls, m: int, n: int) -> "Matrix":
        out = cls.__new__(cls)
        out.rows = [[Fraction(0)] * n for _ in range(m)]
        out.nrows, out.ncols = m, n
        return out

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        out = cls.zeros(n, n)
        for i in range(n):
            out.rows[i][i] = Fraction(1)
        return out

    @classmethod
    def _raw(cls, rows: list[list[Fraction]], ncols: int) -> "Matrix":
        out = cls.__new__(cls)
        out.rows = rows
        out.nrows, out.ncols = len(rows), ncols
        return out

    @classmethod
    def vstack(cls, blocks: Sequence["Matrix"], ncols: int | None = None) -> "Matrix":
        if not blocks:
            if ncols is None:
                raise StructuralError("vstack of nothing needs ncols")
            return cls.zeros(0, ncols)
        n = blocks[0].ncols
        for b in blocks:
            if b.ncols != n:
                raise StructuralError("vstack: column counts differ")
        return cls._raw([list(r) for b in blocks for r in b.rows], n)

    @classmethod
    def hstack(cls, blocks: Sequence["Matrix"], nrows: int | None = None) -> "Matrix":
        if not blocks:
            if nrows is None:
                raise StructuralError("hstack of nothing needs nrows")
            return cls.zeros(nrows, 0)
        m = blocks[0].nrows
        for b in blocks:
            if b.nrows != m:
                raise StructuralError("hstack: row counts differ")
        rows = [[x for b in blocks for x in b.rows[i]] for i in range(m)]
        return cls._raw(rows, sum(b.ncols for b in blocks))

    @classmethod
    def block(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        return cls.vstack([cls.hstack(list(row)) for row in grid])

    def copy(self) -> "Matrix":
        return Matrix._raw([list(r) for r in self.rows], self.ncols)

    # basic algebra ----------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise StructuralError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix._raw(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise StructuralError(f"shape mismatch {self.shape} - {other.shape}")
        return Matrix._raw(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw([[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c) -> "Matrix":
        c = to_fraction(c)
        return Matrix._raw([[c * a for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise StructuralError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.ncols
        out = []
        orows = other.rows
        for r in self.rows:
            acc = [Fraction(0)] * cols
            for k, a in enumerate(r):
                if a:
                    ok = orows[k]
                    for j in range(cols):
                        b = ok[j]
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return Matrix._raw(out, cols)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw([list(c) for c in zip(*self.rows)] if self.nrows else
                           [[] for _ in range(self.ncols)], self.nrows)

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "Matrix":
        rows = range(self.nrows) if rows is None else rows
        cols = range(self.ncols) if cols is None else cols
        cols = list(cols)
        return Matrix._raw([[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def to_strings(self) -> list[list[str]]:
        return [[fraction_str(x) for x in r] for r in self.rows]

    # elimination ------------------------------------------------------
    def rref(self, column_order: Sequence[int] | None = None) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form and pivot columns.

        ``column_order`` changes the order in which columns are tried as
        pivots; this is how alternative (but still deterministic) bases and
        complements are produced.
        """
        rows = [list(r) for r in self.rows]
        order = list(range(self.ncols)) if column_order is None else list(column_order)
        pivots: list[int] = []
        r = 0
        for c in order:
            if r == len(rows):
                break
            piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = 1 / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            pr = rows[r]
            nz = [j for j, x in enumerate(pr) if x]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    ri = rows[i]
                    for j in nz:
                        ri[j] -= f * pr[j]
            pivots.append(c)
            r += 1
        return Matrix._raw(rows[:r], self.ncols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def row_space(self, column_order: Sequence[int] | None = None) -> "Matrix":
        """Basis (as rows) of the image of this map."""
        return self.rref(column_order)[0]

    def left_kernel(self, column_order: Sequence[int] | None = None) -> "Matrix":
        """Rows spanning ``{v : v @ self == 0}``, i.e. the kernel of the map."""
        aug = Matrix.hstack([self, Matrix.identity(self.nrows)])
        order = list(range(self.ncols))
        tail = list(range(self.ncols, self.ncols + self.nrows))
        if column_order is not None:
            tail = [self.ncols + j for j in column_order]
        red, piv = aug.rref(order + tail)
        rows = [r[self.ncols:] for r in red.rows if not any(r[: self.ncols])]
        return Matrix._raw(rows, self.nrows)

    def right_kernel(self) -> "Matrix":
        return self.T.left_kernel()

    def solve_left(self, rhs: "Matrix") -> "Matrix | None":
        """Some ``X`` with ``X @ self == rhs``, or ``None``."""
        if rhs.ncols != self.ncols:
            raise StructuralError("solve_left: column mismatch")
        m = self.nrows
        # Solve self^T X^T = rhs^T by elimination on [self^T | rhs^T].
        aug = Matrix.hstack([self.T, rhs.T])
        red, piv = aug.rref(list(range(m)) + list(range(m, m + rhs.nrows)))
        sol = Matrix.zeros(rhs.nrows, m)
        for row, p in zip(red.rows, piv):
            if p >= m:
                return None
            for k in range(rhs.nrows):
                sol.rows[k][p] = row[m + k]
        return sol

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise StructuralError("inverse of non-square matrix")
        n = self.nrows
        red, piv = Matrix.hstack([self, Matrix.identity(n)]).rref(list(range(n)))
        if piv != list(range(n)):
            raise StructuralError("matrix is singular")
        return red.submatrix(cols=range(n, 2 * n))

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise StructuralError("det of non-square matrix")
        rows = [list(r) for r in self.rows]
        n = len(rows)
        d = Fraction(1)
        for c in range(n):
            piv = next((i for i in range(c, n) if rows[i][c]), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                d = -d
            d *= rows[c][c]
            inv = 1 / rows[c][c]
            for i in range(c + 1, n):
                if rows[i][c]:
                    f = rows[i][c] * inv
                    for j in range(c, n):
                        rows[i][j] -= f * rows[c][j]
        return d


def fraction_str(x: Fraction) -> str:
    x = to_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def complement(basis: Matrix, column_order: Sequence[int] | None = None) -> Matrix:
    """Unit vectors completing the rows of ``basis`` to a basis of the ambient space.

    The chosen unit vectors sit on the non-pivot columns of the echelon form,
    scanned in ``column_order``.
    """
    n = basis.ncols
    order = list(range(n)) if column_order is None else list(column_order)
    _, piv = basis.rref(order)
    used = set(piv)
    free = [c for c in order if c not in used]
    out = Matrix.zeros(len(free), n)
    for i, c in enumerate(free):
        out.rows[i][c] = Fraction(1)
    return out


def coordinates(basis: Matrix, vectors: Matrix) -> Matrix:
    """Coefficients ``C`` with ``C @ basis == vectors``; raises if not in the span."""
    sol = basis.solve_left(vectors)
    if sol is None:
        raise StructuralError("vectors are not in the span of the basis")
    return sol


def intersect(a: Matrix, b: Matrix) -> Matrix:
    """Basis of the intersection of two row spaces."""
    if a.nrows == 0 or b.nrows == 0:
        return Matrix.zeros(0, a.ncols)
    ker = Matrix.vstack([a, -b]).left_kernel()
    return (ker.submatrix(cols=range(a.nrows)) @ a).row_space()


def span_contains(basis: Matrix, vectors: Matrix) -> bool:
    return basis.solve_left(vectors) is not None
