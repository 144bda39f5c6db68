"""Block super-matrix algebra over a chart's superfunction ring.

A SuperMatrix of shape (p|q) x (r|s) stores a dense (p+q) x (r+s) grid of
SuperFunctions in the block layout [[A, B], [C, D]]: the first p rows and
first r columns are the even ones.  A and D must hold even entries, B and C
odd entries (zero passes any parity slot).

Inversion of a square matrix uses the Schur-complement block formula with
exact inversion of the even blocks; the Berezinian is

    Ber(M) = det(A) * det(D - C A^-1 B)^-1

computed with exact determinants of even matrices.  The determinant of an
even matrix runs a fraction-free Bareiss elimination with pivoting on
entries whose body is invertible, and falls back to cofactor expansion when
no such pivot exists (possible only for matrices with nilpotent or zero
determinant body, which the geometric constructions never produce).
"""

from __future__ import annotations

from typing import Callable, Sequence

from .superalgebra import Chart, SuperFunction

Grid = tuple[tuple[SuperFunction, ...], ...]


class SuperMatrix:
    __slots__ = ("chart", "row_shape", "col_shape", "entries")

    def __init__(
        self,
        chart: Chart,
        row_shape: tuple[int, int],
        col_shape: tuple[int, int],
        entries: Sequence[Sequence[SuperFunction]],
    ):
        p, q = row_shape
        r, s = col_shape
        grid = tuple(tuple(row) for row in entries)
        if len(grid) != p + q or any(len(row) != r + s for row in grid):
            raise ValueError("entry grid does not match the declared shape")
        for i, row in enumerate(grid):
            for j, entry in enumerate(row):
                if entry.chart != chart:
                    raise ValueError("all entries must live on the matrix chart")
                expected = ((i >= p) + (j >= r)) % 2
                parity = entry.parity
                if parity == "inhomogeneous" and not entry.is_zero:
                    raise ValueError(f"inhomogeneous entry at ({i}, {j})")
                if not entry.is_zero and parity != ("even", "odd")[expected]:
                    raise ValueError(
                        f"entry at ({i}, {j}) has parity {parity}, "
                        f"expected {('even', 'odd')[expected]}"
                    )
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "row_shape", (p, q))
        object.__setattr__(self, "col_shape", (r, s))
        object.__setattr__(self, "entries", grid)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("SuperMatrix is immutable")

    @classmethod
    def identity(cls, chart: Chart, shape: tuple[int, int]) -> SuperMatrix:
        n = shape[0] + shape[1]
        one = SuperFunction.one(chart)
        zero = SuperFunction.zero(chart)
        grid = [[one if i == j else zero for j in range(n)] for i in range(n)]
        return cls(chart, shape, shape, grid)

    # -- block access -----------------------------------------------------

    def block_a(self) -> list[list[SuperFunction]]:
        p, _ = self.row_shape
        r, _ = self.col_shape
        return [list(row[:r]) for row in self.entries[:p]]

    def block_b(self) -> list[list[SuperFunction]]:
        p, _ = self.row_shape
        r, _ = self.col_shape
        return [list(row[r:]) for row in self.entries[:p]]

    def block_c(self) -> list[list[SuperFunction]]:
        p, _ = self.row_shape
        r, _ = self.col_shape
        return [list(row[:r]) for row in self.entries[p:]]

    def block_d(self) -> list[list[SuperFunction]]:
        p, _ = self.row_shape
        r, _ = self.col_shape
        return [list(row[r:]) for row in self.entries[p:]]

    def is_square(self) -> bool:
        return self.row_shape == self.col_shape

    def map_entries(self, fn: Callable[[SuperFunction], SuperFunction]) -> SuperMatrix:
        chart = None
        grid = []
        for row in self.entries:
            new_row = [fn(entry) for entry in row]
            grid.append(new_row)
            if new_row:
                chart = new_row[0].chart
        return SuperMatrix(chart or self.chart, self.row_shape, self.col_shape, grid)

    def equals(self, other: SuperMatrix) -> bool:
        if self.row_shape != other.row_shape or self.col_shape != other.col_shape:
            return False
        return all(
            a.equals(b)
            for ra, rb in zip(self.entries, other.entries)
            for a, b in zip(ra, rb)
        )

    def __mul__(self, other: SuperMatrix) -> SuperMatrix:
        if self.col_shape != other.row_shape:
            raise ValueError(
                f"shape mismatch: {self.col_shape} columns vs {other.row_shape} rows"
            )
        if self.chart != other.chart:
            raise ValueError("supermatrix product across different charts")
        inner = other.row_shape[0] + other.row_shape[1]
        cols = other.col_shape[0] + other.col_shape[1]
        rows = self.row_shape[0] + self.row_shape[1]
        zero = SuperFunction.zero(self.chart)
        grid = []
        for i in range(rows):
            row = []
            for j in range(cols):
                acc = zero
                for k in range(inner):
                    left = self.entries[i][k]
                    right = other.entries[k][j]
                    if left.is_zero or right.is_zero:
                        continue
                    acc = acc + left * right
                row.append(acc)
            grid.append(row)
        return SuperMatrix(self.chart, self.row_shape, other.col_shape, grid)

    def to_str(self) -> str:
        return "\n".join(
            "  ".join(entry.to_str() for entry in row) for row in self.entries
        )

    def __repr__(self):
        p, q = self.row_shape
        r, s = self.col_shape
        return f"SuperMatrix({p}|{q} x {r}|{s} on {self.chart.name!r})"


class _PivotFailure(Exception):
    pass


def even_det(rows: Sequence[Sequence[SuperFunction]]) -> SuperFunction:
    """Exact determinant of a square grid of even superfunctions.

    Bareiss-style fraction-free elimination keeps intermediate entries small;
    pivots need an invertible body, with row swaps tracked by sign.
    """
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("determinant of a non-square grid")
    if n == 0:
        raise ValueError("determinant of an empty grid")
    chart = rows[0][0].chart
    for row in rows:
        for entry in row:
            if entry.parity != "even":
                raise ValueError("even_det requires even entries")
    if n == 1:
        return rows[0][0]
    try:
        return _det_bareiss(rows, chart)
    except _PivotFailure:
        return _det_cofactor(rows, chart)


def _det_bareiss(rows: Sequence[Sequence[SuperFunction]], chart: Chart) -> SuperFunction:
    n = len(rows)
    m = [list(row) for row in rows]
    sign = 1
    prev_inv = SuperFunction.one(chart)
    for k in range(n - 1):
        pivot_row = next(
            (t for t in range(k, n) if not m[t][k].body().is_zero), None
        )
        if pivot_row is None:
            raise _PivotFailure
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (pivot * m[i][j] - m[i][k] * m[k][j]) * prev_inv
        prev_inv = pivot.invert()
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def _det_cofactor(rows: Sequence[Sequence[SuperFunction]], chart: Chart) -> SuperFunction:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = SuperFunction.zero(chart)
    for j in range(n):
        entry = rows[0][j]
        if entry.is_zero:
            continue
        minor = [
            [rows[i][c] for c in range(n) if c != j] for i in range(1, n)
        ]
        term = entry * _det_cofactor(minor, chart)
        total = total + term if j % 2 == 0 else total - term
    return total


def even_matrix_inverse(
    rows: Sequence[Sequence[SuperFunction]],
) -> list[list[SuperFunction]]:
    """Gauss-Jordan inverse of a square grid of even superfunctions."""
    n = len(rows)
    if n == 0:
        return []
    chart = rows[0][0].chart
    one = SuperFunction.one(chart)
    zero = SuperFunction.zero(chart)
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        pivot_row = next(
            (r for r in range(col, n) if not aug[r][col].body().is_zero), None
        )
        if pivot_row is None:
            raise ValueError("even matrix is not invertible (no invertible pivot)")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv = aug[col][col].invert()
        aug[col] = [entry * inv for entry in aug[col]]
        for r in range(n):
            if r == col or aug[r][col].is_zero:
                continue
            f = aug[r][col]
            aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def grid_mul(
    x: Sequence[Sequence[SuperFunction]],
    y: Sequence[Sequence[SuperFunction]],
    chart: Chart,
) -> list[list[SuperFunction]]:
    if not x or not y:
        return []
    zero = SuperFunction.zero(chart)
    out = []
    for i in range(len(x)):
        row = []
        for j in range(len(y[0])):
            acc = zero
            for k in range(len(y)):
                if x[i][k].is_zero or y[k][j].is_zero:
                    continue
                acc = acc + x[i][k] * y[k][j]
            row.append(acc)
        out.append(row)
    return out


def grid_sub(
    x: Sequence[Sequence[SuperFunction]], y: Sequence[Sequence[SuperFunction]]
) -> list[list[SuperFunction]]:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(x, y)]


def smat_inverse(m: SuperMatrix) -> SuperMatrix:
    """Two-sided exact inverse of an invertible square supermatrix.

    Requires the even diagonal blocks to be invertible (determinant with
    nonzero body); this is the formal counterpart of "the cells overlap".
    """
    if not m.is_square():
        raise ValueError("inverse of a non-square supermatrix")
    p, q = m.row_shape
    chart = m.chart
    a, b, c, d = m.block_a(), m.block_b(), m.block_c(), m.block_d()
    if p == 0:
        return SuperMatrix(chart, m.row_shape, m.col_shape, even_matrix_inverse(d))
    if q == 0:
        return SuperMatrix(chart, m.row_shape, m.col_shape, even_matrix_inverse(a))
    a_inv = even_matrix_inverse(a)
    d_inv = even_matrix_inverse(d)
    schur_a = grid_sub(a, grid_mul(grid_mul(b, d_inv, chart), c, chart))
    schur_d = grid_sub(d, grid_mul(grid_mul(c, a_inv, chart), b, chart))
    top_left = even_matrix_inverse(schur_a)
    bottom_right = even_matrix_inverse(schur_d)
    top_right = grid_mul(
        grid_mul(a_inv, b, chart), [[-e for e in row] for row in bottom_right], chart
    )
    bottom_left = grid_mul(
        grid_mul(d_inv, c, chart), [[-e for e in row] for row in top_left], chart
    )
    grid = [tl + tr for tl, tr in zip(top_left, top_right)]
    grid += [bl + br for bl, br in zip(bottom_left, bottom_right)]
    return SuperMatrix(chart, m.row_shape, m.col_shape, grid)


def berezinian(m: SuperMatrix) -> SuperFunction:
    """Ber(M) = det(A) * det(D - C A^-1 B)^-1 for an invertible square M."""
    if not m.is_square():
        raise ValueError("Berezinian of a non-square supermatrix")
    p, q = m.row_shape
    chart = m.chart
    if q == 0:
        return even_det(m.block_a())
    if p == 0:
        return even_det(m.block_d()).invert()
    a, b, c, d = m.block_a(), m.block_b(), m.block_c(), m.block_d()
    a_inv = even_matrix_inverse(a)
    schur = grid_sub(d, grid_mul(grid_mul(c, a_inv, chart), b, chart))
    return even_det(a) * even_det(schur).invert()


def berezinian_alt(m: SuperMatrix) -> SuperFunction:
    """Alternative block formula det(A - B D^-1 C) * det(D)^-1."""
    if not m.is_square():
        raise ValueError("Berezinian of a non-square supermatrix")
    p, q = m.row_shape
    chart = m.chart
    if q == 0:
        return even_det(m.block_a())
    if p == 0:
        return even_det(m.block_d()).invert()
    a, b, c, d = m.block_a(), m.block_b(), m.block_c(), m.block_d()
    d_inv = even_matrix_inverse(d)
    schur = grid_sub(a, grid_mul(grid_mul(b, d_inv, chart), c, chart))
    return even_det(schur) * even_det(d).invert()
