"""Rectangular matrices of polynomials (maps of finite free k[x]-modules)."""

from __future__ import annotations

from .field import FieldMismatchError, FieldSpec
from .poly import Poly


class ShapeError(ValueError):
    pass


class PolyMatrix:
    """Immutable ``rows x cols`` matrix with :class:`Poly` entries, row-major."""

    __slots__ = ("field", "rows", "cols", "entries", "_hash")

    def __init__(self, field: FieldSpec, rows: int, cols: int, entries):
        grid = tuple(tuple(_as_poly(field, e) for e in row) for row in entries)
        if len(grid) != rows or any(len(r) != cols for r in grid):
            raise ShapeError(f"entries do not form a {rows}x{cols} grid")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = grid
        self._hash = None

    @classmethod
    def _raw(cls, field, rows, cols, grid):
        obj = cls.__new__(cls)
        obj.field = field
        obj.rows = rows
        obj.cols = cols
        obj.entries = tuple(tuple(r) for r in grid)
        obj._hash = None
        return obj

    @classmethod
    def from_rows(cls, field: FieldSpec, rows, ncols: int | None = None) -> PolyMatrix:
        """Build from nested lists; entries may be Poly, int, Fraction or coefficient lists."""
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def zeros(cls, field, rows, cols):
        z = Poly.zero(field)
        return cls._raw(field, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, n):
        return cls.scalar(field, n, Poly.one(field))

    @classmethod
    def scalar(cls, field, n, value):
        value = _as_poly(field, value)
        z = Poly.zero(field)
        return cls._raw(field, n, n, [[value if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, field, nrows, columns) -> PolyMatrix:
        columns = list(columns)
        return cls._raw(field, nrows, len(columns), [[c[i] for c in columns] for i in range(nrows)])

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j):
        return [row[j] for row in self.entries]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self.entries == other.entries)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.rows, self.cols, self.entries))
        return self._hash

    def _check(self, other):
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return PolyMatrix._raw(self.field, self.rows, self.cols,
                               [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __neg__(self):
        return PolyMatrix._raw(self.field, self.rows, self.cols, [[-a for a in r] for r in self.entries])

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __rmul__(self, scalar):
        s = _as_poly(self.field, scalar)
        return PolyMatrix._raw(self.field, self.rows, self.cols, [[s * a for a in r] for r in self.entries])

    __mul__ = __rmul__

    def transpose(self):
        return PolyMatrix._raw(self.field, self.cols, self.rows,
                               [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    @property
    def T(self):
        return self.transpose()

    def is_zero(self):
        return all(e.is_zero() for r in self.entries for e in r)

    def max_degree(self):
        return max((e.degree for r in self.entries for e in r), default=-1)

    def block(self, r0, r1, c0, c1):
        return PolyMatrix._raw(self.field, r1 - r0, c1 - c0,
                               [row[c0:c1] for row in self.entries[r0:r1]])

    def to_coeff_lists(self):
        return [[list(e.coeffs) for e in r] for r in self.entries]

    def __repr__(self):
        body = "; ".join(", ".join(e.format() for e in r) for r in self.entries)
        return f"PolyMatrix({self.rows}x{self.cols}: [{body}])"


def _as_poly(field, value) -> Poly:
    if isinstance(value, Poly):
        if value.field != field:
            raise FieldMismatchError(f"{value.field} vs {field}")
        return value
    if isinstance(value, (list, tuple)):
        return Poly(field, value)
    return Poly.const(field, value)


def mat_mul(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    A._check(B)
    if A.cols != B.rows:
        raise ShapeError(f"cannot multiply {A.shape} by {B.shape}")
    F = A.field
    zero = Poly.zero(F)
    bcols = B.columns()
    out = []
    for row in A.entries:
        nz = [(k, a) for k, a in enumerate(row) if a.coeffs]
        out_row = []
        for col in bcols:
            acc = zero
            for k, a in nz:
                b = col[k]
                if b.coeffs:
                    acc = acc + a * b
            out_row.append(acc)
        out.append(out_row)
    return PolyMatrix._raw(F, A.rows, B.cols, out)


def hstack(field, nrows, *blocks) -> PolyMatrix:
    for b in blocks:
        if b.rows != nrows:
            raise ShapeError("hstack row mismatch")
    grid = [sum((list(b.entries[i]) for b in blocks), []) for i in range(nrows)]
    return PolyMatrix._raw(field, nrows, sum(b.cols for b in blocks), grid)


def vstack(field, ncols, *blocks) -> PolyMatrix:
    for b in blocks:
        if b.cols != ncols:
            raise ShapeError("vstack column mismatch")
    grid = [row for b in blocks for row in b.entries]
    return PolyMatrix._raw(field, sum(b.rows for b in blocks), ncols, grid)


def block_diag(field, *blocks) -> PolyMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    zero = Poly.zero(field)
    grid = [[zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                grid[r0 + i][c0 + j] = b.entries[i][j]
        r0 += b.rows
        c0 += b.cols
    return PolyMatrix._raw(field, rows, cols, grid)


def det(A: PolyMatrix) -> Poly:
    """Determinant by fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise ShapeError("determinant of a non-square matrix")
    F = A.field
    n = A.rows
    if n == 0:
        return Poly.one(F)
    M = [list(r) for r in A.entries]
    sign = 1
    prev = Poly.one(F)
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return Poly.zero(F)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).exact_div(prev)
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d
