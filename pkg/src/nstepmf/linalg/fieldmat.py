"""Dense matrices over the base field k (no polynomial entries).

Used for the finite-dimensional graded modules of the root-stack model.
"""

from __future__ import annotations

from .field import FieldSpec
from .matrix import ShapeError


class KMatrix:
    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldSpec, rows: int, cols: int, data=None):
        if data is None:
            data = [[field.zero] * cols for _ in range(rows)]
        grid = tuple(tuple(field.elem(v) for v in r) for r in data)
        if len(grid) != rows or any(len(r) != cols for r in grid):
            raise ShapeError(f"data do not form a {rows}x{cols} grid")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = grid

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, rows, cols)

    @property
    def shape(self):
        return self.rows, self.cols

    def __eq__(self, other):
        if not isinstance(other, KMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.field, self.shape, self.data))

    def __repr__(self):
        return f"KMatrix({self.rows}x{self.cols}, {[list(map(str, r)) for r in self.data]})"

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        out = [[sum((self.data[i][k] * other.data[k][j] for k in range(self.cols)), self.field.zero)
                for j in range(other.cols)] for i in range(self.rows)]
        return KMatrix(self.field, self.rows, other.cols, out)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ShapeError("shape mismatch")
        return KMatrix(self.field, self.rows, self.cols,
                       [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self):
        return KMatrix(self.field, self.rows, self.cols, [[-a for a in r] for r in self.data])

    def __sub__(self, other):
        return self + (-other)

    def transpose(self):
        return KMatrix(self.field, self.cols, self.rows,
                       [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def is_zero(self):
        return all(not v for r in self.data for v in r)

    def rank(self) -> int:
        return len(_rref(self)[1])

    def nullspace(self) -> KMatrix:
        """Columns form a basis of ``{v : self @ v == 0}``."""
        R, pivots = _rref(self)
        F = self.field
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for f in free:
            v = [F.zero] * self.cols
            v[f] = F.one
            for r, pc in enumerate(pivots):
                v[pc] = _norm(F, -R[r][f])
            basis.append(v)
        return KMatrix(F, self.cols, len(basis), [[b[i] for b in basis] for i in range(self.cols)])

    def solve(self, B: KMatrix) -> KMatrix | None:
        """Some ``X`` with ``self @ X == B``, or ``None``."""
        if B.rows != self.rows:
            raise ShapeError("row mismatch in solve")
        F = self.field
        aug = KMatrix(F, self.rows, self.cols + B.cols, [a + b for a, b in zip(self.data, B.data)])
        R, pivots = _rref(aug)
        if any(pc >= self.cols for pc in pivots):
            return None
        X = [[F.zero] * B.cols for _ in range(self.cols)]
        for r, pc in enumerate(pivots):
            for j in range(B.cols):
                X[pc][j] = R[r][self.cols + j]
        return KMatrix(F, self.cols, B.cols, X)


def _norm(F, v):
    return v % F.p if F.p is not None else v


def _rref(A: KMatrix):
    F = A.field
    M = [list(r) for r in A.data]
    pivots = []
    row = 0
    for col in range(A.cols):
        piv = next((i for i in range(row, A.rows) if M[i][col]), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = F.inv(M[row][col])
        M[row] = [_norm(F, v * inv) for v in M[row]]
        for i in range(A.rows):
            if i != row and M[i][col]:
                c = M[i][col]
                M[i] = [_norm(F, a - c * b) for a, b in zip(M[i], M[row])]
        pivots.append(col)
        row += 1
        if row == A.rows:
            break
    return M, pivots
