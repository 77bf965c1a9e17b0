"""Hermite and Smith normal forms over k[x] and the decisions built on them.

All forms are column based: ``hermite_normal_form`` returns ``(H, U)`` with
``A @ U == H``.  Pivot choice is the lowest-degree nonzero entry, ties broken
by the smaller index, so outputs are reproducible.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .matrix import PolyMatrix, ShapeError
from .poly import Poly


def _axpy(dst, q, src):
    # dst <- dst - q*src, in place
    for i, s in enumerate(src):
        if s.coeffs:
            dst[i] = dst[i] - q * s


def _scale(vec, c):
    for i, v in enumerate(vec):
        if v.coeffs:
            vec[i] = v.scale(c)


def _hnf_columns(A: PolyMatrix):
    """Column HNF on column lists; returns (cols, ucols, pivot_rows)."""
    F = A.field
    ncols = A.cols
    cols = A.columns()
    one, zero = Poly.one(F), Poly.zero(F)
    ucols = [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    pivot_rows = []
    piv = 0
    for r in range(A.rows):
        if piv == ncols:
            break
        found = False
        while True:
            nz = [j for j in range(piv, ncols) if cols[j][r].coeffs]
            if not nz:
                break
            found = True
            j0 = min(nz, key=lambda j: (cols[j][r].degree, j))
            if j0 != piv:
                cols[piv], cols[j0] = cols[j0], cols[piv]
                ucols[piv], ucols[j0] = ucols[j0], ucols[piv]
            p = cols[piv][r]
            clean = True
            for j in range(piv + 1, ncols):
                e = cols[j][r]
                if not e.coeffs:
                    continue
                q, rem = e.divrem(p)
                _axpy(cols[j], q, cols[piv])
                _axpy(ucols[j], q, ucols[piv])
                if rem.coeffs:
                    clean = False
            if clean:
                break
        if not found:
            continue
        inv = F.inv(cols[piv][r].lc)
        if inv != F.one:
            _scale(cols[piv], inv)
            _scale(ucols[piv], inv)
        p = cols[piv][r]
        for j in range(piv):
            e = cols[j][r]
            if e.coeffs and e.degree >= p.degree:
                q = e.divrem(p)[0]
                _axpy(cols[j], q, cols[piv])
                _axpy(ucols[j], q, ucols[piv])
        pivot_rows.append(r)
        piv += 1
    return cols, ucols, pivot_rows


def hermite_normal_form(A: PolyMatrix) -> tuple[PolyMatrix, PolyMatrix]:
    """Column Hermite form: ``A @ U == H`` with ``U`` unimodular.

    Nonzero columns of ``H`` come first, with monic pivots in strictly
    increasing rows; entries left of a pivot have smaller degree than it.
    """
    cols, ucols, _ = _hnf_columns(A)
    H = PolyMatrix.from_columns(A.field, A.rows, cols)
    U = PolyMatrix.from_columns(A.field, A.cols, ucols)
    return H, U


def column_rank(A: PolyMatrix) -> int:
    return len(_hnf_columns(A)[2])


def kernel_basis(A: PolyMatrix) -> PolyMatrix:
    """Basis (as columns) of the free module ``{v : A v = 0}``."""
    _, ucols, pivots = _hnf_columns(A)
    return PolyMatrix.from_columns(A.field, A.cols, ucols[len(pivots):])


def solve_right(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix | None:
    """Return ``X`` over k[x] with ``A @ X == B``, or ``None`` if none exists."""
    if A.field != B.field:
        raise ShapeError("field mismatch in solve_right")
    if A.rows != B.rows:
        raise ShapeError(f"solve_right: A has {A.rows} rows, B has {B.rows}")
    F = A.field
    cols, ucols, pivots = _hnf_columns(A)
    k = len(pivots)
    zero = Poly.zero(F)
    solution_cols = []
    for b in B.columns():
        y = []
        for t, pr in enumerate(pivots):
            acc = b[pr]
            for s in range(t):
                h = cols[s][pr]
                if h.coeffs and y[s].coeffs:
                    acc = acc - h * y[s]
            q, rem = acc.divrem(cols[t][pr])
            if rem.coeffs:
                return None
            y.append(q)
        # non-pivot rows must match as well
        for i in range(A.rows):
            acc = zero
            for t in range(k):
                h = cols[t][i]
                if h.coeffs and y[t].coeffs:
                    acc = acc + h * y[t]
            if acc != b[i]:
                return None
        x = [zero] * A.cols
        for t in range(k):
            if y[t].coeffs:
                _axpy(x, -y[t], ucols[t])
        solution_cols.append(x)
    return PolyMatrix.from_columns(F, A.cols, solution_cols)


class SmithForm(NamedTuple):
    invariants: list
    U: PolyMatrix
    V: PolyMatrix


def smith_normal_form(A: PolyMatrix) -> SmithForm:
    """``U @ A @ V`` is diagonal with monic ``d_1 | d_2 | ...``.

    ``invariants`` has ``min(rows, cols)`` entries; zero polynomials (rank
    deficiency) come last.
    """
    F = A.field
    m, c = A.rows, A.cols
    D = [list(r) for r in A.entries]
    one, zero = Poly.one(F), Poly.zero(F)
    U = [[one if i == j else zero for j in range(m)] for i in range(m)]
    V = [[one if i == j else zero for j in range(c)] for i in range(c)]

    def row_op(i, q, t):  # row_i -= q*row_t
        for mat in (D, U):
            ri, rt = mat[i], mat[t]
            for j, v in enumerate(rt):
                if v.coeffs:
                    ri[j] = ri[j] - q * v

    def col_op(j, q, t):  # col_j -= q*col_t
        for mat in (D, V):
            for row in mat:
                v = row[t]
                if v.coeffs:
                    row[j] = row[j] - q * v

    def swap_rows(i, t):
        D[i], D[t] = D[t], D[i]
        U[i], U[t] = U[t], U[i]

    def swap_cols(j, t):
        for mat in (D, V):
            for row in mat:
                row[j], row[t] = row[t], row[j]

    size = min(m, c)
    for t in range(size):
        cand = [(D[i][j].degree, i, j) for i in range(t, m) for j in range(t, c) if D[i][j].coeffs]
        if not cand:
            break
        _, i0, j0 = min(cand)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            line = [(D[i][t].degree, i, t) for i in range(t + 1, m) if D[i][t].coeffs]
            line += [(D[t][j].degree, t, j) for j in range(t + 1, c) if D[t][j].coeffs]
            if line:
                d, i1, j1 = min(line)
                if d < D[t][t].degree:
                    if i1 != t:
                        swap_rows(t, i1)
                    else:
                        swap_cols(t, j1)
                    continue
                p = D[t][t]
                for i in range(t + 1, m):
                    if D[i][t].coeffs:
                        row_op(i, D[i][t].divrem(p)[0], t)
                for j in range(t + 1, c):
                    if D[t][j].coeffs:
                        col_op(j, D[t][j].divrem(p)[0], t)
                continue
            p = D[t][t]
            bad = next((i for i in range(t + 1, m)
                        if any(D[i][j].coeffs and D[i][j].divrem(p)[1].coeffs for j in range(t + 1, c))), None)
            if bad is None:
                break
            row_op(t, -one, bad)  # row_t += row_bad
        inv = F.inv(D[t][t].lc)
        if inv != F.one:
            D[t] = [v.scale(inv) if v.coeffs else v for v in D[t]]
            U[t] = [v.scale(inv) if v.coeffs else v for v in U[t]]
    invariants = [D[t][t] for t in range(size)]
    return SmithForm(invariants, PolyMatrix._raw(F, m, m, U), PolyMatrix._raw(F, c, c, V))


def coker_kdim(A: PolyMatrix) -> int | float:
    """k-dimension of ``coker(A: R^cols -> R^rows)``; ``math.inf`` if it has a free part."""
    invariants = smith_normal_form(A).invariants
    nonzero = [d for d in invariants if d.coeffs]
    if len(nonzero) < A.rows:
        return math.inf
    return sum(d.degree for d in nonzero)


def inverse(A: PolyMatrix) -> PolyMatrix:
    """Inverse of a unimodular matrix; raises ``ArithmeticError`` otherwise."""
    if A.rows != A.cols:
        raise ShapeError("inverse of a non-square matrix")
    X = solve_right(A, PolyMatrix.identity(A.field, A.rows))
    if X is None:
        raise ArithmeticError("matrix is not invertible over k[x]")
    return X
