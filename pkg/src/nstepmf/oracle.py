"""Brute-force oracles that never touch Hermite/Smith forms.

Everything here truncates k[x] at a degree bound and does plain linear algebra
over k (ranks computed by python-flint).  Dimensions are accepted once two
successive truncation degrees agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import flint

from .linalg import FieldSpec, PolyMatrix

MAX_EXTRA_STEPS = 24


def _rank(field: FieldSpec, rows: list[dict[int, object]], ncols: int) -> int:
    """Rank of a sparse matrix given as a list of ``{col: value}`` rows."""
    rows = [r for r in rows if any(v for v in r.values())]
    if not rows or ncols == 0:
        return 0
    if field.p is not None:
        flat = [0] * (len(rows) * ncols)
        for i, r in enumerate(rows):
            for j, v in r.items():
                flat[i * ncols + j] = int(v) % field.p
        return flint.nmod_mat(len(rows), ncols, flat, field.p).rank()
    flat = [flint.fmpq(0)] * (len(rows) * ncols)
    for i, r in enumerate(rows):
        for j, v in r.items():
            flat[i * ncols + j] = flint.fmpq(v.numerator, v.denominator)
    return flint.fmpq_mat(len(rows), ncols, flat).rank()


def _add(row, col, value):
    if value:
        row[col] = row.get(col, 0) + value


def total_degree(A: PolyMatrix) -> int:
    return sum(max(0, max((A[i, j].degree for i in range(A.rows)), default=0)) for j in range(A.cols))


def truncated_coker_dim(A: PolyMatrix, D: int, E: int) -> int:
    """dim_k of ``R^m_{<=D} / (im(A) restricted to inputs of degree <= E) ∩ R^m_{<=D}``."""
    m, c = A.rows, A.cols
    dA = max(A.max_degree(), 0)
    top = E + dA
    # variable (j, e) -> index j*(E+1)+e ; output row (i, t) -> i*(top+1)+t
    out = [dict() for _ in range(m * (top + 1))]
    for i in range(m):
        for j in range(c):
            coeffs = A[i, j].coeffs
            for s, a in enumerate(coeffs):
                if not a:
                    continue
                for e in range(E + 1):
                    _add(out[i * (top + 1) + s + e], j * (E + 1) + e, a)
    nvars = c * (E + 1)
    high = [out[i * (top + 1) + t] for i in range(m) for t in range(D + 1, top + 1)]
    inter = _rank(A.field, out, nvars) - _rank(A.field, high, nvars)
    return m * (D + 1) - inter


def oracle_coker_kdim(A: PolyMatrix, D: int | None = None) -> int | float:
    """Cokernel k-dimension by truncation; ``math.inf`` if it never stabilises."""
    base = total_degree(A) + 5
    D = base if D is None else D
    prev = truncated_coker_dim(A, D, D + base)
    for step in range(1, MAX_EXTRA_STEPS + 1):
        cur = truncated_coker_dim(A, D + step, D + step + base)
        if cur == prev:
            return cur
        prev = cur
    return math.inf


def _poly_rows(images, top, cut=-1):
    """One sparse row per unknown from its image (a list of polys), keeping degrees > cut."""
    rows = []
    for image in images:
        row = {}
        for k, p in enumerate(image):
            for t, c in enumerate(p.coeffs):
                if c and t > cut:
                    row[k * (top + 1) + t] = c
        rows.append(row)
    return rows


def _intertwining_images(M, N, D):
    """Images of the unknowns ``x^e E_ab`` (slot s) under ``f -> (f_{s+1} d_s - d'_s f_s)``."""
    from .linalg import Poly
    from .mf import MFMorphism, zero_morphism

    F, n = M.field, M.n
    zero = zero_morphism(M, N)
    images = []
    for s in range(n):
        for a in range(N.rank(s)):
            for b in range(M.rank(s)):
                for e in range(D + 1):
                    comps = list(zero.comps)
                    grid = [list(r) for r in comps[s].entries]
                    grid[a][b] = Poly.monomial(F, e)
                    comps[s] = PolyMatrix.from_rows(F, grid, comps[s].cols)
                    f = MFMorphism(M, N, comps)
                    out = []
                    for t in range(n):
                        diff = f.comps[(t + 1) % n] @ M.d(t) - N.d(t) @ f.comps[t]
                        out.extend(e2 for row in diff.entries for e2 in row)
                    images.append(out)
    return images


def _null_images(M, N, E):
    """Images ``counit_j(N) ∘ phi ∘ unit_{j-1}(M)`` for ``phi = x^e E_cd``, flattened."""
    from .linalg import Poly
    from .mf import MFMorphism, compose, counit, unit

    F, n = M.field, M.n
    images = []
    for j in range(n):
        src = (j - 1) % n
        u = unit(M, src)          # M -> P^j_{M_{j-1}}
        c = counit(N, j)          # P^j_{N_j} -> N
        for a in range(N.rank(j)):
            for b in range(M.rank(src)):
                for e in range(E + 1):
                    grid = [[Poly.zero(F)] * M.rank(src) for _ in range(N.rank(j))]
                    grid[a][b] = Poly.monomial(F, e)
                    phi = PolyMatrix.from_rows(F, grid, M.rank(src))
                    lifted = MFMorphism(u.target, c.source, [phi] * n)
                    h = compose(c, compose(lifted, u, check=False), check=False)
                    images.append([x for comp in h.comps for row in comp.entries for x in row])
    return images


def truncated_stable_hom_dim(M, N, D: int, E: int) -> int:
    """dim of degree-<=D morphisms modulo those null-homotopic via degree-<=E data."""
    F = M.field
    hom_entries = sum(N.rank(s) * M.rank(s) for s in range(M.n))
    if hom_entries == 0:
        return 0
    dmax = max(M.maps[i].max_degree() for i in range(M.n))
    dmax = max(dmax, max(N.maps[i].max_degree() for i in range(N.n)), 0)
    inter = _intertwining_images(M, N, D)
    top_i = D + dmax
    dim_v = len(inter) - _rank(F, _poly_rows(inter, top_i), len(inter[0]) * (top_i + 1))
    null = _null_images(M, N, E)
    if not null:
        return dim_v
    top_n = max((p.degree for img in null for p in img), default=0)
    top_n = max(top_n, D)
    width = len(null[0]) * (top_n + 1)
    r_all = _rank(F, _poly_rows(null, top_n), width)
    r_high = _rank(F, _poly_rows(null, top_n, cut=D), width)
    return dim_v - (r_all - r_high)


@dataclass
class OracleResult:
    dimension: int
    degrees: tuple
    values: tuple

    def to_dict(self):
        return {"dimension": self.dimension, "degrees": list(self.degrees), "values": list(self.values)}


def oracle_stable_hom_dim(M, N, D: int | None = None) -> OracleResult:
    """Stable Hom dimension by truncation, accepted when two successive degrees agree."""
    dmax = max([M.maps[i].max_degree() for i in range(M.n)] + [N.maps[i].max_degree() for i in range(N.n)] + [0])
    slack = M.n * dmax + M.W.degree
    D = M.W.degree + dmax + 2 if D is None else D
    prev = truncated_stable_hom_dim(M, N, D, D + slack)
    for step in range(1, MAX_EXTRA_STEPS + 1):
        cur = truncated_stable_hom_dim(M, N, D + step, D + step + slack)
        if cur == prev:
            return OracleResult(cur, (D + step - 1, D + step), (prev, cur))
        prev = cur
    raise RuntimeError("stable Hom oracle did not stabilise")
