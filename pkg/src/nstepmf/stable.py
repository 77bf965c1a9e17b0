"""Decisions in the stable category: null-homotopy, stable Hom, stable isomorphism.

A morphism ``f: M -> N`` is stably zero iff it factors through the canonical
cover ``q: P(N) = ⊕_j P^j_{N_j} -> N`` (any factorization through a
projective-injective lifts along the admissible epi ``q``).  Since ``P^j_X``
is right adjoint to the ``(j-1)``-th piece, maps ``M -> P^j_X`` are the same as
module maps ``phi_j: M_{j-1} -> X``, and ``q∘g`` has slot-``s`` component

    sum_j  N.between(j, s) @ phi_j @ M.between(s, j-1)

which is linear in the unknown ``phi``.  Every question below is a linear
system over k[x] solved with Hermite forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .linalg import Poly, PolyMatrix, coker_kdim, kernel_basis, smith_normal_form, solve_right
from .mf import (FactorizationError, MatrixFactorization, MFMorphism, compose, cone, counit, identity,
                 projective_cover, trivial_p)


def _hom_layout(M: MatrixFactorization, N: MatrixFactorization):
    """Index of entry ``(slot, a, b)`` of a morphism ``M -> N`` in the flat vector."""
    offsets, pos = [], 0
    for s in range(M.n):
        offsets.append(pos)
        pos += N.rank(s) * M.rank(s)
    return offsets, pos


def morphism_to_vector(f: MFMorphism) -> list:
    return [e for comp in f.comps for row in comp.entries for e in row]


def vector_to_morphism(M, N, vec) -> MFMorphism:
    offsets, _ = _hom_layout(M, N)
    comps = []
    for s in range(M.n):
        r, c = N.rank(s), M.rank(s)
        base = offsets[s]
        comps.append(PolyMatrix._raw(M.field, r, c, [[vec[base + a * c + b] for b in range(c)] for a in range(r)]))
    return MFMorphism(M, N, comps)


def intertwining_system(M: MatrixFactorization, N: MatrixFactorization) -> PolyMatrix:
    """Matrix ``A`` with ``A @ vec(f) == 0`` iff ``f`` commutes with the maps."""
    F, n = M.field, M.n
    offsets, nvars = _hom_layout(M, N)
    zero = Poly.zero(F)
    rows = []
    for s in range(n):
        t = (s + 1) % n
        dM, dN = M.d(s), N.d(s)
        for a in range(N.rank(t)):
            for b in range(M.rank(s)):
                row = [zero] * nvars
                # f_t[a, c] * dM[c, b]
                for c in range(M.rank(t)):
                    coeff = dM[c, b]
                    if coeff.coeffs:
                        idx = offsets[t] + a * M.rank(t) + c
                        row[idx] = row[idx] + coeff
                # - dN[a, c] * f_s[c, b]
                for c in range(N.rank(s)):
                    coeff = dN[a, c]
                    if coeff.coeffs:
                        idx = offsets[s] + c * M.rank(s) + b
                        row[idx] = row[idx] - coeff
                rows.append(row)
    return PolyMatrix._raw(F, len(rows), nvars, rows)


def _phi_layout(M, N):
    """Unknown ``phi_j: M_{j-1} -> N_j`` entries, flattened over ``j``."""
    offsets, pos = [], 0
    for j in range(M.n):
        offsets.append(pos)
        pos += N.rank(j) * M.rank(j - 1)
    return offsets, pos


def null_homotopy_system(M: MatrixFactorization, N: MatrixFactorization) -> PolyMatrix:
    """Matrix ``B`` with ``B @ vec(phi) == vec(q∘g_phi)``.

    Its columns generate the morphisms ``M -> N`` that factor through a
    projective-injective.
    """
    F, n = M.field, M.n
    hoff, hdim = _hom_layout(M, N)
    poff, pdim = _phi_layout(M, N)
    zero = Poly.zero(F)
    grid = [[zero] * pdim for _ in range(hdim)]
    for j in range(n):
        src = (j - 1) % n
        for s in range(n):
            L = N.between(j, s)          # N_j -> N_s
            R = M.between(s, src)        # M_s -> M_{j-1}
            for a in range(N.rank(s)):
                for b in range(M.rank(s)):
                    row = grid[hoff[s] + a * M.rank(s) + b]
                    for c in range(N.rank(j)):
                        l = L[a, c]
                        if not l.coeffs:
                            continue
                        for d in range(M.rank(src)):
                            r = R[d, b]
                            if r.coeffs:
                                idx = poff[j] + c * M.rank(src) + d
                                row[idx] = row[idx] + l * r
    return PolyMatrix._raw(F, hdim, pdim, grid)


def _witness_from_phi(M, N, phi_vec) -> MFMorphism:
    """Assemble ``g: M -> P(N)`` from the adjoint data ``phi``."""
    F, n = M.field, M.n
    poff, _ = _phi_layout(M, N)
    cover = projective_cover(N)
    phis = []
    for j in range(n):
        src = (j - 1) % n
        r, c = N.rank(j), M.rank(src)
        phis.append(PolyMatrix._raw(F, r, c, [[phi_vec[poff[j] + a * c + b] for b in range(c)] for a in range(r)]))
    comps = []
    for s in range(n):
        blocks = [phis[j] @ M.between(s, (j - 1) % n) for j in range(n)]
        rows = [row for b in blocks for row in b.entries]
        comps.append(PolyMatrix._raw(F, len(rows), M.rank(s), rows))
    return MFMorphism(M, cover.obj, comps)


def factors_through_projinj(f: MFMorphism) -> MFMorphism | None:
    """A witness ``g: M -> P(N)`` with ``q∘g == f``, or ``None`` if ``f`` is not stably zero."""
    M, N = f.source, f.target
    B = null_homotopy_system(M, N)
    target = PolyMatrix._raw(M.field, B.rows, 1, [[e] for e in morphism_to_vector(f)])
    sol = solve_right(B, target)
    if sol is None:
        return None
    return _witness_from_phi(M, N, sol.column(0))


def is_stably_zero(M: MatrixFactorization) -> bool:
    return factors_through_projinj(identity(M)) is not None


def stably_isomorphic_via(f: MFMorphism) -> bool:
    """``f`` is a stable isomorphism iff its cone vanishes stably."""
    return is_stably_zero(cone(f).cone)


def w_linearity_witness(M: MatrixFactorization, i: int = 0) -> tuple[MFMorphism, MFMorphism]:
    """``(s, c)`` with ``c∘s == W * id_M`` and ``c`` the counit ``P^i_{r_i} -> M``.

    ``s`` has slot-``j`` component the composite of ``((i-j-1) mod n) + 1``
    maps from ``j`` to ``i``, which is ``W`` at slot ``i`` itself.
    """
    n = M.n
    i %= n
    P = trivial_p(M.potential, i, M.rank(i))
    s = MFMorphism(M, P, [M.path(j, ((i - j - 1) % n) + 1) for j in range(n)])
    return s, counit(M, i)


@dataclass
class StableHomReport:
    source: str
    target: str
    hom_rank: int                 # rank of Hom_MF(M, N) as a free k[x]-module
    null_generators: int          # generators of the null-homotopic submodule
    invariants: list              # nonunit Smith invariants of the stable Hom module
    dimension: int | float        # dim_k of the stable Hom space
    ambient_dimension: int | float = math.inf
    witnesses: list = field(default_factory=list)

    def to_dict(self):
        return {
            "source": self.source,
            "target": self.target,
            "hom_rank": self.hom_rank,
            "null_generators": self.null_generators,
            "invariants": [list(map(str, d.coeffs)) if hasattr(d, "coeffs") else d for d in self.invariants],
            "dimension": "infinite" if self.dimension == math.inf else self.dimension,
            "ambient_dimension": "infinite" if self.ambient_dimension == math.inf else self.ambient_dimension,
        }


def hom_basis(M: MatrixFactorization, N: MatrixFactorization) -> list[MFMorphism]:
    """A k[x]-basis of ``Hom_MF(M, N)``."""
    H = kernel_basis(intertwining_system(M, N))
    return [vector_to_morphism(M, N, col) for col in H.columns()]


def stable_hom_dim(M: MatrixFactorization, N: MatrixFactorization, with_witnesses: bool = False,
                   source_name: str = "M", target_name: str = "N") -> StableHomReport:
    """k-dimension of ``Hom(M, N)`` modulo maps through projective-injectives."""
    if M.potential != N.potential:
        raise FactorizationError("stable Hom between different potentials")
    H = kernel_basis(intertwining_system(M, N))
    B = null_homotopy_system(M, N)
    Z = solve_right(H, B)
    if Z is None:
        raise AssertionError("null-homotopic map outside Hom; intertwining system is inconsistent")
    dim = coker_kdim(Z)
    if dim == math.inf:
        raise AssertionError("stable Hom is infinite-dimensional although W != 0")
    snf = smith_normal_form(Z)
    invariants = [d for d in snf.invariants if d.coeffs and not d.is_unit()]
    report = StableHomReport(source_name, target_name, H.cols, B.cols, invariants, dim,
                             ambient_dimension=math.inf if H.cols else 0)
    if with_witnesses:
        report.witnesses = _stable_basis(M, N, H, snf)
    return report


def _stable_basis(M, N, H, snf) -> list[MFMorphism]:
    """Morphisms whose classes form a k-basis of the stable Hom space."""
    from .linalg import inverse
    F = M.field
    Uinv = inverse(snf.U)
    size = H.cols
    out = []
    for idx in range(size):
        d = snf.invariants[idx] if idx < len(snf.invariants) else Poly.zero(F)
        if d.is_unit():
            continue
        for e in range(d.degree):
            col = Uinv.column(idx)
            coords = [Poly.monomial(F, e) * c for c in col]
            vec = [sum((H[r, t] * coords[t] for t in range(size)), Poly.zero(F)) for r in range(H.rows)]
            out.append(vector_to_morphism(M, N, vec))
    return out


def stable_end_dim(M: MatrixFactorization) -> int:
    return stable_hom_dim(M, M).dimension


def check_witness(f: MFMorphism, g: MFMorphism) -> bool:
    """Re-verify ``q∘g == f`` by exact multiplication."""
    q = projective_cover(f.target).map
    return compose(q, g).comps == f.comps
