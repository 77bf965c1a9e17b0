"""The category MF^n of n-step matrix factorizations with free entries over k[x].

Slots are indexed ``0..n-1``; ``maps[i]`` goes from slot ``i`` to slot
``i+1 (mod n)``.  The trivial factorization ``P^i_r`` carries ``W`` on the
arrow entering slot ``i`` and identities elsewhere, so that ``P^i`` is left
adjoint to taking the ``i``-th piece and ``P^{i+1}`` is right adjoint to it.

Admissible sequences are the graded-split ones: each slot splits as a
sequence of k[x]-modules, not necessarily compatibly with the maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

from .linalg import (FieldSpec, Poly, PolyMatrix, ShapeError, block_diag, hstack, inverse,
                     kernel_basis, solve_right, vstack)


class FactorizationError(ValueError):
    pass


@dataclass(frozen=True)
class Potential:
    field: FieldSpec
    W: Poly
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise FactorizationError(f"need n >= 2 factors, got {self.n}")
        if self.W.field != self.field:
            raise FactorizationError("potential lives over a different field")
        if self.W.degree < 1:
            raise FactorizationError("W must be a nonconstant polynomial")

    @classmethod
    def monomial(cls, field: FieldSpec, k: int, n: int) -> Potential:
        return cls(field, Poly.monomial(field, k), n)

    def with_n(self, n: int) -> Potential:
        return Potential(self.field, self.W, n)


@dataclass(frozen=True, eq=True)
class MatrixFactorization:
    potential: Potential
    maps: tuple

    def __post_init__(self):
        maps = tuple(self.maps)
        object.__setattr__(self, "maps", maps)
        n = self.potential.n
        if len(maps) != n:
            raise ShapeError(f"expected {n} maps, got {len(maps)}")
        for i, d in enumerate(maps):
            if d.field != self.potential.field:
                raise ShapeError(f"map {i} lives over {d.field}")
            nxt = maps[(i + 1) % n]
            if nxt.cols != d.rows:
                raise ShapeError(f"map {i} lands in rank {d.rows} but map {(i + 1) % n} starts at rank {nxt.cols}")

    @property
    def n(self) -> int:
        return self.potential.n

    @property
    def field(self) -> FieldSpec:
        return self.potential.field

    @property
    def W(self) -> Poly:
        return self.potential.W

    @property
    def ranks(self) -> tuple:
        return tuple(d.cols for d in self.maps)

    def rank(self, i: int) -> int:
        return self.maps[i % self.n].cols

    def d(self, i: int) -> PolyMatrix:
        return self.maps[i % self.n]

    @cached_property
    def _paths(self):
        return {}

    def path(self, start: int, steps: int) -> PolyMatrix:
        """Composite of ``steps`` consecutive maps starting at slot ``start``."""
        start %= self.n
        key = (start, steps)
        cache = self._paths
        if key not in cache:
            if steps == 0:
                cache[key] = PolyMatrix.identity(self.field, self.rank(start))
            else:
                cache[key] = self.d(start + steps - 1) @ self.path(start, steps - 1)
        return cache[key]

    def between(self, a: int, b: int) -> PolyMatrix:
        """Composite from slot ``a`` forward to slot ``b`` (identity when equal)."""
        return self.path(a, (b - a) % self.n)

    def __repr__(self):
        maps = ", ".join(repr(d) for d in self.maps)
        return f"MatrixFactorization(n={self.n}, W={self.W.format()}, ranks={self.ranks}, maps=[{maps}])"


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    failing_start: int | None = None
    message: str = ""

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {"ok": self.ok, "failing_start": self.failing_start, "message": self.message}


def verify_mf(M: MatrixFactorization) -> VerifyReport:
    """Check that every n-fold cyclic composite equals ``W * I``."""
    for i in range(M.n):
        prod = M.path(i, M.n)
        if prod != PolyMatrix.scalar(M.field, M.rank(i), M.W):
            return VerifyReport(False, i, f"composite starting at slot {i} is not W*I")
    return VerifyReport(True)


def _cyc(xs, i):
    return xs[i % len(xs)]


@dataclass(frozen=True)
class MFMorphism:
    source: MatrixFactorization
    target: MatrixFactorization
    comps: tuple

    def __post_init__(self):
        comps = tuple(self.comps)
        object.__setattr__(self, "comps", comps)
        if self.source.potential != self.target.potential:
            raise FactorizationError("morphism between factorizations of different potentials")
        if len(comps) != self.source.n:
            raise ShapeError("wrong number of components")
        for i, f in enumerate(comps):
            if f.shape != (self.target.rank(i), self.source.rank(i)):
                raise ShapeError(f"component {i} has shape {f.shape}, expected "
                                 f"{(self.target.rank(i), self.source.rank(i))}")

    @property
    def n(self):
        return self.source.n

    @property
    def field(self):
        return self.source.field

    def commutes(self) -> bool:
        """``f_{i+1} d_i == d'_i f_i`` for every slot."""
        M, N, f = self.source, self.target, self.comps
        return all(_cyc(f, i + 1) @ M.d(i) == N.d(i) @ f[i] for i in range(self.n))

    def first_noncommuting(self) -> int | None:
        M, N, f = self.source, self.target, self.comps
        for i in range(self.n):
            if _cyc(f, i + 1) @ M.d(i) != N.d(i) @ f[i]:
                return i
        return None

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.comps)

    def __add__(self, other):
        _same_hom(self, other)
        return MFMorphism(self.source, self.target, [a + b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return MFMorphism(self.source, self.target, [-a for a in self.comps])

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar):
        return MFMorphism(self.source, self.target, [scalar * a for a in self.comps])

    def __matmul__(self, other):
        return compose(self, other)


def _same_hom(f, g):
    if f.source != g.source or f.target != g.target:
        raise FactorizationError("morphisms have different source/target")


def compose(g: MFMorphism, f: MFMorphism, check: bool = True) -> MFMorphism:
    """``g ∘ f``."""
    if f.target != g.source:
        raise FactorizationError("morphisms are not composable")
    h = MFMorphism(f.source, g.target, [a @ b for a, b in zip(g.comps, f.comps)])
    if check and not h.commutes():
        raise FactorizationError("composite does not commute with the maps")
    return h


def identity(M: MatrixFactorization) -> MFMorphism:
    return MFMorphism(M, M, [PolyMatrix.identity(M.field, r) for r in M.ranks])


def zero_morphism(M: MatrixFactorization, N: MatrixFactorization) -> MFMorphism:
    return MFMorphism(M, N, [PolyMatrix.zeros(M.field, N.rank(i), M.rank(i)) for i in range(M.n)])


def zero_object(pot: Potential) -> MatrixFactorization:
    return MatrixFactorization(pot, [PolyMatrix.zeros(pot.field, 0, 0)] * pot.n)


def factorization(pot: Potential, maps) -> MatrixFactorization:
    """Build from nested lists (entries as Poly/int/coefficient lists) per map."""
    mats = []
    for m in maps:
        mats.append(m if isinstance(m, PolyMatrix) else PolyMatrix.from_rows(pot.field, m))
    return MatrixFactorization(pot, mats)


def trivial_p(pot: Potential, i: int, r: int) -> MatrixFactorization:
    """``P^i_r``: identities except ``W*I_r`` on the map entering slot ``i``."""
    if not 0 <= i < pot.n:
        raise IndexError(f"slot {i} out of range for n={pot.n}")
    if r < 0:
        raise ValueError("negative rank")
    I = PolyMatrix.identity(pot.field, r)
    Wr = PolyMatrix.scalar(pot.field, r, pot.W)
    return MatrixFactorization(pot, [Wr if j == (i - 1) % pot.n else I for j in range(pot.n)])


class DirectSum(NamedTuple):
    obj: MatrixFactorization
    inclusions: tuple
    projections: tuple


def direct_sum(*objs: MatrixFactorization) -> DirectSum:
    if not objs:
        raise ValueError("direct_sum needs at least one summand")
    pot = objs[0].potential
    if any(o.potential != pot for o in objs):
        raise FactorizationError("summands have different potentials")
    F = pot.field
    S = MatrixFactorization(pot, [block_diag(F, *(o.d(i) for o in objs)) for i in range(pot.n)])
    incs, projs = [], []
    for k, o in enumerate(objs):
        inc, proj = [], []
        for i in range(pot.n):
            before = sum(p.rank(i) for p in objs[:k])
            after = sum(p.rank(i) for p in objs[k + 1:])
            r = o.rank(i)
            blocks = [PolyMatrix.zeros(F, before, r), PolyMatrix.identity(F, r), PolyMatrix.zeros(F, after, r)]
            col = vstack(F, r, *blocks)
            inc.append(col)
            proj.append(col.transpose())
        incs.append(MFMorphism(o, S, inc))
        projs.append(MFMorphism(S, o, proj))
    return DirectSum(S, tuple(incs), tuple(projs))


def morphism_sum(maps: Sequence[MFMorphism], target_sum: DirectSum | None = None):
    """Column morphism ``M -> ⊕ N_k`` from components ``M -> N_k``."""
    src = maps[0].source
    ds = target_sum or direct_sum(*(m.target for m in maps))
    comps = [vstack(src.field, src.rank(i), *(m.comps[i] for m in maps)) for i in range(src.n)]
    return MFMorphism(src, ds.obj, comps)


def morphism_cosum(maps: Sequence[MFMorphism], source_sum: DirectSum | None = None):
    """Row morphism ``⊕ M_k -> N`` from components ``M_k -> N``."""
    tgt = maps[0].target
    ds = source_sum or direct_sum(*(m.source for m in maps))
    comps = [hstack(tgt.field, tgt.rank(i), *(m.comps[i] for m in maps)) for i in range(tgt.n)]
    return MFMorphism(ds.obj, tgt, comps)


def counit(M: MatrixFactorization, i: int) -> MFMorphism:
    """``P^i_{r_i} -> M``; slot ``j`` component is the composite of maps from ``i`` to ``j``."""
    P = trivial_p(M.potential, i % M.n, M.rank(i))
    return MFMorphism(P, M, [M.between(i, j) for j in range(M.n)])


def unit(M: MatrixFactorization, i: int) -> MFMorphism:
    """``M -> P^{i+1}_{r_i}``; slot ``j`` component is the composite of maps from ``j`` to ``i``."""
    P = trivial_p(M.potential, (i + 1) % M.n, M.rank(i))
    return MFMorphism(M, P, [M.between(j, i) for j in range(M.n)])


class Cover(NamedTuple):
    obj: MatrixFactorization
    map: MFMorphism
    splitting: tuple


def projective_cover(M: MatrixFactorization) -> Cover:
    """``q: ⊕_i P^i_{r_i} -> M`` with a slotwise section ``s`` (``q_j s_j = I``).

    The section only splits the underlying graded modules; it does not
    commute with the maps.
    """
    n = M.n
    counits = [counit(M, i) for i in range(n)]
    ds = direct_sum(*(c.source for c in counits))
    q = morphism_cosum(counits, ds)
    section = tuple(ds.inclusions[j].comps[j] for j in range(n))
    return Cover(ds.obj, q, section)


def injective_hull(M: MatrixFactorization) -> Cover:
    """``u: M -> ⊕_i P^{i+1}_{r_i}`` with a slotwise retraction ``r`` (``r_j u_j = I``)."""
    n = M.n
    units = [unit(M, i) for i in range(n)]
    ds = direct_sum(*(u.target for u in units))
    u = morphism_sum(units, ds)
    retraction = tuple(ds.projections[j].comps[j] for j in range(n))
    return Cover(ds.obj, u, retraction)


def twist(M: MatrixFactorization, k: int = 1) -> MatrixFactorization:
    """Rotate slots to the right: new slot ``i`` is old slot ``i - k``."""
    n = M.n
    return MatrixFactorization(M.potential, [M.d(i - k) for i in range(n)])


def twist_morphism(f: MFMorphism, k: int = 1) -> MFMorphism:
    n = f.n
    return MFMorphism(twist(f.source, k), twist(f.target, k), [_cyc(f.comps, i - k) for i in range(n)])


class GradedSplitCokernel(NamedTuple):
    obj: MatrixFactorization
    proj: MFMorphism
    complement: tuple  # slotwise basis (columns) of the chosen complement of im(mono)


def graded_split_cokernel(mono: MFMorphism, retraction: Sequence[PolyMatrix]) -> GradedSplitCokernel:
    """Cokernel of a graded-split mono.

    The complement of ``im(mono_i)`` is the kernel of ``retraction_i``; since
    ``retraction_i mono_i = I`` the square matrix ``[mono_i | K_i]`` is
    unimodular and its inverse gives the projection onto the complement.
    """
    F, n = mono.field, mono.n
    N = mono.target
    for i in range(n):
        if retraction[i] @ mono.comps[i] != PolyMatrix.identity(F, mono.source.rank(i)):
            raise FactorizationError(f"retraction fails to split the mono at slot {i}")
    K, P = [], []
    for i in range(n):
        Ki = kernel_basis(retraction[i])
        m = mono.comps[i]
        basis = hstack(F, N.rank(i), m, Ki)
        if basis.cols != N.rank(i):
            raise AssertionError("complement has the wrong rank")
        inv = inverse(basis)
        K.append(Ki)
        P.append(inv.block(m.cols, inv.rows, 0, inv.cols))
    C = MatrixFactorization(N.potential, [_cyc(P, i + 1) @ N.d(i) @ K[i] for i in range(n)])
    return GradedSplitCokernel(C, MFMorphism(N, C, P), tuple(K))


class ShiftData(NamedTuple):
    obj: MatrixFactorization
    hull: Cover
    proj: MFMorphism
    complement: tuple


def shift_data(M: MatrixFactorization) -> ShiftData:
    hull = injective_hull(M)
    cok = graded_split_cokernel(hull.map, hull.splitting)
    return ShiftData(cok.obj, hull, cok.proj, cok.complement)


def shift(M: MatrixFactorization) -> MatrixFactorization:
    """``M[1]``: cokernel of the canonical hull ``M -> ⊕ P^{i+1}_{r_i}``.

    Other choices of hull give stably isomorphic objects only.
    """
    return shift_data(M).obj


class Triangle(NamedTuple):
    cone: MatrixFactorization
    to_cone: MFMorphism     # N -> C
    to_shift: MFMorphism    # C -> M[1]
    shift: ShiftData
    pushout: DirectSum      # I(M) ⊕ N
    cokernel: GradedSplitCokernel


def cone(f: MFMorphism) -> Triangle:
    """Cone via the pushout of ``M -> I(M)`` along ``f``.

    ``C = (I(M) ⊕ N) / {(u a, -f a)}``; the maps are ``N -> C`` (inclusion then
    projection) and ``C -> M[1]`` induced by ``I(M) -> M[1]``.
    """
    M, N = f.source, f.target
    F, n = M.field, M.n
    sh = shift_data(M)
    hull = sh.hull
    ds = direct_sum(hull.obj, N)
    mono = morphism_sum([hull.map, -f], ds)
    retraction = [hstack(F, M.rank(i), hull.splitting[i], PolyMatrix.zeros(F, M.rank(i), N.rank(i)))
                  for i in range(n)]
    cok = graded_split_cokernel(mono, retraction)
    to_cone = compose(cok.proj, ds.inclusions[1])
    # C -> M[1]: (proj_shift, 0) restricted to the complement basis
    comps = []
    for i in range(n):
        rows = hstack(F, sh.obj.rank(i), sh.proj.comps[i], PolyMatrix.zeros(F, sh.obj.rank(i), N.rank(i)))
        comps.append(rows @ cok.complement[i])
    to_shift = MFMorphism(cok.obj, sh.obj, comps)
    return Triangle(cok.obj, to_cone, to_shift, sh, ds, cok)


def shift_into_cone_of_zero(M: MatrixFactorization, N: MatrixFactorization) -> MFMorphism:
    """Canonical comparison ``N ⊕ M[1] -> cone(0: M -> N)``."""
    tri = cone(zero_morphism(M, N))
    sh, cok = tri.shift, tri.cokernel
    incl_I = tri.pushout.inclusions[0]
    # the class of v in I(M)/M goes to the class of (v, 0)
    from_shift = MFMorphism(sh.obj, tri.cone,
                            [cok.proj.comps[i] @ incl_I.comps[i] @ sh.complement[i] for i in range(M.n)])
    return morphism_cosum([tri.to_cone, from_shift])


@dataclass(frozen=True)
class AdmissibilityReport:
    ok: bool
    slot: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def ses_admissible(mono: MFMorphism, epi: MFMorphism) -> AdmissibilityReport:
    """Is ``0 -> A -> B -> C -> 0`` an admissible (slotwise split) exact sequence?"""
    if mono.target != epi.source:
        raise ShapeError("mono and epi are not composable")
    F = mono.field
    for i in range(mono.n):
        if not (epi.comps[i] @ mono.comps[i]).is_zero():
            return AdmissibilityReport(False, i, "epi ∘ mono is nonzero")
    for i in range(mono.n):
        e, m = epi.comps[i], mono.comps[i]
        if solve_right(e, PolyMatrix.identity(F, e.rows)) is None:
            return AdmissibilityReport(False, i, "epi has no section over k[x]")
        if kernel_basis(m).cols:
            return AdmissibilityReport(False, i, "mono is not injective")
        ker = kernel_basis(e)
        if ker.cols and solve_right(m, ker) is None:
            return AdmissibilityReport(False, i, "kernel of epi is larger than the image of mono")
    return AdmissibilityReport(True)


@dataclass(frozen=True)
class GradedSplitSES:
    """Admissible short exact sequence with explicit slotwise splittings."""

    mono: MFMorphism
    epi: MFMorphism
    retraction: tuple
    section: tuple

    def __post_init__(self):
        F = self.mono.field
        for i in range(self.mono.n):
            if self.retraction[i] @ self.mono.comps[i] != PolyMatrix.identity(F, self.mono.source.rank(i)):
                raise FactorizationError(f"retraction fails at slot {i}")
            if self.epi.comps[i] @ self.section[i] != PolyMatrix.identity(F, self.epi.target.rank(i)):
                raise FactorizationError(f"section fails at slot {i}")
        if not ses_admissible(self.mono, self.epi):
            raise FactorizationError("sequence is not exact")

    @classmethod
    def from_mono(cls, mono: MFMorphism, retraction) -> GradedSplitSES:
        cok = graded_split_cokernel(mono, retraction)
        return cls(mono, cok.proj, tuple(retraction), cok.complement)
