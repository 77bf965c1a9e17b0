"""The model root stack [A^1/mu_n]: Z/n-graded k[u]-modules with u of weight 1.

Torsion modules are finite-dimensional: a vector space per weight and the
u-action as maps ``weight w -> weight w+1``; ``T = u^n`` is the coordinate of
the base A^1.  Free modules (images of factorizations of ``W = t``) are kept
as ranks plus the k[t]-matrices of the u-action, see :func:`phi`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import FieldSpec, KMatrix, Poly
from .mf import MatrixFactorization, twist


class GradedModuleError(ValueError):
    pass


def _cyc(xs, i):
    return xs[i % len(xs)]


@dataclass(frozen=True)
class GradedModule:
    field: FieldSpec
    n: int
    dims: tuple
    action: tuple   # action[w]: dims[w+1] x dims[w]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "action", tuple(self.action))
        if self.n < 2:
            raise GradedModuleError("weights live in Z/n with n >= 2")
        if len(self.dims) != self.n or len(self.action) != self.n:
            raise GradedModuleError("need one dimension and one action map per weight")
        for w, u in enumerate(self.action):
            if u.shape != (_cyc(self.dims, w + 1), self.dims[w]):
                raise GradedModuleError(f"action at weight {w} has shape {u.shape}")

    def u_power(self, w: int, j: int) -> KMatrix:
        """``u^j`` restricted to weight ``w``."""
        out = KMatrix.identity(self.field, _cyc(self.dims, w))
        for step in range(j):
            out = _cyc(self.action, w + step) @ out
        return out

    def T_action(self, w: int) -> KMatrix:
        return self.u_power(w, self.n)

    def is_nilpotent(self) -> bool:
        total = sum(self.dims)
        return all(self.u_power(w, total + 1).is_zero() for w in range(self.n))

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def canonical_form(self) -> tuple:
        """Dimensions plus ranks of every ``u^j`` from every weight.

        For nilpotent ``u`` this determines the module up to isomorphism (it
        counts strings of each length starting at each weight).
        """
        ranks = tuple(tuple(self.u_power(w, j).rank() for j in range(1, self.total_dim + 1))
                      for w in range(self.n))
        return (self.n, self.dims, ranks)

    def shifted(self, k: int = 1) -> GradedModule:
        """Weight ``w`` of the result is weight ``w - k`` of ``self``."""
        n = self.n
        return GradedModule(self.field, n, [_cyc(self.dims, w - k) for w in range(n)],
                            [_cyc(self.action, w - k) for w in range(n)])


def isomorphic(A: GradedModule, B: GradedModule) -> bool:
    if not (A.is_nilpotent() and B.is_nilpotent()):
        raise GradedModuleError("isomorphism test is only complete for nilpotent u")
    return A.canonical_form() == B.canonical_form()


@dataclass(frozen=True)
class GradedMap:
    source: GradedModule
    target: GradedModule
    comps: tuple

    def __post_init__(self):
        object.__setattr__(self, "comps", tuple(self.comps))
        for w, c in enumerate(self.comps):
            if c.shape != (self.target.dims[w], self.source.dims[w]):
                raise GradedModuleError(f"component at weight {w} has shape {c.shape}")

    def commutes(self) -> bool:
        S, T = self.source, self.target
        return all(_cyc(self.comps, w + 1) @ S.action[w] == T.action[w] @ self.comps[w]
                   for w in range(S.n))

    def compose(self, other: GradedMap) -> GradedMap:
        """``self ∘ other``."""
        return GradedMap(other.source, self.target, [a @ b for a, b in zip(self.comps, other.comps)])


def _zero_module(field, n):
    return GradedModule(field, n, [0] * n, [KMatrix.zeros(field, 0, 0)] * n)


def cyclic_module(n: int, m: int, field: FieldSpec | None = None) -> GradedModule:
    """``(k[T]/T^n)_m``: basis ``T^j g`` in weight ``m + j``; ``u`` is zero only entering weight ``m``."""
    field = field or FieldSpec.rationals()
    if not 0 <= m < n:
        raise GradedModuleError(f"weight {m} out of range")
    action = [KMatrix(field, 1, 1, [[0 if (w + 1) % n == m else 1]]) for w in range(n)]
    return GradedModule(field, n, [1] * n, action)


def skyscraper(n: int, m: int, field: FieldSpec | None = None) -> GradedModule:
    """``k_m``: one copy of k in weight ``m``, ``u`` acting by zero."""
    field = field or FieldSpec.rationals()
    if not 0 <= m < n:
        raise GradedModuleError(f"weight {m} out of range")
    dims = [1 if w == m else 0 for w in range(n)]
    action = [KMatrix.zeros(field, dims[(w + 1) % n], dims[w]) for w in range(n)]
    return GradedModule(field, n, dims, action)


def mult_by_T(n: int, m: int = 0, field: FieldSpec | None = None) -> GradedMap:
    """``- * T: (k[T]/T^n)_{m+1} -> (k[T]/T^n)_m``, sending ``T^j g_{m+1}`` to ``T^{j+1} g_m``.

    Here ``T`` is the weight-one coordinate of the cover (the operator ``u``).
    The top basis vector ``T^{n-1} g_{m+1}``, in weight ``m``, goes to zero.
    """
    field = field or FieldSpec.rationals()
    src = cyclic_module(n, (m + 1) % n, field)
    tgt = cyclic_module(n, m, field)
    comps = [KMatrix(field, 1, 1, [[0 if w == m else 1]]) for w in range(n)]
    return GradedMap(src, tgt, comps)


def kernel(f: GradedMap) -> tuple[GradedModule, GradedMap]:
    S = f.source
    incl = [c.nullspace() for c in f.comps]
    action = []
    for w in range(S.n):
        image = S.action[w] @ incl[w]
        X = _cyc(incl, w + 1).solve(image)
        if X is None:
            raise AssertionError("kernel is not u-stable")
        action.append(X)
    K = GradedModule(S.field, S.n, [i.cols for i in incl], action)
    return K, GradedMap(K, S, incl)


def cokernel(f: GradedMap) -> tuple[GradedModule, GradedMap]:
    T = f.target
    F = T.field
    # rows of proj[w] span the annihilator of the image, so ker(proj[w]) = im(f_w)
    proj = [c.transpose().nullspace().transpose() for c in f.comps]
    action = [_cyc(proj, w + 1) @ T.action[w] @ _right_inverse(proj[w]) for w in range(T.n)]
    C = GradedModule(F, T.n, [p.rows for p in proj], action)
    return C, GradedMap(T, C, proj)


def _right_inverse(P: KMatrix) -> KMatrix:
    X = P.solve(KMatrix.identity(P.field, P.rows))
    if X is None:
        raise AssertionError("projection is not surjective")
    return X


def _exact_at(f: GradedMap | None, g: GradedMap | None, module: GradedModule) -> list:
    """Weights where ``--f--> module --g-->`` fails to be exact (``None`` = zero map)."""
    bad = []
    for w in range(module.n):
        dim = module.dims[w]
        rank_in = f.comps[w].rank() if f is not None else 0
        rank_out = g.comps[w].rank() if g is not None else 0
        composite_zero = True
        if f is not None and g is not None:
            composite_zero = (g.comps[w] @ f.comps[w]).is_zero()
        if not composite_zero or rank_in != dim - rank_out:
            bad.append(w)
    return bad


@dataclass
class CheckReport:
    ok: bool
    details: dict

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {"ok": self.ok, **self.details}


def four_term_maps(n: int, field: FieldSpec | None = None):
    """``0 -> k_0 -> (k[T]/T^n)_1 -> (k[T]/T^n)_0 -> k_0 -> 0`` as explicit graded maps."""
    field = field or FieldSpec.rationals()
    k0 = skyscraper(n, 0, field)
    mid = mult_by_T(n, 0, field)
    A, B = mid.source, mid.target
    # k_0 hits T^{n-1} g_1, which sits in weight 0
    incl = GradedMap(k0, A, [KMatrix(field, 1, 1, [[1]]) if w == 0 else KMatrix.zeros(field, 1, 0)
                             for w in range(n)])
    proj = GradedMap(B, k0, [KMatrix(field, 1, 1, [[1]]) if w == 0 else KMatrix.zeros(field, 0, 1)
                             for w in range(n)])
    return incl, mid, proj


def check_four_term(n: int, field: FieldSpec | None = None) -> CheckReport:
    if n < 2:
        raise GradedModuleError("n must be at least 2")
    incl, mid, proj = four_term_maps(n, field)
    maps_ok = all(m.commutes() for m in (incl, mid, proj))
    nodes = {
        "k0_left": _exact_at(None, incl, incl.source),
        "cyclic_1": _exact_at(incl, mid, mid.source),
        "cyclic_0": _exact_at(mid, proj, mid.target),
        "k0_right": _exact_at(proj, None, proj.target),
    }
    ok = maps_ok and not any(nodes.values())
    return CheckReport(ok, {"n": n, "maps_commute": maps_ok, "inexact_weights": nodes})


def ext1(A: GradedModule, B: GradedModule) -> int:
    """dim Ext^1(A, B) by cocycles modulo coboundaries.

    An extension is ``B ⊕ A`` with ``u = [[u_B, c], [0, u_A]]`` for arbitrary
    weight-one maps ``c``; changing the splitting by a graded linear ``h``
    moves ``c`` by ``u_B h - h u_A``.
    """
    F, n = A.field, A.n
    if B.n != n:
        raise GradedModuleError("modules over different root stacks")
    # coordinates: c_w has shape dimB[w+1] x dimA[w]; h_w has shape dimB[w] x dimA[w]
    c_off, pos = [], 0
    for w in range(n):
        c_off.append(pos)
        pos += _cyc(B.dims, w + 1) * A.dims[w]
    cocycle_dim = pos
    columns = []
    for w in range(n):
        for i in range(B.dims[w]):
            for j in range(A.dims[w]):
                vec = [F.zero] * cocycle_dim
                # u_B h contributes to c_w: (u_B[w])[:, i] e_j^T
                uB = B.action[w]
                for r in range(uB.rows):
                    vec[c_off[w] + r * A.dims[w] + j] += uB.data[r][i]
                # - h u_A contributes to c_{w-1}: -e_i (u_A[w-1])[j, :]
                wp = (w - 1) % n
                uA = A.action[wp]
                for s in range(uA.cols):
                    vec[c_off[wp] + i * A.dims[wp] + s] -= uA.data[j][s]
                columns.append(vec)
    if not columns or cocycle_dim == 0:
        return cocycle_dim
    M = KMatrix(F, cocycle_dim, len(columns), [[col[r] for col in columns] for r in range(cocycle_dim)])
    return cocycle_dim - M.rank()


def ext1_by_resolution(n: int, a: int, N: GradedModule) -> int:
    """dim Ext^1(k_a, N) from ``0 -> A(a+1) --u--> A(a) -> k_a -> 0``.

    ``Hom(A(c), N) = N_c`` and the induced map is ``u: N_a -> N_{a+1}``.
    """
    u = N.action[a % n]
    return _cyc(N.dims, a + 1) - u.rank()


def ext1_cyclic(n: int, a: int, b: int, field: FieldSpec | None = None) -> int:
    """dim Ext^1(k_a, k_b); equals 1 exactly when ``b = a + 1 mod n``."""
    if n < 2:
        raise GradedModuleError("n must be at least 2")
    return ext1(skyscraper(n, a % n, field), skyscraper(n, b % n, field))


def cone_splitting_check(n: int, field: FieldSpec | None = None) -> CheckReport:
    """Kernel and cokernel of ``- * T`` are both ``k_0`` and ``k_0`` has no self-extensions."""
    if n < 2:
        raise GradedModuleError("n must be at least 2")
    f = mult_by_T(n, 0, field)
    k0 = skyscraper(n, 0, field)
    K, _ = kernel(f)
    C, _ = cokernel(f)
    ker_ok = isomorphic(K, k0)
    coker_ok = isomorphic(C, k0)
    self_ext = ext1_cyclic(n, 0, 0, field)
    return CheckReport(ker_ok and coker_ok and self_ext == 0,
                       {"n": n, "kernel_is_k0": ker_ok, "cokernel_is_k0": coker_ok,
                        "kernel_dims": list(K.dims), "cokernel_dims": list(C.dims),
                        "ext1_k0_k0": self_ext})


def ext_table(n: int, field: FieldSpec | None = None) -> list:
    """``table[a][b] = dim Ext^1(k_a, k_b)``."""
    return [[ext1_cyclic(n, a, b, field) for b in range(n)] for a in range(n)]


@dataclass(frozen=True)
class FreeGradedModule:
    """Equivariant free module: rank and k[t]-matrix of ``u`` per weight."""

    n: int
    ranks: tuple
    action: tuple          # PolyMatrix over k[t], weight w -> w+1
    potential: object      # the Potential W = t these came from

    def shifted(self, k: int = 1) -> FreeGradedModule:
        n = self.n
        return FreeGradedModule(n, tuple(_cyc(self.ranks, w - k) for w in range(n)),
                                tuple(_cyc(self.action, w - k) for w in range(n)), self.potential)

    def generator_weights(self) -> list:
        """Weight of each minimal k[u]-generator, with multiplicity.

        Generators in weight ``w`` number ``dim_k coker([u_{w-1} | t I])``.
        """
        from .linalg import PolyMatrix, coker_kdim, hstack
        F = self.potential.field
        out = []
        for w in range(self.n):
            r = self.ranks[w]
            u = _cyc(self.action, w - 1)
            pres = hstack(F, r, u, PolyMatrix.scalar(F, r, Poly.x(F)))
            out.extend([w] * int(coker_kdim(pres)))
        return out

    def to_factorization(self) -> MatrixFactorization:
        return MatrixFactorization(self.potential, list(self.action))


def phi(M: MatrixFactorization) -> FreeGradedModule:
    """Equivariant module attached to a factorization of the coordinate ``t``.

    Slot ``i`` becomes the weight-``i`` piece and ``u`` acts by the maps.
    """
    if M.W != Poly.x(M.field):
        raise GradedModuleError("phi needs the potential W = t (the coordinate)")
    return FreeGradedModule(M.n, M.ranks, M.maps, M.potential)


def phi_twist_compatible(M: MatrixFactorization) -> bool:
    return phi(twist(M, 1)) == phi(M).shifted(1)
