"""Random factorizations and morphisms for tests and the ``random`` subcommand.

Objects are sums of monomial rank-one factorizations (occasionally a cone of
a random map between two of them) conjugated slotwise by random unimodular
matrices, so the maps are no longer diagonal.
"""

from __future__ import annotations

import random

from .linalg import FieldSpec, Poly, PolyMatrix
from .mf import MatrixFactorization, MFMorphism, Potential, cone, direct_sum, zero_object


def random_composition(rng: random.Random, k: int, n: int) -> tuple:
    cuts = sorted(rng.randint(0, k) for _ in range(n - 1))
    bounds = [0] + cuts + [k]
    return tuple(bounds[i + 1] - bounds[i] for i in range(n))


def monomial_factorization(pot: Potential, exponents) -> MatrixFactorization:
    F = pot.field
    if Poly.monomial(F, sum(exponents)) != pot.W:
        raise ValueError("exponents do not multiply to W")
    return MatrixFactorization(pot, [PolyMatrix.from_rows(F, [[Poly.monomial(F, a)]]) for a in exponents])


def _random_scalar(rng, F):
    if F.p is None:
        return F.elem(rng.choice([1, -1, 2, -2, 3]))
    return F.elem(rng.randint(1, F.p - 1))


def random_unimodular(rng: random.Random, F: FieldSpec, r: int, max_degree: int = 1, steps: int = 2):
    """``(G, G^{-1})``: a permutation times scaled elementary operations."""
    G = [[Poly.one(F) if i == j else Poly.zero(F) for j in range(r)] for i in range(r)]
    Ginv = [row[:] for row in G]
    if r == 0:
        return PolyMatrix.from_rows(F, [], 0), PolyMatrix.from_rows(F, [], 0)
    for _ in range(steps):
        kind = rng.random()
        if r >= 2 and kind < 0.6:
            a, b = rng.sample(range(r), 2)
            c = Poly.monomial(F, rng.randint(0, max_degree), _random_scalar(rng, F))
            # row_a += c*row_b on G ; col_b -= c*col_a on Ginv
            G[a] = [ga + c * gb for ga, gb in zip(G[a], G[b])]
            for row in Ginv:
                row[b] = row[b] - c * row[a]
        elif r >= 2 and kind < 0.8:
            a, b = rng.sample(range(r), 2)
            G[a], G[b] = G[b], G[a]
            for row in Ginv:
                row[a], row[b] = row[b], row[a]
        else:
            a = rng.randrange(r)
            s = _random_scalar(rng, F)
            G[a] = [g.scale(s) for g in G[a]]
            inv = F.inv(s)
            for row in Ginv:
                row[a] = row[a].scale(inv)
    return PolyMatrix.from_rows(F, G, r), PolyMatrix.from_rows(F, Ginv, r)


def conjugate(M: MatrixFactorization, gs) -> MatrixFactorization:
    """``d_i -> G_{i+1} d_i G_i^{-1}`` for pairs ``gs[i] = (G_i, G_i^{-1})``."""
    n = M.n
    return MatrixFactorization(M.potential, [gs[(i + 1) % n][0] @ M.d(i) @ gs[i][1] for i in range(n)])


def random_factorization(rng: random.Random, pot: Potential, max_rank: int = 3,
                         transform_degree: int = 1, allow_cones: bool = True) -> MatrixFactorization:
    """Random object of ``MF^n(k[x], x^k)`` with all slot ranks ``<= max_rank``."""
    F, n = pot.field, pot.n
    k = pot.W.degree
    if Poly.monomial(F, k) != pot.W:
        raise ValueError("random_factorization expects a monomial potential x^k")
    if allow_cones and n <= 3 and max_rank >= n and rng.random() < 0.3:
        A = monomial_factorization(pot, random_composition(rng, k, n))
        B = monomial_factorization(pot, random_composition(rng, k, n))
        base = cone(random_morphism(rng, A, B)).cone
    else:
        r = rng.randint(1, max_rank)
        parts = [monomial_factorization(pot, random_composition(rng, k, n)) for _ in range(r)]
        base = direct_sum(*parts).obj if parts else zero_object(pot)
    gs = [random_unimodular(rng, F, base.rank(i), transform_degree) for i in range(n)]
    return conjugate(base, gs)


def random_morphism(rng: random.Random, M: MatrixFactorization, N: MatrixFactorization,
                    terms: int = 3) -> MFMorphism:
    """Small random k[x]-combination of a Hom basis (zero if Hom vanishes)."""
    from .stable import hom_basis

    basis = hom_basis(M, N)
    F = M.field
    f = MFMorphism(M, N, [PolyMatrix.zeros(F, N.rank(i), M.rank(i)) for i in range(M.n)])
    if not basis:
        return f
    for _ in range(terms):
        b = rng.choice(basis)
        c = Poly.monomial(F, rng.randint(0, 1), _random_scalar(rng, F))
        f = f + c * b
    return f
