import random

import pytest
from hypothesis import strategies as st

from nstepmf.linalg import FieldSpec, Poly, PolyMatrix
from nstepmf.mf import Potential, factorization

Q = FieldSpec.rationals()
F101 = FieldSpec.prime(101)


def X(F=Q):
    return Poly.x(F)


def mf(k, exps_or_maps, F=Q):
    """Factorization of x^k from exponents (rank one) or nested map lists."""
    n = len(exps_or_maps)
    pot = Potential.monomial(F, k, n)
    if all(isinstance(a, int) for a in exps_or_maps):
        return factorization(pot, [[[Poly.monomial(F, a)]] for a in exps_or_maps])
    return factorization(pot, exps_or_maps)


@st.composite
def polys(draw, F=Q, max_degree=3):
    deg = draw(st.integers(-1, max_degree))
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=deg + 1, max_size=deg + 1))
    return Poly(F, coeffs)


@st.composite
def poly_matrices(draw, F=Q, max_rows=3, max_cols=3, max_degree=2):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = [[draw(polys(F, max_degree)) for _ in range(c)] for _ in range(r)]
    return PolyMatrix.from_rows(F, rows, c)


@pytest.fixture
def rng():
    return random.Random(1234)
