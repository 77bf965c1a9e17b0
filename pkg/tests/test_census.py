import math

import pytest

from nstepmf.census import (CensusBudgetError, MonomialFactorization, classify_trivial, enumerate_monomial,
                            hom_table, shift_invariant, twist_invariant, twist_orbits, twisted_table)
from nstepmf.oracle import oracle_stable_hom_dim
from nstepmf.stable import is_stably_zero


def exps(objs):
    return [m.exponents for m in objs]


def test_enumeration_examples():
    assert exps(enumerate_monomial(2, 2)) == [(2, 0), (1, 1), (0, 2)]
    assert len(enumerate_monomial(3, 1)) == 3
    assert len(enumerate_monomial(3, 2)) == 6
    with pytest.raises(ValueError):
        enumerate_monomial(1, 2)
    with pytest.raises(ValueError):
        enumerate_monomial(2, 0)


def test_enumeration_count():
    for n in range(2, 5):
        for k in range(1, 6):
            objs = enumerate_monomial(n, k)
            assert len(objs) == math.comb(k + n - 1, n - 1)
            assert len(set(exps(objs))) == len(objs)
            assert exps(objs) == sorted(exps(objs), reverse=True)


def test_classify_examples():
    assert classify_trivial(MonomialFactorization((3, 0, 0), 3))
    assert not classify_trivial(MonomialFactorization((1, 1, 0), 2))
    assert not is_stably_zero(MonomialFactorization((1, 1, 0), 2).to_mf())
    assert classify_trivial(MonomialFactorization((0, 0, 0, 2), 2))


def test_twist_orbit_examples():
    orbits = twist_orbits(enumerate_monomial(3, 2))
    as_sets = [set(exps(o)) for o in orbits]
    assert {(1, 1, 0), (0, 1, 1), (1, 0, 1)} in as_sets
    orbits2 = twist_orbits(enumerate_monomial(2, 2))
    assert [(1, 1)] in [exps(o) for o in orbits2]
    assert {(2, 0), (0, 2)} in [set(exps(o)) for o in orbits2]
    for n in range(2, 5):
        for k in range(1, 5):
            for o in twist_orbits(enumerate_monomial(n, k)):
                assert n % len(o) == 0


def test_hom_table_examples():
    r = hom_table(2, 2)
    assert exps(r.nontrivial) == [(1, 1)] and r.table == [[1]]
    r = hom_table(2, 3)
    assert exps(r.nontrivial) == [(2, 1), (1, 2)]
    mfs = [m.to_mf() for m in r.nontrivial]
    assert r.table == [[oracle_stable_hom_dim(a, b).dimension for b in mfs] for a in mfs]
    r = hom_table(3, 2)
    assert len(r.nontrivial) == 3
    assert twist_invariant(r)
    assert twisted_table(r) == r.table


def test_orlov_count_n2():
    for k in range(1, 6):
        assert hom_table(2, k).summary["nontrivial"] == k - 1


def test_budget():
    with pytest.raises(CensusBudgetError):
        hom_table(5, 5)
    with pytest.raises(CensusBudgetError):
        hom_table(3, 3, budget=10)


def test_shift_invariance_small():
    assert shift_invariant(hom_table(2, 3))


def test_report_text_and_dict():
    r = hom_table(3, 2)
    d = r.to_dict()
    assert d["summary"]["nontrivial"] == 3
    assert "(1,1,0)" in r.text_table()
