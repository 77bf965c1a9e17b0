"""Census of rank-one monomial factorizations of ``W = x^k``.

A rank-one object is determined by its exponents ``(a_0, ..., a_{n-1})`` with
``sum a_i = k``.  Exactly ``n`` of them (one part equal to ``k``) are the trivial
objects ``P^i_1``; the rest are tabulated by stable Hom dimension.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .linalg import FieldSpec, Poly, PolyMatrix
from .mf import MatrixFactorization, Potential, shift, twist
from .stable import is_stably_zero, stable_hom_dim

DEFAULT_BUDGET = 200


class CensusBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class MonomialFactorization:
    exponents: tuple
    k: int

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(self.exponents))
        if len(self.exponents) < 2:
            raise ValueError("need at least two exponents")
        if any(a < 0 for a in self.exponents) or sum(self.exponents) != self.k:
            raise ValueError(f"exponents {self.exponents} do not sum to {self.k}")

    @property
    def n(self) -> int:
        return len(self.exponents)

    def rotated(self, k: int = 1) -> MonomialFactorization:
        """Exponents of ``twist(M, k)``: new ``a_i`` is old ``a_{i-k}``."""
        n = self.n
        return MonomialFactorization(tuple(self.exponents[(i - k) % n] for i in range(n)), self.k)

    def to_mf(self, field_: FieldSpec | None = None) -> MatrixFactorization:
        F = field_ or FieldSpec.rationals()
        pot = Potential.monomial(F, self.k, self.n)
        return MatrixFactorization(pot, [PolyMatrix.from_rows(F, [[Poly.monomial(F, a)]]) for a in self.exponents])

    def label(self) -> str:
        return "(" + ",".join(map(str, self.exponents)) + ")"


def _check_bounds(n, k):
    if n < 2:
        raise ValueError("n must be at least 2")
    if k < 1:
        raise ValueError("k must be at least 1")


def composition_count(n: int, k: int) -> int:
    return math.comb(k + n - 1, n - 1)


def enumerate_monomial(n: int, k: int) -> list[MonomialFactorization]:
    """All compositions of ``k`` into ``n`` parts, lexicographically from ``(k, 0, ..., 0)``."""
    _check_bounds(n, k)
    out = []
    for bars in itertools.combinations(range(k + n - 1), n - 1):
        # stars and bars; reverse so the order is descending lex
        bounds = (-1,) + bars + (k + n - 1,)
        out.append(tuple(bounds[i + 1] - bounds[i] - 1 for i in range(n)))
    out.sort(reverse=True)
    return [MonomialFactorization(e, k) for e in out]


def classify_trivial(m: MonomialFactorization) -> bool:
    """Rank-one objects are trivial exactly when all of ``W`` sits on one arrow."""
    return m.k in m.exponents


def twist_orbits(objs) -> list[list[MonomialFactorization]]:
    """Partition under exponent rotation, orbits in order of first appearance."""
    seen, orbits = set(), []
    for m in objs:
        if m.exponents in seen:
            continue
        orbit, cur = [], m
        while cur.exponents not in seen:
            seen.add(cur.exponents)
            orbit.append(cur)
            cur = cur.rotated(1)
        orbits.append(orbit)
    return orbits


@dataclass
class CensusReport:
    n: int
    k: int
    field: FieldSpec
    objects: list
    trivial: list
    orbits: list
    nontrivial: list
    table: list
    stably_zero_agrees: bool = True
    summary: dict = field(default_factory=dict)

    def index(self, m: MonomialFactorization) -> int:
        return [o.exponents for o in self.nontrivial].index(m.exponents)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "objects": [list(o.exponents) for o in self.objects],
            "trivial": list(self.trivial),
            "orbits": [[list(o.exponents) for o in orb] for orb in self.orbits],
            "nontrivial": [list(o.exponents) for o in self.nontrivial],
            "table": self.table,
            "classify_agrees_with_stably_zero": self.stably_zero_agrees,
            "summary": self.summary,
        }

    def text_table(self) -> str:
        labels = [o.label() for o in self.nontrivial]
        if not labels:
            return f"n={self.n} k={self.k}: no nontrivial objects\n"
        width = max(len(s) for s in labels) + 1
        cell = max(3, max(len(str(v)) for row in self.table for v in row) + 1)
        lines = [" " * width + "".join(s.rjust(max(cell, len(s) + 1)) for s in labels)]
        for lab, row in zip(labels, self.table):
            lines.append(lab.ljust(width) + "".join(str(v).rjust(max(cell, len(s) + 1))
                                                    for v, s in zip(row, labels)))
        return "\n".join(lines) + "\n"


def hom_table(n: int, k: int, field_: FieldSpec | None = None, budget: int = DEFAULT_BUDGET,
              cross_check: bool = True) -> CensusReport:
    """Pairwise stable Hom dimensions among the nontrivial monomial objects."""
    _check_bounds(n, k)
    F = field_ or FieldSpec.rationals()
    size = n * composition_count(n, k)
    if size > budget:
        raise CensusBudgetError(f"census for n={n}, k={k} has size {size} > budget {budget}")
    objs = enumerate_monomial(n, k)
    trivial = [classify_trivial(m) for m in objs]
    agrees = True
    if cross_check:
        agrees = all(t == is_stably_zero(m.to_mf(F)) for m, t in zip(objs, trivial))
    nontrivial = [m for m, t in zip(objs, trivial) if not t]
    mfs = [m.to_mf(F) for m in nontrivial]
    table = [[stable_hom_dim(A, B).dimension for B in mfs] for A in mfs]
    orbits = twist_orbits(objs)
    summary = {
        "objects": len(objs),
        "trivial": sum(trivial),
        "nontrivial": len(nontrivial),
        "expected_nontrivial": composition_count(n, k) - n,
        "orbit_sizes": [len(o) for o in orbits],
    }
    return CensusReport(n, k, F, objs, trivial, orbits, nontrivial, table, agrees, summary)


def twist_invariant(report: CensusReport) -> bool:
    """``entry(M, N) == entry(twist M, twist N)``, using that twist permutes the objects."""
    perm = [report.index(m.rotated(1)) for m in report.nontrivial]
    size = len(perm)
    return all(report.table[i][j] == report.table[perm[i]][perm[j]] for i in range(size) for j in range(size))


def shift_invariant(report: CensusReport) -> bool:
    """Recompute the table on shifted objects and compare entrywise."""
    shifted = [shift(m.to_mf(report.field)) for m in report.nontrivial]
    table = [[stable_hom_dim(A, B).dimension for B in shifted] for A in shifted]
    return table == report.table


def twisted_table(report: CensusReport, power: int = 1) -> list:
    """The table recomputed on ``twist^power`` of every object (no permutation shortcut)."""
    mfs = [twist(m.to_mf(report.field), power) for m in report.nontrivial]
    return [[stable_hom_dim(A, B).dimension for B in mfs] for A in mfs]
