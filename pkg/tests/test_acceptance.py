"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Also runnable directly: ``python3 tests/test_acceptance.py``.
"""

import random
import subprocess
import sys
import tempfile
import time
from pathlib import Path

import pytest

from nstepmf import document as doc
from nstepmf.census import (classify_trivial, composition_count, enumerate_monomial, hom_table, shift_invariant,
                            twist_invariant, twisted_table)
from nstepmf.generators import random_factorization, random_morphism
from nstepmf.linalg import FieldSpec, Poly, PolyMatrix
from nstepmf.mf import (MFMorphism, Potential, compose, cone, counit, direct_sum, identity, injective_hull,
                        projective_cover, shift, shift_into_cone_of_zero, trivial_p, twist, verify_mf)
from nstepmf.oracle import oracle_stable_hom_dim
from nstepmf.rootstack import (check_four_term, cokernel, cone_splitting_check, ext1_by_resolution, ext1_cyclic,
                               isomorphic, kernel, mult_by_T, phi, skyscraper)
from nstepmf.stable import (check_witness, factors_through_projinj, is_stably_zero, stable_hom_dim,
                            stably_isomorphic_via, w_linearity_witness)

Q = FieldSpec.rationals()
F101 = FieldSpec.prime(101)
RESULTS = {}


class Criterion:
    def __init__(self, number, title, budget):
        self.number, self.title, self.budget = number, title, budget
        self.failures = []
        self.notes = ""

    def check(self, cond, what):
        if not cond and len(self.failures) < 5:
            self.failures.append(what)
        return cond

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        if elapsed > self.budget:
            self.failures.append(f"took {elapsed:.1f}s > {self.budget}s")
        status = "PASS" if not self.failures else "FAIL"
        line = f"[{status}] criterion {self.number}: {self.title} ({elapsed:.1f}s / {self.budget}s)"
        if self.notes:
            line += f" {self.notes}"
        if self.failures:
            line += " :: " + "; ".join(self.failures)
        RESULTS[self.number] = line
        print(line)
        return False


def _corpus(seed, count, ns=(2, 3, 4), max_k=4, max_rank=3, transform_degree=2):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        F = rng.choice([Q, F101])
        pot = Potential.monomial(F, rng.randint(1, max_k), rng.choice(ns))
        out.append(random_factorization(rng, pot, max_rank=max_rank, transform_degree=transform_degree))
    return out


def _identity_slots(M):
    return [PolyMatrix.identity(M.field, M.rank(j)) for j in range(M.n)]


# --- 1 ------------------------------------------------------------------------

def criterion_1():
    with Criterion(1, "Frobenius structure on 200 random factorizations", 60) as c:
        corpus = _corpus(101, 200)
        for idx, M in enumerate(corpus):
            c.check(all(r <= 3 for r in M.ranks), f"#{idx} rank bound")
            other = corpus[(idx + 1) % len(corpus)]
            objs = [M, twist(M, 1), shift(M)]
            if other.potential == M.potential:
                objs.append(direct_sum(M, other).obj)
            cov, hull = projective_cover(M), injective_hull(M)
            objs += [cov.obj, hull.obj]
            if M.rank(0) and idx % 4 == 0:
                objs.append(cone(counit(M, 0)).cone)
            for obj in objs:
                c.check(verify_mf(obj).ok, f"#{idx} constructor output fails verify_mf")
            c.check(cov.map.commutes() and hull.map.commutes(), f"#{idx} cover/hull maps do not commute")
            ident = _identity_slots(M)
            c.check([cov.map.comps[j] @ cov.splitting[j] for j in range(M.n)] == ident, f"#{idx} q s != I")
            c.check([hull.splitting[j] @ hull.map.comps[j] for j in range(M.n)] == ident, f"#{idx} r u != I")
        c.notes = f"[{len(corpus)} objects]"
    return c


# --- 2 ------------------------------------------------------------------------

def criterion_2():
    with Criterion(2, "witness soundness and W-linearity", 30) as c:
        corpus = _corpus(201, 200)
        for idx, M in enumerate(corpus):
            for i in range(M.n):
                s, cu = w_linearity_witness(M, i)
                prod = compose(cu, s)
                c.check(prod.comps == tuple(PolyMatrix.scalar(M.field, M.rank(j), M.W) for j in range(M.n)),
                        f"#{idx} c∘s != W·id at i={i}")
        rng = random.Random(202)
        witnesses = 0
        small = _corpus(203, 40, ns=(2, 3), max_k=3, max_rank=2, transform_degree=1)
        for idx, M in enumerate(small):
            N = small[(idx + 1) % len(small)]
            W = MFMorphism(M, M, [PolyMatrix.scalar(M.field, M.rank(j), M.W) for j in range(M.n)])
            cases = [W, identity(trivial_p(M.potential, idx % M.n, 1))]
            if N.potential == M.potential:
                cases.append(compose(projective_cover(N).map, random_morphism(rng, M, projective_cover(N).obj)))
                cases.append(random_morphism(rng, M, N))
            for f in cases:
                g = factors_through_projinj(f)
                if g is not None:
                    witnesses += 1
                    c.check(check_witness(f, g), f"#{idx} witness fails to re-verify")
            c.check(factors_through_projinj(W) is not None, f"#{idx} W·id not stably zero")
        c.notes = f"[{witnesses} witnesses]"
    return c


# --- 3 ------------------------------------------------------------------------

def criterion_3():
    with Criterion(3, "stable_hom_dim equals the truncated-degree oracle", 300) as c:
        rng = random.Random(301)
        pairs = 0
        while pairs < 60:
            F = rng.choice([Q, F101])
            pot = Potential.monomial(F, rng.randint(1, 3), rng.choice([2, 3]))
            M = random_factorization(rng, pot, max_rank=2)
            N = random_factorization(rng, pot, max_rank=2)
            if max(M.ranks + N.ranks) > 2:
                continue
            pipe = stable_hom_dim(M, N).dimension
            res = oracle_stable_hom_dim(M, N)
            c.check(res.values[0] == res.values[1], f"pair {pairs}: oracle did not stabilise")
            c.check(pipe == res.dimension, f"pair {pairs}: pipeline {pipe} vs oracle {res.dimension}")
            pairs += 1
        c.notes = f"[{pairs} pairs]"
    return c


# --- 4 ------------------------------------------------------------------------

def criterion_4():
    with Criterion(4, "triangulated sanity on 30 instances", 120) as c:
        rng = random.Random(401)
        for idx in range(30):
            F = rng.choice([Q, F101])
            pot = Potential.monomial(F, rng.randint(2, 3), rng.choice([2, 3]))
            M = random_factorization(rng, pot, max_rank=2, allow_cones=False)
            N = random_factorization(rng, pot, max_rank=2, allow_cones=False)
            f = random_morphism(rng, M, N)
            c.check(is_stably_zero(cone(identity(M)).cone), f"#{idx} cone(id) not stably zero")
            c.check(stably_isomorphic_via(shift_into_cone_of_zero(M, N)), f"#{idx} cone(0) comparison")
            tri = cone(f)
            c.check(verify_mf(tri.cone).ok, f"#{idx} cone fails verify_mf")
            c.check(factors_through_projinj(compose(tri.to_cone, f)) is not None, f"#{idx} N->C after f")
            c.check(factors_through_projinj(compose(tri.to_shift, tri.to_cone)) is not None, f"#{idx} C->M[1] after N->C")
    return c


# --- 5 ------------------------------------------------------------------------

def criterion_5():
    with Criterion(5, "twist/shift functoriality", 180) as c:
        for idx, M in enumerate(_corpus(501, 50)):
            T = M
            for _ in range(M.n):
                T = twist(T, 1)
            c.check(T == M, f"#{idx} twist^n != id")
        for n, k in [(2, 2), (2, 3), (3, 2), (3, 3)]:
            rep = hom_table(n, k)
            c.check(twist_invariant(rep), f"({n},{k}) twist permutation symmetry")
            c.check(twisted_table(rep) == rep.table, f"({n},{k}) table changes under twist")
            c.check(shift_invariant(rep), f"({n},{k}) table changes under shift")
    return c


# --- 6 ------------------------------------------------------------------------

def criterion_6():
    with Criterion(6, "root-stack model suite", 30) as c:
        for n in range(2, 9):
            c.check(check_four_term(n).ok, f"four-term n={n}")
            f = mult_by_T(n)
            c.check(isomorphic(kernel(f)[0], skyscraper(n, 0)), f"kernel n={n}")
            c.check(isomorphic(cokernel(f)[0], skyscraper(n, 0)), f"cokernel n={n}")
            c.check(ext1_cyclic(n, 0, 0) == 0, f"self-ext n={n}")
            c.check(cone_splitting_check(n).ok, f"cone splitting n={n}")
        for n in range(2, 7):
            for a in range(n):
                for b in range(n):
                    c.check(ext1_cyclic(n, a, b) == ext1_by_resolution(n, a, skyscraper(n, b)), f"ext ({n},{a},{b})")
        t = Poly.x(Q)
        rng = random.Random(601)
        inputs = []
        for n in (2, 3, 4):
            pot = Potential(Q, t, n)
            inputs += [trivial_p(pot, i, r) for i in range(n) for r in (1, 2)]
            inputs += [random_factorization(rng, pot, max_rank=2, allow_cones=False) for _ in range(15)]
        for idx, M in enumerate(inputs):
            image = phi(M)
            c.check(image.to_factorization() == M, f"phi roundtrip #{idx}")
            c.check(phi(twist(M, 1)) == image.shifted(1), f"phi twist #{idx}")
        c.notes = f"[{len(inputs)} phi inputs]"
    return c


# --- 7 ------------------------------------------------------------------------

def criterion_7():
    with Criterion(7, "Orlov shadow counts and classify/stably-zero agreement", 300) as c:
        checked = 0
        for n in range(2, 5):
            for k in range(1, 6):
                objs = enumerate_monomial(n, k)
                flags = [classify_trivial(m) for m in objs]
                nontrivial = flags.count(False)
                c.check(nontrivial == composition_count(n, k) - n, f"count ({n},{k})")
                if n == 2:
                    c.check(nontrivial == k - 1, f"classical count k={k}")
                for m, flag in zip(objs, flags):
                    checked += 1
                    c.check(flag == is_stably_zero(m.to_mf()), f"classify {m.exponents}")
        c.notes = f"[{checked} objects]"
    return c


# --- 8 ------------------------------------------------------------------------

def _cli(args, cwd):
    proc = subprocess.run([sys.executable, "-m", "nstepmf.cli", *args], cwd=cwd, capture_output=True)
    return proc.returncode, proc.stdout


def criterion_8():
    with Criterion(8, "CLI determinism", 60) as c:
        with tempfile.TemporaryDirectory() as tmp:
            tmpdir = Path(tmp)
            F = Q
            x = Poly.x(F)
            pot = Potential.monomial(F, 2, 2)
            M = random_factorization(random.Random(801), Potential.monomial(F, 3, 3), max_rank=2)
            (tmpdir / "m.json").write_text(doc.serialize(doc.make_document(M)))
            (tmpdir / "f.json").write_text(doc.serialize(doc.make_document(identity(M))))
            from nstepmf.mf import factorization
            (tmpdir / "bad.json").write_text(doc.serialize(doc.make_document(factorization(pot, [[[x]], [[1]]]))))
            commands = [
                ["verify", "m.json"], ["verify", "bad.json"], ["twist", "m.json", "--power", "2"],
                ["shift", "m.json"], ["cone", "f.json"], ["shom", "m.json", "--witnesses"],
                ["stablyzero", "f.json"], ["census", "--n", "3", "--k", "2"], ["rootstack-check", "--n", "3"],
                ["oracle-shom", "m.json"], ["random", "--n", "3", "--k", "2", "--seed", "7", "--field", "F101"],
            ]
            for cmd in commands:
                first = _cli(cmd, tmpdir)
                second = _cli(cmd, tmpdir)
                c.check(first == second, f"{cmd[0]} output differs between runs")
                c.check(first[1] != b"", f"{cmd[0]} produced no output")
                c.check(first[0] == (1 if cmd == ["verify", "bad.json"] else 0), f"{cmd[0]} exit {first[0]}")
                doc.parse(first[1].decode())
        c.notes = f"[{len(commands)} commands x2]"
    return c


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_acceptance(criterion, request):
    result = criterion()
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None:
        reporter.write_line("")
        reporter.write_line(RESULTS[result.number])
    assert not result.failures, RESULTS[result.number]


if __name__ == "__main__":
    failed = 0
    for crit in CRITERIA:
        failed += bool(crit().failures)
    sys.exit(1 if failed else 0)
