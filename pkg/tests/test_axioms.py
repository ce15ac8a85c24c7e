import random

import pytest

from cokahler_toolkit.algebra import linalg
from cokahler_toolkit.algebra.axioms import verify_algebra_axioms
from cokahler_toolkit.algebra.free import FreeGradedAlgebra, Presentation, build_from_presentation, kodaira_thurston
from cokahler_toolkit.algebra.graded import ChainComplexAlgebra, Element, GradedAlgebra, GradedBasis
from cokahler_toolkit.report import FAIL, PASS


def _random_relation(free, rng, degree):
    monomials = free.monomials(degree)
    poly = {}
    for m in rng.sample(monomials, min(len(monomials), 2)):
        poly = free.add(poly, {m: linalg.ONE}, rng.choice([-2, -1, 1, 3]))
    return poly


def test_named_algebras_satisfy_axioms(t2, s2xs2):
    for algebra in (t2, s2xs2, kodaira_thurston()):
        report = verify_algebra_axioms(algebra)
        assert report.verdict == PASS, report.render_text()


@pytest.mark.parametrize("seed", range(6))
def test_random_presented_algebras(seed):
    """Quotients of free algebras by random homogeneous relations are associative and commutative"""
    rng = random.Random(seed)
    generators = [(f"g{i}", rng.choice([1, 2, 2, 3])) for i in range(rng.randint(2, 3))]
    free = FreeGradedAlgebra(generators)
    relations = []
    for _ in range(rng.randint(1, 2)):
        degree = rng.randint(2, 4)
        if free.monomials(degree):
            relations.append(_random_relation(free, rng, degree))
    C = build_from_presentation(Presentation(list(free.generators), relations, {}, 5, f"R{seed}"))
    report = verify_algebra_axioms(C)
    assert report.verdict == PASS, report.render_text()


@pytest.mark.parametrize("seed", range(6))
def test_random_two_stage_cdgas(seed):
    """Closed degree-1 generators plus generators whose differential is a random quadratic"""
    rng = random.Random(100 + seed)
    closed = [f"x{i}" for i in range(rng.randint(2, 3))]
    free = FreeGradedAlgebra([(name, 1) for name in closed] + [("y", 1)])
    pairs = [(a, b) for i, a in enumerate(closed) for b in closed[i + 1:]]
    differential = {}
    for a, b in rng.sample(pairs, rng.randint(1, len(pairs))):
        differential = free.add(differential, free.product_of_names([a, b]), rng.randint(1, 3))
    C = build_from_presentation(Presentation(list(free.generators), [], {"y": differential}, 4, f"C{seed}"))
    report = verify_algebra_axioms(C)
    assert report.verdict == PASS, report.render_text()
    assert {entry.name for entry in report.checks} >= {"d-squared", "leibniz"}


def test_non_commutative_table_fails():
    """A table with x*y = y*x for odd x, y breaks graded commutativity"""
    basis = GradedBasis([["1"], ["x", "y"], ["xy"]])
    xy = Element({"xy": 1}, 2)
    A = GradedAlgebra(basis, {("x", "y"): xy, ("y", "x"): xy}, "bad", complete=True)
    report = verify_algebra_axioms(A)
    entry = next(e for e in report.checks if e.name == "graded-commutativity")
    assert entry.status == FAIL
    assert entry.witness == ["x", "y"]


def test_d_squared_failure_reports_witness():
    basis = GradedBasis([["1"], ["a"], ["b"], ["c"]])
    A = GradedAlgebra(basis, {}, "chain", complete=True)
    C = ChainComplexAlgebra(A, {"a": Element({"b": 1}, 2), "b": Element({"c": 1}, 3)})
    report = verify_algebra_axioms(C)
    entry = next(e for e in report.checks if e.name == "d-squared")
    assert entry.status == FAIL
    assert entry.witness == ["a"]
