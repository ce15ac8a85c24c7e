import pytest

from cokahler_toolkit.algebra.errors import AlgebraInputError
from cokahler_toolkit.algebra.free import (FreeGradedAlgebra, Presentation, build_from_presentation,
                                           exterior_algebra, kodaira_thurston, presentation_of,
                                           presented_algebra, projective_space)
from cokahler_toolkit.algebra.graded import Element, GradedAlgebra, GradedBasis, tensor_product


def test_presented_algebra_basis(s2xs2):
    """Q[a, b]/(a^2, b^2) with |a| = |b| = 2 through degree 4"""
    assert s2xs2.dims() == [1, 0, 2, 0, 1]
    assert list(s2xs2.names(2)) == ["a", "b"]
    assert list(s2xs2.names(4)) == ["a*b"]
    assert s2xs2.complete


def test_exterior_line():
    assert exterior_algebra(["t"]).dims() == [1, 1]


def test_odd_generators_anticommute(t2):
    x, y = t2.basis_element("x"), t2.basis_element("y")
    assert t2.multiply(x, y) == t2.basis_element("x*y")
    assert t2.multiply(y, x) == -t2.basis_element("x*y")
    assert t2.multiply(x, x).is_zero()


def test_relation_kills_square(s2xs2):
    a = s2xs2.basis_element("a")
    assert s2xs2.multiply(a, a).is_zero()


def test_square_of_sum(s2xs2):
    """(a + b)^2 = 2ab once a^2 = b^2 = 0"""
    omega = s2xs2.element({"a": 1, "b": 1})
    assert s2xs2.multiply(omega, omega) == s2xs2.element({"a*b": 2})


def test_product_above_truncation_is_flagged():
    """Q[a] cut at degree 2 cannot say what a * a is"""
    A = presented_algebra([("a", 2)], [], 2)
    assert not A.complete
    product = A.multiply(A.basis_element("a"), A.basis_element("a"))
    assert product.is_zero()
    assert product.truncated


def test_product_above_top_of_complete_algebra_is_exact(s2xs2):
    product = s2xs2.multiply(s2xs2.basis_element("a*b"), s2xs2.basis_element("a"))
    assert product.is_zero()
    assert not product.truncated


def test_foreign_basis_element_is_rejected(t2):
    with pytest.raises(AlgebraInputError, match="not a basis element"):
        t2.multiply(Element({"z": 1}, 1), t2.basis_element("x"))


def test_relation_above_truncation_is_rejected():
    free = FreeGradedAlgebra([("a", 2)])
    presentation = Presentation(list(free.generators), [free.polynomial([(1, ["a", "a", "a"])])], {}, 4)
    with pytest.raises(AlgebraInputError, match="above the truncation degree"):
        build_from_presentation(presentation)


def test_inconsistent_differential_is_rejected():
    """d(p) = q and d(q) = p^2 give d(d(p)) = p^2"""
    free = FreeGradedAlgebra([("p", 2), ("q", 3)])
    differential = {"p": free.generator("q"), "q": free.product_of_names(["p", "p"])}
    presentation = Presentation(list(free.generators), [], differential, 4)
    with pytest.raises(AlgebraInputError, match="Inconsistent differential"):
        build_from_presentation(presentation)


def test_kodaira_thurston_cochains_are_complete():
    C = kodaira_thurston()
    assert C.algebra.dims() == [1, 4, 6, 4, 1]
    assert C.algebra.complete
    assert C.d(C.algebra.basis_element("e4")) == C.algebra.element({"e1*e2": 1})


def test_projective_space_is_complete():
    H = projective_space(3)
    assert H.top_degree() == 6
    assert H.dims()[:7] == [1, 0, 1, 0, 1, 0, 1]
    assert H.complete


def test_tensor_with_circle_convolves_betti_numbers():
    """H(CP^1) (x) L(eta) has Betti numbers (1, 1, 1, 1)"""
    product = tensor_product(projective_space(1), exterior_algebra(["eta"], label="S1"))
    assert product.dims()[:4] == [1, 1, 1, 1]
    assert product.top_degree() == 3
    assert product.complete


def test_tensor_koszul_sign(t2):
    """(1 (x) eta)(x (x) 1) = -(x (x) eta) since both factors are odd"""
    circle = exterior_algebra(["eta"], label="S1")
    product = tensor_product(t2, circle)
    eta, x = product.basis_element("eta"), product.basis_element("x")
    assert product.multiply(x, eta) == product.basis_element("x*eta")
    assert product.multiply(eta, x) == -product.basis_element("x*eta")


def test_tensor_with_unit_algebra(s2xs2):
    unit = GradedAlgebra(GradedBasis([["1"]]), {}, "Q", complete=True)
    product = tensor_product(s2xs2, unit)
    assert product.dims() == s2xs2.dims()
    assert product.complete


def test_tensor_qualifies_colliding_names(t2):
    product = tensor_product(t2, exterior_algebra(["x"], label="S1"))
    assert "T2.x" in product.basis
    assert "S1.x" in product.basis
    assert product.dims() == [1, 3, 3, 1]


def test_tensor_max_degree_breaks_completeness(t2):
    product = tensor_product(t2, t2, max_degree=2)
    assert product.truncation == 2
    assert not product.complete


def test_presentation_of_recovers_generators_and_relations(s2xs2):
    presentation = presentation_of(s2xs2)
    assert [name for name, _ in presentation.generators] == ["a", "b"]
    rebuilt = build_from_presentation(presentation).algebra
    assert rebuilt.dims() == s2xs2.dims()
    a, b = rebuilt.generators["a"], rebuilt.generators["b"]
    assert rebuilt.multiply(a, b) == rebuilt.basis_element("a*b")


def test_presentation_of_names_non_identifier_generators():
    """A basis element named '(a+b)' becomes the generator g2_1"""
    basis = GradedBasis([["1"], [], ["(a+b)"]])
    A = GradedAlgebra(basis, {}, "B", complete=True)
    presentation = presentation_of(A)
    assert presentation.generators == [("g2_1", 2)]
    assert presentation.realization["g2_1"] == A.basis_element("(a+b)")


def test_reordered_keeps_structure(t2):
    shuffled = t2.reordered(3)
    assert shuffled.dims() == t2.dims()
    assert set(shuffled.names(1)) == set(t2.names(1))
    x, y = shuffled.basis_element("x"), shuffled.basis_element("y")
    assert shuffled.multiply(y, x) == -shuffled.basis_element("x*y")
