import pytest

from cokahler_toolkit.algebra.cohomology import GroupActionSpec
from cokahler_toolkit.algebra.errors import AlgebraInputError, ModelConstructionError
from cokahler_toolkit.algebra.free import FreeGradedAlgebra, presented_algebra, projective_space, sphere, torus
from cokahler_toolkit.algebra.graded import AlgebraMap
from cokahler_toolkit.algebra.lefschetz import mapping_torus_algebra
from cokahler_toolkit.algebra.sullivan import (SullivanAlgebra, circle_model, compare_models,
                                               compare_presentations, find_isomorphism,
                                               minimal_model_of_formal, model_fingerprint,
                                               model_tensor_split_check, tensor_structure_check,
                                               verify_quasi_iso)
from cokahler_toolkit.report import FAIL, INCONCLUSIVE, PASS


@pytest.fixture
def example1(t2, t2_rotation):
    return mapping_torus_algebra(t2, t2_rotation, t2.basis_element("x*y"))


@pytest.fixture
def example2(s2xs2, s2xs2_swap):
    return mapping_torus_algebra(s2xs2, s2xs2_swap, s2xs2.element({"a": 1, "b": 1}))


def test_model_of_rotated_torus(example1):
    """eta, a degree-2 class and v with d(v) = g^2"""
    model, model_map = minimal_model_of_formal(example1.algebra, 3)
    assert model.generators == [("eta", 1), ("g2_1", 2), ("v3_1", 3)]
    assert model.format_differential() == {"eta": "0", "g2_1": "0", "v3_1": "g2_1^2"}
    assert model.is_minimal()
    assert verify_quasi_iso(model_map, 3).verdict == PASS


def test_model_of_swapped_spheres(example2):
    model, model_map = minimal_model_of_formal(example2.algebra, 5)
    assert [degree for _, degree in model.generators] == [1, 2, 5]
    assert model.format_differential()["v5_1"] == "g2_1^3"
    report = verify_quasi_iso(model_map, 5)
    assert report.verdict == PASS, report.render_text()


def test_model_of_projective_space():
    model, _ = minimal_model_of_formal(projective_space(2), 5)
    assert model.generators == [("u", 2), ("v5_1", 5)]
    assert model.format_differential()["v5_1"] == "u^3"


def test_model_of_torus_is_itself():
    model, model_map = minimal_model_of_formal(torus(3), 3)
    assert model.generators == [("x1", 1), ("x2", 1), ("x3", 1)]
    assert not model.differential
    assert verify_quasi_iso(model_map, 3).verdict == PASS


def test_truncated_model_is_inconclusive_at_its_degree():
    """Modelling CP^2 only through degree 4 misses v with d(v) = u^3"""
    model, model_map = minimal_model_of_formal(projective_space(2), 4)
    assert model.generators == [("u", 2)]
    report = verify_quasi_iso(model_map, 6)
    top = report.checks[-1]
    assert top.name == "H^6"
    assert top.status == INCONCLUSIVE
    assert top.detail == "truncation-unreliable"
    assert report.verdict == INCONCLUSIVE


def test_model_degree_beyond_incomplete_truncation_is_rejected():
    H = presented_algebra([("a", 2)], [], 4)
    with pytest.raises(AlgebraInputError, match="exceeds the truncation degree"):
        minimal_model_of_formal(H, 6)


def test_model_degree_must_be_positive(t2):
    with pytest.raises(AlgebraInputError, match="at least 1"):
        minimal_model_of_formal(t2, 0)


def test_non_convergence_is_reported(example1):
    with pytest.raises(ModelConstructionError) as info:
        minimal_model_of_formal(example1.algebra, 3, max_rounds=0)
    assert info.value.degree == 3
    assert info.value.classes == ["g2_1^2"]


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_models_of_reordered_bases_are_isomorphic(example2, t2, seed):
    """Reshuffling the basis changes the construction but not the model up to isomorphism"""
    trivial = mapping_torus_algebra(t2, GroupActionSpec.trivial(t2), t2.basis_element("x*y"))
    for algebra, N in ((example2.algebra, 5), (trivial.algebra, 3)):
        first, _ = minimal_model_of_formal(algebra, N)
        second, _ = minimal_model_of_formal(algebra, N, seed=seed)
        assert model_fingerprint(first, N) == model_fingerprint(second, N)
        report = compare_models(first, second, N, seed=seed)
        assert report.verdict == PASS, report.render_text()


def test_different_models_have_different_fingerprints(example1):
    model, _ = minimal_model_of_formal(example1.algebra, 3)
    other, _ = minimal_model_of_formal(torus(3), 3)
    report = compare_models(model, other, 3)
    assert report.verdict == FAIL
    assert report.checks[0].witness == {"field": "generator_counts", "degree": 1, "left": 1, "right": 3}
    assert find_isomorphism(model, other, 3).status == FAIL


def test_generators_are_well_ordered_on_construction():
    """v is declared before the generator its differential needs"""
    model = SullivanAlgebra([("v", 3), ("g", 2)], {"v": {(0, 2): 1}}, 4)
    assert model.generators == [("g", 2), ("v", 3)]
    assert model.format_differential() == {"g": "0", "v": "g^2"}


def test_dependency_cycle_is_rejected():
    free = FreeGradedAlgebra([("x", 1), ("y", 1), ("z", 1)])
    differential = {"x": free.product_of_names(["y", "z"]), "y": free.product_of_names(["x", "z"])}
    with pytest.raises(AlgebraInputError, match="Circular dependency"):
        SullivanAlgebra(free.generators, differential, 2)


def test_d_squared_is_checked():
    """d(q) = p^2 and d(r) = p*q give d(d(r)) = p^3"""
    free = FreeGradedAlgebra([("p", 2), ("q", 3), ("r", 4)])
    differential = {"q": free.product_of_names(["p", "p"]), "r": free.product_of_names(["p", "q"])}
    with pytest.raises(AlgebraInputError, match="d\\(d\\(r\\)\\)"):
        SullivanAlgebra(free.generators, differential, 6)


def test_linear_differential_is_not_minimal():
    free = FreeGradedAlgebra([("a", 1), ("b", 2)])
    model = SullivanAlgebra(free.generators, {"a": free.generator("b")}, 3)
    assert model.minimality_witness() == "a"


def test_tensor_with_circle_qualifies_collisions():
    model = circle_model(3)
    product = model.tensor(circle_model(3))
    assert [name for name, _ in product.generators] == ["S1.eta", "S1'.eta"]
    assert product.truncation == 3


def test_split_check_examples(example1, example2):
    for model in (example1, example2):
        report = model_tensor_split_check(model.base_inclusion(), model.eta, model.top_degree)
        assert report.verdict == PASS, report.render_text()
        assert tensor_structure_check(model.base_inclusion(), model.eta, model.top_degree).verdict == PASS


def test_split_check_needs_a_tensor_product_not_just_its_betti_numbers():
    """t*w = 0 and a new class z in degree 3: Betti numbers (1, 1, 1, 1) as for S2 x S1"""
    H_KG = sphere(2, "w")
    H_M = presented_algebra([("t", 1), ("w", 2), ("z", 3)], [[(1, ["t", "w"])]], 3, label="H_M")
    inclusion = AlgebraMap.from_generator_images(H_KG, H_M, {"w": H_M.generators["w"]})
    report = model_tensor_split_check(inclusion, H_M.generators["t"], 3)
    assert report.checks[0].status == PASS
    assert report.verdict == FAIL
    failure = report.first_failure()
    assert failure.name == "H_M^p = H_KG^p + eta * H_KG^(p-1)"
    assert failure.witness == {"degree": 3, "dimension": 1, "summands": 1, "rank": 0}
    assert not any(entry.name.startswith("M_") for entry in report.checks)


def test_presentations_of_one_mapping_torus_agree(t2, t2_rotation):
    """The rotation and its inverse have the same invariant algebra"""
    inverse = GroupActionSpec.from_generator_images(t2, {"x": -t2.generators["y"], "y": t2.generators["x"]}, 4)
    report = compare_presentations(t2, t2_rotation, t2, inverse, 2)
    assert report.verdict == PASS, report.render_text()


def test_presentations_with_different_invariants_differ(t2, t2_rotation):
    report = compare_presentations(t2, t2_rotation, t2, GroupActionSpec.trivial(t2), 2)
    assert report.verdict == FAIL
