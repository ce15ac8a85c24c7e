import random
from math import gcd

import pytest
from sympy import QQ

from cokahler_toolkit.algebra.cohomology import GroupActionSpec, cohomology
from cokahler_toolkit.algebra.errors import AlgebraInputError
from cokahler_toolkit.algebra.free import kodaira_thurston, presented_algebra, projective_space, torus
from cokahler_toolkit.algebra.graded import combination
from cokahler_toolkit.algebra.lefschetz import (CoKahlerModel, betti_relation_checks, cokahler_lefschetz,
                                                cokahler_lefschetz_check, hard_lefschetz_check,
                                                invariant_kahler_check, mapping_torus_algebra)
from cokahler_toolkit.report import FAIL, PASS


def _torus_with_action(r, kind):
    """T^r with the trivial action, -id, or the rotation pairing x(2i-1) -> x(2i) -> -x(2i-1)"""
    T = torus(r)
    gens = T.generators
    if kind == "trivial":
        return T, GroupActionSpec.trivial(T)
    if kind == "minus":
        images = {name: -x for name, x in gens.items()}
        return T, GroupActionSpec.from_generator_images(T, images, 2)
    images = {}
    for i in range(1, r + 1, 2):
        images[f"x{i}"] = gens[f"x{i + 1}"]
        images[f"x{i + 1}"] = -gens[f"x{i}"]
    return T, GroupActionSpec.from_generator_images(T, images, 4)


def _torus_symplectic(T, r):
    return T.element({f"x{i}*x{i + 1}": 1 for i in range(1, r + 1, 2)})


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hard_lefschetz_projective_space(n):
    H = projective_space(n)
    report = hard_lefschetz_check(H, H.basis_element("u"), n)
    assert report.verdict == PASS
    assert report.cohomologically_kahlerian
    assert len(report.entries) == n + 1


@pytest.mark.parametrize("n", [1, 2])
def test_hard_lefschetz_even_torus(n):
    T = torus(2 * n)
    report = hard_lefschetz_check(T, _torus_symplectic(T, 2 * n), n)
    assert report.verdict == PASS


def test_kodaira_thurston_is_not_kahler():
    """omega = [e1 e3 + e2 e4]: omega^2 is a volume form but omega * H^1 has rank 2 < 3"""
    C = kodaira_thurston()
    ring = cohomology(C)
    omega = ring.class_of(C.algebra.element({"e1*e3": 1, "e2*e4": 1}))
    report = hard_lefschetz_check(ring, omega, 2)
    assert report.entries[0].status == PASS
    failure = report.first_failure()
    assert failure.p == 1
    assert failure.rank == 2
    assert failure.domain_dim == 3
    assert report.verdict == FAIL


def test_degenerate_omega_fails(s2xs2):
    report = hard_lefschetz_check(s2xs2, s2xs2.basis_element("a"), 2)
    assert report.first_failure().p == 0


def test_omega_must_have_degree_two(t2):
    with pytest.raises(AlgebraInputError, match="degree 2"):
        hard_lefschetz_check(t2, t2.basis_element("x"), 1)


def test_invariant_kahler_examples(t2, t2_rotation, s2xs2, s2xs2_swap):
    report = invariant_kahler_check(t2, t2_rotation, t2.basis_element("x*y"), 1)
    assert report.verdict == PASS
    assert report.betti == [1, 0, 1]
    report = invariant_kahler_check(s2xs2, s2xs2_swap, s2xs2.element({"a": 1, "b": 1}), 2, cross_check=True)
    assert report.verdict == PASS
    assert report.betti == [1, 0, 1, 0, 1]


def test_omega_must_be_invariant(s2xs2, s2xs2_swap):
    with pytest.raises(AlgebraInputError, match="not invariant"):
        invariant_kahler_check(s2xs2, s2xs2_swap, s2xs2.basis_element("a"), 2)


def test_mapping_torus_of_rotated_torus(t2, t2_rotation):
    model = mapping_torus_algebra(t2, t2_rotation, t2.basis_element("x*y"))
    assert model.n == 1
    assert model.algebra.dims()[:4] == [1, 1, 1, 1]
    assert model.algebra.complete
    assert model.top_degree == 3
    assert model.base.dims() == [1, 0, 1]


def test_mapping_torus_of_swapped_spheres(s2xs2, s2xs2_swap):
    model = mapping_torus_algebra(s2xs2, s2xs2_swap, s2xs2.element({"a": 1, "b": 1}))
    assert model.algebra.dims() == [1, 1, 1, 1, 1, 1]
    report = cokahler_lefschetz_check(model)
    assert report.verdict == PASS
    assert report.entries[1].matrix == [[2]]


def test_cokahler_lefschetz_swaps_the_summands(t2, t2_rotation):
    model = mapping_torus_algebra(t2, t2_rotation, t2.basis_element("x*y"))
    for p in range(model.n + 1):
        entry = cokahler_lefschetz(model, p)
        assert entry.iso
        assert entry.antidiagonal


def test_cokahler_lefschetz_degree_range(t2, t2_rotation):
    model = mapping_torus_algebra(t2, t2_rotation, t2.basis_element("x*y"))
    with pytest.raises(AlgebraInputError, match="0..1"):
        cokahler_lefschetz(model, 2)


@pytest.mark.parametrize("kind", ["trivial", "minus", "rotation"])
def test_contraction_squares_to_zero(kind):
    T, g = _torus_with_action(4, kind)
    model = mapping_torus_algebra(T, g, _torus_symplectic(T, 4))
    M = model.algebra
    for name in M.basis.all_names():
        x = M.basis_element(name)
        assert model.contract(model.contract(x)).is_zero()
        x1, x2 = model.eta_split(x)
        assert x1 + x2 == x
        assert model.contract(x1).is_zero()
        assert x2 == M.multiply(model.eta, model.contract(x))


def test_contraction_of_eta_multiples(t2, t2_rotation):
    model = mapping_torus_algebra(t2, t2_rotation, t2.basis_element("x*y"))
    M = model.algebra
    b = M.basis_element("x*y")
    assert model.contract(M.multiply(model.eta, b)) == b
    assert model.contract(b).is_zero()
    assert model.contract(model.eta) == M.unit_element()


def test_omega_with_eta_component_is_rejected(t2):
    model = mapping_torus_algebra(t2, GroupActionSpec.trivial(t2), t2.basis_element("x*y"))
    M = model.algebra
    with pytest.raises(AlgebraInputError, match="eta-component"):
        CoKahlerModel(M, model.omega + M.basis_element("x*eta"), model.eta, 1, model.base_names)


def _betti_cases():
    cases = []
    for r in (2, 4):
        for kind in ("trivial", "minus", "rotation"):
            cases.append((f"T{r}-{kind}", r, kind))
    for n in (1, 2, 3):
        cases.append((f"CP{n}-trivial", n, "projective"))
    cases.append(("S2xS2-swap", 2, "swap"))
    cases.append(("S2xS2-trivial", 2, "spheres"))
    return cases


@pytest.mark.parametrize("label,size,kind", _betti_cases(), ids=[c[0] for c in _betti_cases()])
def test_betti_relations(label, size, kind, s2xs2, s2xs2_swap):
    """Betti relations of co-Kahler models hold for every mapping torus built here"""
    if kind == "projective":
        H = projective_space(size)
        model = mapping_torus_algebra(H, GroupActionSpec.trivial(H), H.basis_element("u"), size)
    elif kind in ("swap", "spheres"):
        g = s2xs2_swap if kind == "swap" else GroupActionSpec.trivial(s2xs2)
        model = mapping_torus_algebra(s2xs2, g, s2xs2.element({"a": 1, "b": 1}))
    else:
        T, g = _torus_with_action(size, kind)
        model = mapping_torus_algebra(T, g, _torus_symplectic(T, size))
    report = betti_relation_checks(model)
    assert report.verdict == PASS, report.render_text()
    betti = report.betti
    assert betti[0] == betti[-1] == 1
    assert betti == betti[::-1]


def test_betti_relations_detect_broken_models(t2):
    """A model whose degrees disagree with b_s = bbar_s + bbar_(s-1) is reported"""
    model = mapping_torus_algebra(t2, GroupActionSpec.trivial(t2), t2.basis_element("x*y"))
    model.base_names[1] = model.base_names[1][:1]
    report = betti_relation_checks(model)
    assert report.verdict == FAIL


def _lefschetz_input(case):
    """(H, omega, n) for a named algebra"""
    if case == "KT":
        C = kodaira_thurston()
        ring = cohomology(C)
        return ring, ring.class_of(C.algebra.element({"e1*e3": 1, "e2*e4": 1})), 2
    if case.startswith("CP"):
        n = int(case[2:])
        H = projective_space(n)
        return H, H.basis_element("u"), n
    r = int(case[1:])
    T = torus(r)
    return T, _torus_symplectic(T, r), r // 2


@pytest.mark.parametrize("c", [QQ(3), QQ(-1), QQ(1, 2), QQ(-7, 5)], ids=["3", "-1", "1/2", "-7/5"])
@pytest.mark.parametrize("case,expected", [("CP2", PASS), ("CP3", PASS), ("T2", PASS), ("T4", PASS),
                                           ("KT", FAIL)])
def test_hard_lefschetz_is_invariant_under_scaling(case, expected, c):
    H, omega, n = _lefschetz_input(case)
    report = hard_lefschetz_check(H, omega, n)
    scaled = hard_lefschetz_check(H, omega.scaled(c), n)
    assert report.verdict == scaled.verdict == expected
    assert [entry.rank for entry in scaled.entries] == [entry.rank for entry in report.entries]


# images of (x, y) as coefficients over (x, y), and the order of the block
_SYMPLECTIC_BLOCKS = {
    "identity": (((1, 0), (0, 1)), 1),
    "minus": (((-1, 0), (0, -1)), 2),
    "rotation": (((0, 1), (-1, 0)), 4),
    "order-3": (((0, 1), (-1, -1)), 3),
    "order-6": (((0, 1), (-1, 1)), 6),
}


def _random_fibre(rng):
    """T^2, T^4 or CP^1 x T^2 with a random finite action preserving omega

    Each plane (x(2i-1), x(2i)) gets a determinant-one block of finite order; on T^4
    two equal blocks may also be composed with the swap of the planes.
    """
    kind = rng.choice(["T2", "T4", "CP1xT2"])
    if kind == "CP1xT2":
        H = presented_algebra([("u", 2), ("x1", 1), ("x2", 1)], [[(1, ["u", "u"])]], 4, label="CP1xT2")
        planes = [("x1", "x2")]
    else:
        r = int(kind[1])
        H = torus(r)
        planes = [(f"x{i}", f"x{i + 1}") for i in range(1, r + 1, 2)]
    gens = H.generators
    blocks = [rng.choice(sorted(_SYMPLECTIC_BLOCKS)) for _ in planes]
    swap = len(planes) == 2 and blocks[0] == blocks[1] and rng.random() < 0.5
    targets = planes[::-1] if swap else planes
    images = dict(gens)
    order = 2 if swap else 1
    for (x, y), (tx, ty), block in zip(planes, targets, blocks):
        (image_x, image_y), block_order = _SYMPLECTIC_BLOCKS[block]
        images[x] = gens[tx].scaled(image_x[0]) + gens[ty].scaled(image_x[1])
        images[y] = gens[tx].scaled(image_y[0]) + gens[ty].scaled(image_y[1])
        order = order * block_order // gcd(order, block_order)
    g = GroupActionSpec.from_generator_images(H, images, order)
    omega = combination((1, H.multiply(gens[x], gens[y])) for x, y in planes)
    if "u" in gens:
        omega = omega + gens["u"]
    return H, g, H.element(omega.terms)


@pytest.mark.parametrize("seed", range(12))
def test_contraction_and_eta_split_on_random_mapping_tori(seed):
    H, g, omega = _random_fibre(random.Random(seed))
    model = mapping_torus_algebra(H, g, omega, cross_check=True)
    M = model.algebra
    assert M.total_dimension() <= 64
    for name in M.basis.all_names():
        x = M.basis_element(name)
        assert model.contract(model.contract(x)).is_zero()
        x1, x2 = model.eta_split(x)
        assert x1 + x2 == x
        assert model.contract(x1).is_zero()
        assert x2 == M.multiply(model.eta, model.contract(x))
    for p in range(1, M.truncation + 1):
        for b in model.base_names[p]:
            for c in model.base_names[p - 1]:
                eta_c = M.multiply(model.eta, M.basis_element(c))
                assert model.eta_split(M.basis_element(b) + eta_c) == (M.basis_element(b), eta_c)
