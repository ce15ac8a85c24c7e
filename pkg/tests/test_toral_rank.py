import pytest

from cokahler_toolkit.algebra.cohomology import GroupActionSpec, cohomology
from cokahler_toolkit.algebra.free import kodaira_thurston, projective_space, torus
from cokahler_toolkit.algebra.toral_rank import (cokahler_trc_pipeline, max_exterior_rank, toral_bound_report,
                                                 toral_rank_bound, trc_check)
from cokahler_toolkit.report import PASS


@pytest.mark.parametrize("n", [0, 1, 2])
def test_odd_torus_is_tight(n):
    """H(T^(2n+1)) has r = 2n + 1 and dimension exactly 2^r"""
    report = trc_check(torus(2 * n + 1))
    assert report.verdict == PASS
    assert report.data["r"] == 2 * n + 1
    assert report.data["slack"] == 0


def test_projective_space_has_no_torus_witnesses():
    report = trc_check(projective_space(2))
    assert report.verdict == PASS
    assert report.data["r"] == 0
    assert report.data["slack"] == 2


def test_kodaira_thurston_exterior_rank():
    """e1*e2 is exact, so no three degree-1 classes multiply to a nonzero class"""
    certificate = max_exterior_rank(cohomology(kodaira_thurston()))
    assert certificate.r == 2
    assert certificate.exterior
    assert not certificate.product_class.is_zero()


def test_certificate_of_torus_spans_exterior_algebra():
    certificate = max_exterior_rank(torus(3))
    assert certificate.span_dimension == 8
    assert certificate.image_rank == 1
    assert certificate.witness_names() == ["x1", "x2", "x3"]


def test_toral_bound_of_examples(t2, t2_rotation, s2xs2, s2xs2_swap):
    assert toral_rank_bound(t2, t2_rotation) == 1
    assert toral_rank_bound(s2xs2, s2xs2_swap) == 1


def test_toral_bound_without_action(t2):
    """With the trivial action both degree-1 classes survive and x*y != 0"""
    assert toral_rank_bound(t2, GroupActionSpec.trivial(t2)) == 3


def test_reeb_circle_specialization(t2, t2_rotation):
    report = toral_bound_report(t2, t2_rotation)
    assert report.verdict == PASS
    assert report.data["b1"] == 1
    assert report.data["reeb_circle"]
    assert report.data["bound"] == 1


def test_pipeline_on_swapped_spheres(s2xs2, s2xs2_swap):
    report = cokahler_trc_pipeline(s2xs2, s2xs2_swap, s2xs2.element({"a": 1, "b": 1}))
    assert report.verdict == PASS, report.render_text()
    assert report.data["r"] == 1
    assert report.data["slack"] == 4
    assert report.betti == [1, 1, 1, 1, 1, 1]


def test_pipeline_on_rotated_torus(t2, t2_rotation):
    report = cokahler_trc_pipeline(t2, t2_rotation, t2.basis_element("x*y"), cross_check=True)
    assert report.verdict == PASS, report.render_text()
    names = [entry.name for entry in report.checks]
    assert any(name.startswith("property B of the circle") for name in names)
    assert names[-1] == "eta is a cohomological 1-torus"
