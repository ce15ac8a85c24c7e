"""Cohomological torus certificates and toral rank bounds"""

from dataclasses import dataclass, field
from itertools import combinations

from . import linalg
from .cohomology import invariant_subalgebra
from .derivations import property_b_check
from .free import exterior_algebra
from .graded import Element, underlying
from .lefschetz import invariant_kahler_check, mapping_torus_algebra
from ..report import Report


@dataclass
class TorusCertificate:
    """r degree-1 classes whose product is nonzero

    Attributes:
        r: number of witnesses
        witnesses: the degree-1 Elements
        product_class: their ordered product
        span_dimension: dimension of the span of all 2^r subproducts
        image_rank: rank of the multiplication map L^r H^1 -> H^r
    """

    r: int
    witnesses: list = field(default_factory=list)
    product_class: Element = None
    span_dimension: int = 1
    image_rank: int = 0

    @property
    def exterior(self):
        return self.span_dimension == 2 ** self.r

    def witness_names(self):
        return [str(w) for w in self.witnesses]


def _subproduct_span(A, witnesses):
    """Sum over degrees of the rank of the products of all subsets of witnesses"""
    by_degree = {}
    for size in range(len(witnesses) + 1):
        for subset in combinations(witnesses, size):
            by_degree.setdefault(size, []).append(A.vector(A.multiply_all(subset), size))
    return sum(linalg.rank(rows, len(A.names(size))) for size, rows in by_degree.items())


def max_exterior_rank(H, degree_one=None):
    """Largest k such that some k classes of degree 1 multiply to a nonzero class

    Args:
        H: GradedAlgebra or CohomologyRing
        degree_one: optional basis of a subspace of H^1 to draw witnesses from;
                    defaults to the basis of H^1

    Returns:
        TorusCertificate
    """
    A = underlying(H)
    if degree_one is None:
        degree_one = [A.basis_element(name) for name in A.names(1)]
    for k in range(min(len(degree_one), A.truncation), 0, -1):
        products = []
        witness = None
        for subset in combinations(degree_one, k):
            product = A.multiply_all(subset)
            products.append(A.vector(product, k))
            if witness is None and not product.is_zero():
                witness = (list(subset), product)
        if witness is None:
            continue
        witnesses, product = witness
        return TorusCertificate(k, witnesses, product, _subproduct_span(A, witnesses),
                                linalg.rank(products, len(A.names(k))))
    return TorusCertificate(0, [], A.unit_element(), 1, 0)


def alpha_tilde_1(H_K, g):
    """Exterior rank of the G-fixed part of H^1, with products taken in H_K"""
    return invariant_torus_certificate(H_K, g).r


def invariant_torus_certificate(H_K, g):
    A = underlying(H_K)
    invariants, inclusion = invariant_subalgebra(H_K, g)
    fixed = [inclusion.images[name] for name in invariants.names(1)]
    return max_exterior_rank(A, fixed)


def toral_rank_bound(H_K, g):
    """Upper bound alpha_tilde_1 + 1 on the toral rank of the co-Kahler mapping torus"""
    return alpha_tilde_1(H_K, g) + 1


def toral_bound_report(H_K, g):
    """The toral rank bound with the Reeb-circle specialization b_1(M) = 1"""
    invariants, _ = invariant_subalgebra(H_K, g)
    alpha = alpha_tilde_1(H_K, g)
    b1 = len(invariants.names(1)) + 1
    report = Report("toral-bound")
    report.check("bound >= 1", alpha + 1 >= 1)
    if b1 == 1:
        report.check("b_1(M) = 1 gives bound 1", alpha + 1 == 1, alpha + 1)
    report.data.update({"alpha_tilde_1": alpha, "bound": alpha + 1, "b1": b1,
                        "reeb_circle": b1 == 1})
    return report


def trc_check(H, command="trc"):
    """Certificate for dim H >= 2^r with r the exterior rank of H^1; reports the slack"""
    A = underlying(H)
    certificate = max_exterior_rank(A)
    total = A.total_dimension()
    report = Report(command, betti=A.dims())
    report.check(f"span of the 2^{certificate.r} witness subproducts", certificate.exterior,
                 certificate.span_dimension)
    report.check(f"dim H = {total} >= 2^{certificate.r}", total >= 2 ** certificate.r)
    report.data.update({"r": certificate.r, "witnesses": certificate.witness_names(),
                        "product": str(certificate.product_class),
                        "slack": total - 2 ** certificate.r})
    return report


def cokahler_trc_pipeline(H_K, g, omega, n=None, cross_check=False):
    """The co-Kahler toral-rank chain, one link per group of entries

    Hard Lefschetz on H_K^G, Property B on H_K^G, on L(eta) and on the model,
    then the torus certificate of the model with eta among the witnesses.
    """
    model = mapping_torus_algebra(H_K, g, omega, n, cross_check=cross_check)
    report = Report("trc-pipeline", betti=model.algebra.dims())
    report.extend(invariant_kahler_check(H_K, g, omega, model.n, cross_check=cross_check),
                  prefix="kahler")
    report.extend(property_b_check(model.base), prefix="property B of the base")
    report.extend(property_b_check(exterior_algebra(["eta"], label="S1")), prefix="property B of the circle")
    report.extend(property_b_check(model.algebra), prefix="property B of the model")
    trc = trc_check(model.algebra)
    report.extend(trc, prefix="trc")
    eta_certificate = max_exterior_rank(model.algebra, [model.eta])
    report.check("eta is a cohomological 1-torus", eta_certificate.r == 1, str(model.eta))
    report.data.update({key: trc.data[key] for key in ("r", "slack")})
    return report
