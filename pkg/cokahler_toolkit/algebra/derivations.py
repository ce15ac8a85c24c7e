"""Negative-degree derivations of graded algebras and Property B

A derivation of degree k is solved for as an unknown linear map on the whole
basis, with the graded Leibniz rule
    theta(xy) = theta(x) y + (-1)^(k|x|) x theta(y)
imposed on basis pairs as linear constraints.
"""

from dataclasses import dataclass, field

from . import linalg
from .graded import Element, koszul_sign, tensor_product, underlying
from ..report import FAIL, INCONCLUSIVE, INPUT_ERROR, PASS, Report
from ..utils import get_logger

LOG = get_logger(__name__)


@dataclass
class Derivation:
    """theta given on basis elements; basis elements not listed map to zero"""

    degree: int
    values: dict

    def apply(self, algebra, x):
        A = underlying(algebra)
        total = Element.zero(truncated=x.truncated)
        for name, coeff in x.terms.items():
            total = total + self.values.get(name, Element.zero()).scaled(coeff)
        return A.element(total.terms, total.truncated)

    def is_zero(self):
        return all(value.is_zero() for value in self.values.values())

    def leibniz_witness(self, algebra):
        """First basis pair violating the Leibniz rule within truncation, or None"""
        A = underlying(algebra)
        names = A.basis.all_names()
        for a in names:
            for b in names:
                if A.degree_of(a) + A.degree_of(b) > A.truncation:
                    continue
                x, y = A.basis_element(a), A.basis_element(b)
                lhs = self.apply(A, A.multiply(x, y))
                rhs = (A.multiply(self.apply(A, x), y)
                       + A.multiply(x, self.apply(A, y)).scaled(koszul_sign(self.degree, A.degree_of(a))))
                if lhs != rhs:
                    return (a, b)
        return None

    def describe(self):
        """Nonzero values as {basis name: rendered image}"""
        return {name: str(value) for name, value in self.values.items() if not value.is_zero()}


@dataclass
class DerivationSpace:
    degree: int
    basis: list = field(default_factory=list)
    truncated: bool = False

    @property
    def dimension(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis


def derivation_space(H, k, vanish_on_degree_one=False):
    """Basis of the derivations of degree k < 0

    Args:
        H: GradedAlgebra or CohomologyRing
        k: negative degree
        vanish_on_degree_one: impose theta(H^1) = 0

    Returns:
        DerivationSpace; on an incomplete algebra pairs multiplying above the
        truncation give no constraint and the space is flagged truncated
    """
    if k >= 0:
        raise ValueError(f"Derivation degree must be negative, got {k}")
    A = underlying(H)
    D = A.truncation

    unknowns = []
    index = {}
    for q in range(1, D + 1):
        if q + k < 0 or (vanish_on_degree_one and q == 1):
            continue
        for e in A.names(q):
            for f in A.names(q + k):
                index[(e, f)] = len(unknowns)
                unknowns.append((e, f))

    def theta_rows(source, scale, right=None, left=None, target_degree=0):
        """Contributions of theta(source) (times right, or left times) as {target: {unknown: coeff}}"""
        contributions = {}
        for f in A.names(A.degree_of(source) + k):
            if (source, f) not in index:
                continue
            value = A.basis_element(f)
            if right is not None:
                value = A.product_of_basis(f, right)
            elif left is not None:
                value = A.product_of_basis(left, f)
            for z, c in value.terms.items():
                row = contributions.setdefault(z, {})
                u = index[(source, f)]
                row[u] = row.get(u, linalg.ZERO) + scale * c
        return contributions

    rows = []
    names = [n for n in A.basis.all_names() if A.degree_of(n) > 0]
    for a in names:
        for b in names:
            da, db = A.degree_of(a), A.degree_of(b)
            target = da + db + k
            if target < 0 or target > D:
                continue
            if da + db > D and not A.complete:
                continue
            constraint = {}

            def accumulate(contributions):
                for z, row in contributions.items():
                    merged = constraint.setdefault(z, {})
                    for u, c in row.items():
                        merged[u] = merged.get(u, linalg.ZERO) + c

            product = A.product_of_basis(a, b)
            for z, c in product.terms.items():
                accumulate(theta_rows(z, c))
            accumulate(theta_rows(a, -1, right=b))
            accumulate(theta_rows(b, -koszul_sign(k, da), left=a))
            for row in constraint.values():
                cleaned = {u: c for u, c in row.items() if c != 0}
                if cleaned:
                    rows.append(cleaned)

    solutions = linalg.nullspace(rows, len(unknowns)) if unknowns else []
    basis = []
    for vec in solutions:
        values = {}
        for (e, f), c in zip(unknowns, vec):
            if c != 0:
                values[e] = values.get(e, Element.zero()) + A.basis_element(f).scaled(c)
        basis.append(Derivation(k, {e: A.element(v.terms) for e, v in values.items()}))
    LOG.debug("derivations of %s in degree %d: %d unknowns, dimension %d",
              A.label, k, len(unknowns), len(basis))
    return DerivationSpace(k, basis, truncated=not A.complete)


def property_b_witness(H):
    """(k, derivation) for the smallest |k| with a nonzero derivation vanishing on H^1, or None"""
    A = underlying(H)
    for k in range(-1, -A.top_degree() - 1, -1):
        space = derivation_space(A, k, vanish_on_degree_one=True)
        if not space.is_zero():
            return k, space.basis[0]
    return None


def property_b_check(H, command="property-b"):
    """Decide Property B: every negative-degree derivation vanishing on H^1 vanishes

    Scans k = -1 down to -(top degree). The first failing degree carries the first
    derivation of the reduced echelon basis as witness.
    """
    A = underlying(H)
    report = Report(command)
    failing = None
    for k in range(-1, -A.top_degree() - 1, -1):
        space = derivation_space(A, k, vanish_on_degree_one=True)
        name = f"degree {k} derivations vanishing on H^1"
        if space.is_zero():
            report.add(name, PASS)
            continue
        status = INCONCLUSIVE if space.truncated else FAIL
        witness = space.basis[0].describe()
        report.add(name, status, witness, f"dimension {space.dimension}")
        if failing is None:
            failing = (k, witness)
    if failing is not None:
        report.data["failing_degree"] = failing[0]
        report.data["witness"] = failing[1]
    return report


def tensor_property_b_probe(H, G):
    """Property B of H (x) G, expected whenever both factors have it"""
    A, B = underlying(H), underlying(G)
    report = Report("property-b-tensor")
    factors_pass = True
    for label, algebra in ((A.label, A), (B.label, B)):
        verdict = property_b_check(algebra).verdict
        factors_pass = factors_pass and verdict == PASS
        report.add(f"{label}: property B", PASS if verdict == PASS else INPUT_ERROR,
                   detail="" if verdict == PASS else f"precondition not met ({verdict})")
    product = tensor_product(A, B)
    product_report = property_b_check(product)
    entry = report.add(f"{product.label}: property B", product_report.verdict,
                       product_report.data.get("witness"))
    if factors_pass and entry.status == FAIL:
        entry.detail = "implementation inconsistency: both factors pass but the product fails"
    report.betti = product.dims()
    return report
