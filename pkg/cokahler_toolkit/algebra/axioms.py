"""Axiom checks for graded algebras and chain complex algebras"""

from ..report import INCONCLUSIVE, PASS, Report
from .graded import ChainComplexAlgebra, koszul_sign, underlying


def _unit_witness(A):
    unit = A.unit_element()
    for name in A.basis.all_names():
        x = A.basis_element(name)
        if A.multiply(unit, x) != x or A.multiply(x, unit) != x:
            return [name]
    return None


def _commutativity_witness(A):
    names = A.basis.all_names()
    for a in names:
        for b in names:
            da, db = A.degree_of(a), A.degree_of(b)
            if da + db > A.truncation:
                continue
            ab = A.product_of_basis(a, b)
            ba = A.product_of_basis(b, a)
            if ab != ba.scaled(koszul_sign(da, db)):
                return [a, b]
    return None


def _associativity_witness(A):
    names = A.basis.all_names()
    D = A.truncation
    for a in names:
        for b in names:
            dab = A.degree_of(a) + A.degree_of(b)
            if dab > D:
                continue
            ab = A.product_of_basis(a, b)
            for c in names:
                if dab + A.degree_of(c) > D:
                    continue
                left = A.multiply(ab, A.basis_element(c))
                right = A.multiply(A.basis_element(a), A.product_of_basis(b, c))
                if left != right:
                    return [a, b, c]
    return None


def _d_squared(C):
    A = C.algebra
    flagged = False
    for name in A.basis.all_names():
        if A.degree_of(name) + 2 > A.truncation:
            continue
        dd = C.d(C.d(A.basis_element(name)))
        if dd.truncated:
            flagged = True
            continue
        if not dd.is_zero():
            return [name], flagged
    return None, flagged


def _leibniz(C):
    A = C.algebra
    names = A.basis.all_names()
    flagged = False
    for a in names:
        for b in names:
            da = A.degree_of(a)
            if da + A.degree_of(b) + 1 > A.truncation:
                continue
            x, y = A.basis_element(a), A.basis_element(b)
            lhs = C.d(A.multiply(x, y))
            rhs = A.multiply(C.d(x), y) + A.multiply(x, C.d(y)).scaled(koszul_sign(da, 1))
            if lhs.truncated or rhs.truncated:
                flagged = True
                continue
            if lhs != rhs:
                return [a, b], flagged
    return None, flagged


def verify_algebra_axioms(algebra):
    """Check unit, graded commutativity, associativity and, with a differential, d^2 = 0 and Leibniz

    Args:
        algebra: GradedAlgebra or ChainComplexAlgebra

    Returns:
        Report with one entry per axiom; failures carry the first witness pair or triple
    """
    A = underlying(algebra)
    report = Report("check-axioms")
    report.check("unit", *_ok(_unit_witness(A)))
    report.check("graded-commutativity", *_ok(_commutativity_witness(A)))
    report.check("associativity", *_ok(_associativity_witness(A)),
                 detail=f"basis triples of total degree <= {A.truncation}")
    if isinstance(algebra, ChainComplexAlgebra):
        for name, (witness, flagged) in (("d-squared", _d_squared(algebra)), ("leibniz", _leibniz(algebra))):
            entry = report.check(name, witness is None, witness)
            if entry.status == PASS and flagged:
                entry.status = INCONCLUSIVE
                entry.detail = f"some values lie above the truncation degree {A.truncation}"
    return report


def _ok(witness):
    return witness is None, witness
