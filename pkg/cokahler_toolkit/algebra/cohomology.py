"""Cohomology rings of chain complex algebras and invariants of finite cyclic actions"""

from sympy import QQ

from . import linalg
from .errors import ActionOrderError, AlgebraInputError, CokahlerError
from .graded import (AlgebraMap, ChainComplexAlgebra, Element, GradedAlgebra, GradedBasis,
                     underlying)
from ..report import Report
from ..utils import get_logger

LOG = get_logger(__name__)


def _single_name(A, degree, vec):
    """Basis name when vec is exactly one basis element with coefficient 1"""
    support = [j for j, v in enumerate(vec) if v != 0]
    if len(support) == 1 and vec[support[0]] == 1:
        return A.names(degree)[support[0]]
    return None


class CohomologyRing:
    """H(C, d) as a GradedAlgebra together with cocycle representatives

    Attributes:
        source: the ChainComplexAlgebra
        algebra: GradedAlgebra whose basis elements are cohomology classes
        representatives: dict class name -> cocycle Element of the source
        unreliable_degrees: degrees whose dimension depends on data above the truncation
        well_defined_witness: (class, exact element) whose product is not exact, or None
    """

    def __init__(self, source, algebra, representatives, unreliable_degrees, well_defined_witness=None):
        self.source = source
        self.algebra = algebra
        self.representatives = representatives
        self.unreliable_degrees = list(unreliable_degrees)
        self.well_defined_witness = well_defined_witness

    @property
    def label(self):
        return self.algebra.label

    @property
    def truncation(self):
        return self.algebra.truncation

    def betti_numbers(self):
        return self.algebra.dims()

    def representative(self, h):
        """A cocycle representing a class given as an Element of the ring"""
        C = self.source.algebra
        total = Element.zero(truncated=h.truncated)
        for name, coeff in h.terms.items():
            total = total + self.representatives[name].scaled(coeff)
        return C.element(total.terms, total.truncated)

    def class_of(self, cocycle):
        """The class of a closed element of the source, as an Element of the ring

        Raises:
            AlgebraInputError: the element is not closed
        """
        C = self.source.algebra
        total = Element.zero(truncated=cocycle.truncated)
        for degree in sorted({C.degree_of(n) for n in cocycle.terms}):
            part = C.homogeneous_part(cocycle, degree)
            total = total + self._class_in_degree(part, degree)
        return self.algebra.element(total.terms, total.truncated)

    def _class_in_degree(self, part, degree):
        C = self.source.algebra
        classes = self.algebra.names(degree)
        columns = [C.vector(self.representatives[h], degree) for h in classes]
        columns += [C.vector(b, degree) for b in _image_elements(self.source, degree)]
        solution = linalg.solve(columns, C.vector(part, degree))
        if solution is None:
            raise AlgebraInputError(f"{part} is not closed in {self.source.label}")
        truncated = part.truncated or degree in self.unreliable_degrees
        return Element({h: c for h, c in zip(classes, solution)}, degree, truncated)

    def __repr__(self):
        return f"CohomologyRing({self.label}, betti={self.betti_numbers()})"


def _image_elements(C, degree):
    """d of each basis element of degree - 1"""
    A = C.algebra
    if degree < 1:
        return []
    return [C.d(A.basis_element(name)) for name in A.names(degree - 1)]


def cocycle_classes(C, degree):
    """Coordinate vectors of cocycles forming a basis of H^p(C)

    Chosen greedily from the reduced echelon basis of ker d_p, keeping those
    independent modulo im d_(p-1). The truncation degree counts every element as closed.
    """
    A = C.algebra
    dim = len(A.names(degree))
    if degree < A.truncation:
        cycles = linalg.nullspace(C.matrix(degree), dim)
    else:
        cycles = linalg.identity(dim)
    boundaries = [A.vector(b, degree) for b in _image_elements(C, degree)]
    return [cycles[idx] for idx in linalg.independent_extension(cycles, boundaries, dim)]


def cohomology(C, label=None):
    """Cohomology ring of a chain complex algebra

    Degree p classes are chosen greedily from the reduced echelon basis of ker d_p,
    keeping those independent modulo im d_{p-1}. A class is named after its
    representative when that is a single basis element, else 'h{p}_{i}'.

    Args:
        C: ChainComplexAlgebra (a GradedAlgebra is taken with zero differential)
        label: display name, defaults to 'H(<label>)'

    Returns:
        CohomologyRing
    """
    if isinstance(C, GradedAlgebra):
        C = ChainComplexAlgebra.with_zero_differential(C)
    A = C.algebra
    D = A.truncation
    exact_top = A.complete or C.is_formal_zero()
    unreliable = [] if exact_top else [D]

    degrees = []
    representatives = {}
    taken = set(A.basis.all_names())
    for p in range(D + 1):
        names = []
        for i, vec in enumerate(cocycle_classes(C, p), start=1):
            name = _single_name(A, p, vec)
            if name is None:
                name = f"h{p}_{i}"
                while name in taken:
                    name += "'"
                taken.add(name)
            names.append(name)
            representatives[name] = A.from_vector(p, vec)
        degrees.append(names)

    basis = GradedBasis(degrees)
    ring = CohomologyRing(C, None, representatives, unreliable)
    placeholder = GradedAlgebra(basis, {}, label or f"H({A.label})", complete=exact_top)
    ring.algebra = placeholder

    table = {}
    for a in basis.all_names():
        for b in basis.all_names():
            degree = basis.degree_of(a) + basis.degree_of(b)
            if degree > D or basis.degree_of(a) == 0 or basis.degree_of(b) == 0:
                continue
            product = A.multiply(representatives[a], representatives[b])
            table[(a, b)] = ring.class_of(product) if not product.is_zero() else Element.zero(product.truncated)

    generators = factorization = None
    if C.is_formal_zero() and all(name in A.basis for name in representatives):
        generators, factorization = A.generators, A.factorization
    ring.algebra = GradedAlgebra(basis, table, placeholder.label, generators, factorization,
                                 complete=exact_top)
    ring.well_defined_witness = _well_definedness_witness(ring)
    LOG.debug("cohomology of %s: betti %s", A.label, basis.dims())
    return ring


def _well_definedness_witness(ring):
    """A (class, boundary) pair whose product is not exact, or None"""
    C = ring.source
    A = C.algebra
    for h, rep in ring.representatives.items():
        p = A.degree_of(next(iter(rep.terms))) if rep.terms else 0
        for q in range(1, A.truncation - p + 1):
            if q + p in ring.unreliable_degrees:
                continue
            dim = len(A.names(p + q))
            boundaries = [A.vector(b, p + q) for b in _image_elements(C, p + q)]
            base_rank = linalg.rank(boundaries, dim)
            for b in _image_elements(C, q):
                if b.is_zero():
                    continue
                product = A.multiply(rep, b)
                if product.truncated or product.is_zero():
                    continue
                if linalg.rank(boundaries + [A.vector(product, p + q)], dim) > base_rank:
                    return [h, str(b)]
    return None


class GroupActionSpec:
    """A finite cyclic group Z_m acting through one algebra automorphism g

    Args:
        automorphism: AlgebraMap from an algebra to itself
        order: m, the exact order of g

    Raises:
        ActionOrderError: g^m is not the identity, or some smaller power already is
        AlgebraInputError: g does not respect products or the differential
    """

    def __init__(self, automorphism, order):
        if order < 1:
            raise AlgebraInputError(f"Action order must be positive, got {order}")
        if underlying(automorphism.source) is not underlying(automorphism.target):
            raise AlgebraInputError("An action must map an algebra to itself")
        self.automorphism = automorphism
        self.order = order
        self.algebra = automorphism.source

        pair = automorphism.multiplicativity_witness()
        if pair is not None:
            raise AlgebraInputError(f"Action does not respect the product of {pair[0]} and {pair[1]}")
        name = automorphism.chain_witness()
        if name is not None:
            raise AlgebraInputError(f"Action does not commute with d on '{name}'")

        failing = automorphism.power(order).identity_witness()
        if failing is not None:
            raise ActionOrderError(
                f"Action order mismatch: g^{order} is not the identity on '{failing}'", failing, order)
        for divisor in range(1, order):
            if order % divisor == 0 and automorphism.power(divisor).identity_witness() is None:
                raise ActionOrderError(
                    f"Action order mismatch: declared order {order} but g^{divisor} is the identity",
                    None, order)

    @classmethod
    def from_generator_images(cls, algebra, images, order):
        return cls(AlgebraMap.from_generator_images(algebra, algebra, images), order)

    @classmethod
    def trivial(cls, algebra):
        return cls(AlgebraMap.identity(algebra), 1)

    def apply(self, x):
        return self.automorphism.apply(x)

    def power(self, k):
        return self.automorphism.power(k % self.order)

    def matrix(self, degree):
        return self.automorphism.matrix(degree)

    def is_invariant(self, x):
        return self.apply(x) == x


def averaging_matrix(g, degree):
    """The Reynolds projector (1/m) sum_i g^i in one degree"""
    A = underlying(g.algebra)
    dim = len(A.names(degree))
    total = [linalg.zero_vector(dim) for _ in range(dim)]
    scale = QQ(1, g.order)
    for i in range(g.order):
        rows = g.power(i).matrix(degree)
        for r in range(dim):
            for c in range(dim):
                total[r][c] += scale * rows[r][c]
    return total


def fixed_subspace(g, degree):
    """Basis of ker(g - id) in one degree, in reduced echelon form"""
    A = underlying(g.algebra)
    dim = len(A.names(degree))
    rows = g.matrix(degree)
    shifted = [[rows[r][c] - (1 if r == c else 0) for c in range(dim)] for r in range(dim)]
    return linalg.nullspace(shifted, dim)


def _invariant_name(A, degree, vec, taken):
    name = _single_name(A, degree, vec)
    if name is None:
        name = "(" + str(A.from_vector(degree, vec)).replace(" ", "") + ")"
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def invariant_subalgebra(H, g, cross_check=False, label=None):
    """The subalgebra fixed by a finite cyclic action, computed by averaging

    Args:
        H: GradedAlgebra or CohomologyRing the action lives on
        g: GroupActionSpec on that algebra
        cross_check: also compute ker(g - id) and assert it equals the averaging image
        label: display name, defaults to '<label>^G'

    Returns:
        (GradedAlgebra, AlgebraMap): the invariants and their inclusion into H
    """
    A = underlying(H)
    if underlying(g.algebra) is not A:
        raise AlgebraInputError(f"The action is not defined on {A.label}")
    degrees = []
    elements = {}
    taken = set()
    for p in range(A.truncation + 1):
        dim = len(A.names(p))
        projector = averaging_matrix(g, p)
        image, _ = linalg.rref(linalg.transpose(projector, dim), dim)
        if cross_check:
            _cross_check_invariants(g, p, projector, image, dim)
        names = []
        for vec in image:
            name = _invariant_name(A, p, vec, taken)
            names.append(name)
            elements[name] = A.from_vector(p, vec)
        degrees.append(names)

    basis = GradedBasis(degrees)
    table = {}
    for a in basis.all_names():
        for b in basis.all_names():
            degree = basis.degree_of(a) + basis.degree_of(b)
            if degree > A.truncation or basis.degree_of(a) == 0 or basis.degree_of(b) == 0:
                continue
            product = A.multiply(elements[a], elements[b])
            columns = [A.vector(elements[n], degree) for n in basis.names(degree)]
            solution = linalg.solve(columns, A.vector(product, degree))
            if solution is None:
                raise CokahlerError(f"Product {a}*{b} left the invariant subalgebra")
            table[(a, b)] = Element(dict(zip(basis.names(degree), solution)), degree, product.truncated)

    invariants = GradedAlgebra(basis, table, label or f"{A.label}^G", complete=A.complete)
    inclusion = AlgebraMap(invariants, A, elements)
    LOG.debug("invariants of %s under Z_%d: dims %s", A.label, g.order, basis.dims())
    return invariants, inclusion


def _cross_check_invariants(g, degree, projector, image, dim):
    squared = [linalg.mat_vec(projector, [projector[r][c] for r in range(dim)]) for c in range(dim)]
    if linalg.transpose(squared, dim) != projector:
        raise CokahlerError(f"Averaging projector is not idempotent in degree {degree}")
    fixed = fixed_subspace(g, degree)
    if len(fixed) != len(image) or linalg.rank(fixed + image, dim) != len(image):
        raise CokahlerError(f"Averaging image and fixed subspace differ in degree {degree}")


def induced_action(ring, g):
    """The action on H(C) induced by an action on the cochain algebra C"""
    if underlying(g.algebra) is not ring.source.algebra:
        raise AlgebraInputError("The action is not defined on the cochains of this ring")
    images = {h: ring.class_of(g.apply(rep)) for h, rep in ring.representatives.items()}
    return GroupActionSpec(AlgebraMap(ring.algebra, ring.algebra, images), g.order)


def betti_numbers(H):
    """Degreewise dimensions; a ChainComplexAlgebra is replaced by its cohomology first"""
    if isinstance(H, ChainComplexAlgebra):
        H = cohomology(H)
    return underlying(H).dims()


def poincare_duality_check(H, n_top):
    """Check that the pairings H^p x H^(n-p) -> H^n are perfect

    Raises:
        AlgebraInputError: H^n is not one-dimensional
    """
    A = underlying(H)
    top = A.names(n_top)
    if len(top) != 1:
        raise AlgebraInputError(f"Poincare duality needs dim H^{n_top} = 1, got {len(top)}")
    top_name = top[0]
    report = Report("poincare-duality")
    for p in range(n_top + 1):
        left, right = A.names(p), A.names(n_top - p)
        flagged = False
        rows = []
        for a in left:
            row = []
            for b in right:
                product = A.product_of_basis(a, b)
                flagged = flagged or product.truncated
                row.append(product.coefficient(top_name))
            rows.append(row)
        r = linalg.rank(rows, len(right))
        ok = len(left) == len(right) and r == len(left)
        deficit = max(len(left), len(right)) - r
        report.check(f"pairing H^{p} x H^{n_top - p}", ok,
                     {"degree": p, "rank_deficit": deficit}, inconclusive=flagged)
    return report
