"""Free graded-commutative algebras, presentations and their truncated quotients

Monomials are exponent tuples indexed by generator position. Odd generators
appear with exponent 0 or 1; the normal form lists generators in declaration
order, and every transposition of two odd generators contributes a sign.
Polynomials are dicts mapping monomials to QQ coefficients.
"""

import re
from dataclasses import dataclass, field

from . import linalg
from .errors import AlgebraInputError
from .graded import ChainComplexAlgebra, Element, GradedAlgebra, GradedBasis, underlying
from ..utils import get_logger

LOG = get_logger(__name__)

_GENERATOR_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_.']*$")


class FreeGradedAlgebra:
    """The free graded-commutative algebra on named generators of positive degree

    Args:
        generators: sequence of (name, degree) pairs
    """

    def __init__(self, generators):
        self.generators = tuple((str(name), int(degree)) for name, degree in generators)
        self.names = tuple(name for name, _ in self.generators)
        self.degrees = tuple(degree for _, degree in self.generators)
        self._index = {}
        for i, (name, degree) in enumerate(self.generators):
            if degree < 1:
                raise AlgebraInputError(f"Generator '{name}' must have degree >= 1, got {degree}")
            if not _GENERATOR_NAME.match(name):
                raise AlgebraInputError(f"Generator name '{name}' is not a valid identifier")
            if name in self._index:
                raise AlgebraInputError(f"Generator '{name}' is declared twice")
            self._index[name] = i
        self._monomials = {}

    @property
    def unit(self):
        return (0,) * len(self.generators)

    def index_of(self, name):
        if name not in self._index:
            raise AlgebraInputError(f"Undeclared generator '{name}'")
        return self._index[name]

    def monomial_degree(self, monomial):
        return sum(e * d for e, d in zip(monomial, self.degrees))

    def monomial_name(self, monomial):
        parts = []
        for name, e in zip(self.names, monomial):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def factors(self, monomial):
        """Generator names of a monomial with repetition, in normal order"""
        return tuple(name for name, e in zip(self.names, monomial) for _ in range(e))

    def monomials(self, degree):
        """Normal-form monomials of a degree, exponent-lexicographically descending"""
        if degree < 0:
            return []
        if degree not in self._monomials:
            found = []

            def extend(i, remaining, prefix):
                if i == len(self.generators):
                    if remaining == 0:
                        found.append(tuple(prefix))
                    return
                d = self.degrees[i]
                top = 1 if d % 2 else remaining // d
                for e in range(min(top, remaining // d), -1, -1):
                    extend(i + 1, remaining - e * d, prefix + [e])

            extend(0, degree, [])
            self._monomials[degree] = found
        return self._monomials[degree]

    def multiply_monomials(self, m1, m2):
        """(sign, monomial) of the normal-ordered product, or None when it vanishes"""
        odd_left = []
        for i, (e1, e2) in enumerate(zip(m1, m2)):
            if self.degrees[i] % 2 and e1 and e2:
                return None
            if self.degrees[i] % 2 and e1:
                odd_left.append(i)
        swaps = 0
        for j, e2 in enumerate(m2):
            if e2 and self.degrees[j] % 2:
                swaps += sum(1 for i in odd_left if i > j)
        product = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
        return (-1 if swaps % 2 else 1), product

    def multiply(self, p, q):
        result = {}
        for m1, c1 in p.items():
            for m2, c2 in q.items():
                product = self.multiply_monomials(m1, m2)
                if product is None:
                    continue
                sign, m = product
                result[m] = result.get(m, linalg.ZERO) + sign * c1 * c2
        return {m: c for m, c in result.items() if c != 0}

    def add(self, p, q, scale=1):
        result = dict(p)
        for m, c in q.items():
            result[m] = result.get(m, linalg.ZERO) + scale * c
        return {m: c for m, c in result.items() if c != 0}

    def generator(self, name):
        exps = [0] * len(self.generators)
        exps[self.index_of(name)] = 1
        return {tuple(exps): linalg.ONE}

    def one(self):
        return {self.unit: linalg.ONE}

    def product_of_names(self, names):
        """Ordered product of generators as written"""
        result = self.one()
        for name in names:
            result = self.multiply(result, self.generator(name))
        return result

    def polynomial(self, terms):
        """Polynomial from (coefficient, [generator names in written order]) pairs"""
        total = {}
        for coeff, names in terms:
            total = self.add(total, self.product_of_names(names), linalg.to_scalar(coeff))
        return total

    def degree_of_polynomial(self, poly):
        """The common degree of a nonzero homogeneous polynomial, else None"""
        degrees = {self.monomial_degree(m) for m in poly}
        if len(degrees) != 1:
            return None
        return degrees.pop()

    def vector(self, poly, degree):
        index = {m: i for i, m in enumerate(self.monomials(degree))}
        vec = linalg.zero_vector(len(index))
        for m, c in poly.items():
            if m in index:
                vec[index[m]] += c
        return vec

    def from_vector(self, degree, vec):
        return {m: c for m, c in zip(self.monomials(degree), vec) if c != 0}

    def differential(self, poly, on_generators):
        """Extend d from generators to polynomials by the graded Leibniz rule"""
        result = {}
        for monomial, coeff in poly.items():
            factors = self.factors(monomial)
            for k, name in enumerate(factors):
                d_gen = on_generators.get(name)
                if not d_gen:
                    continue
                prefix = self.product_of_names(factors[:k])
                suffix = self.product_of_names(factors[k + 1:])
                sign = -1 if sum(self.degrees[self._index[f]] for f in factors[:k]) % 2 else 1
                term = self.multiply(self.multiply(prefix, d_gen), suffix)
                result = self.add(result, term, sign * coeff)
        return result

    def format_polynomial(self, poly):
        if not poly:
            return "0"
        return str(Element({self.monomial_name(m): c for m, c in poly.items()}))


@dataclass
class Presentation:
    """Generators, relations and a differential on generators, up to a truncation degree

    Relations and differential values are polynomials over the generators, in the
    exponent-tuple form of FreeGradedAlgebra.
    """

    generators: list
    relations: list = field(default_factory=list)
    differential: dict = field(default_factory=dict)
    truncation: int = 0
    label: str = "A"
    realization: dict = field(default_factory=dict)

    def free_algebra(self):
        return FreeGradedAlgebra(self.generators)


class DegreewiseQuotient:
    """The quotient of a free algebra by the ideal spanned by relations, one degree at a time

    In degree p the ideal is spanned by {relation * monomial}; its reduced echelon
    form picks pivot monomials, and the remaining monomials form the quotient basis.
    """

    def __init__(self, free, relations):
        self.free = free
        self.relations = [(free.degree_of_polynomial(r), r) for r in relations if r]
        self._cache = {}

    def _degree_data(self, degree):
        if degree not in self._cache:
            monomials = self.free.monomials(degree)
            rows = []
            for rel_degree, relation in self.relations:
                for m in self.free.monomials(degree - rel_degree):
                    product = self.free.multiply(relation, {m: linalg.ONE})
                    if product:
                        rows.append(self.free.vector(product, degree))
            echelon, pivots = linalg.rref(rows, len(monomials))
            taken = set(pivots)
            basis = [m for j, m in enumerate(monomials) if j not in taken]
            self._cache[degree] = (echelon, pivots, basis)
        return self._cache[degree]

    def basis(self, degree):
        return self._degree_data(degree)[2]

    def dim(self, degree):
        return len(self.basis(degree))

    def reduce(self, poly):
        """Normal form of a polynomial as {basis monomial: coefficient}"""
        by_degree = {}
        for m, c in poly.items():
            by_degree.setdefault(self.free.monomial_degree(m), {})[m] = c
        result = {}
        for degree, part in by_degree.items():
            echelon, pivots, basis = self._degree_data(degree)
            vec = self.free.vector(part, degree)
            for row, pivot in zip(echelon, pivots):
                factor = vec[pivot]
                if factor != 0:
                    vec = [v - factor * r for v, r in zip(vec, row)]
            for m, c in self.free.from_vector(degree, vec).items():
                result[m] = c
        return result


def _check_homogeneous(free, poly, what):
    degree = free.degree_of_polynomial(poly)
    if degree is None:
        raise AlgebraInputError(f"{what} is not homogeneous: {free.format_polynomial(poly)}")
    return degree


def build_from_presentation(presentation):
    """Realize a presentation as a truncated chain complex algebra

    Args:
        presentation: Presentation with generators of degree >= 1, homogeneous
                      relations of degree <= truncation and a differential of degree +1

    Returns:
        ChainComplexAlgebra whose basis is the normal-form monomials surviving the
        degreewise quotient, named like 'a^2*b'

    Raises:
        AlgebraInputError: bad degrees, a relation above the truncation, d(d(x)) not
                           zero modulo the relations, or d not preserving the relations
    """
    free = presentation.free_algebra()
    D = presentation.truncation
    if D < 0:
        raise AlgebraInputError(f"Truncation degree must be non-negative, got {D}")
    relations = [dict(r) for r in presentation.relations]
    differential = dict(presentation.differential)

    for relation in relations:
        if not relation:
            continue
        degree = _check_homogeneous(free, relation, "Relation")
        if degree == 0:
            raise AlgebraInputError("Relations must have positive degree")
        if degree > D:
            raise AlgebraInputError(
                f"Relation {free.format_polynomial(relation)} has degree {degree} above the truncation degree {D}")
    for name, value in differential.items():
        free.index_of(name)
        if not value:
            continue
        degree = _check_homogeneous(free, value, f"d({name})")
        expected = free.degrees[free.index_of(name)] + 1
        if degree != expected:
            raise AlgebraInputError(f"d({name}) must have degree {expected}, got {degree}")

    quotient = DegreewiseQuotient(free, relations)
    max_gen = max(free.degrees, default=0)
    complete = all(quotient.dim(q) == 0 for q in range(D + 1, D + max_gen + 1))

    for name, _ in free.generators:
        image = differential.get(name)
        if not image or free.monomial_degree(next(iter(image))) + 1 > D:
            continue
        dd = quotient.reduce(free.differential(image, differential))
        if dd:
            raise AlgebraInputError(
                f"Inconsistent differential: d(d({name})) = {free.format_polynomial(dd)} "
                "is not zero modulo the relations")
    for relation in relations:
        if not relation or free.degree_of_polynomial(relation) + 1 > D:
            continue
        dr = quotient.reduce(free.differential(relation, differential))
        if dr:
            raise AlgebraInputError(
                f"Differential does not preserve the relation {free.format_polynomial(relation)}: "
                f"its image {free.format_polynomial(dr)} is not in the ideal")

    def as_element(poly, degree, truncated=False):
        return Element({free.monomial_name(m): c for m, c in poly.items()}, degree, truncated)

    degrees = [[free.monomial_name(m) for m in quotient.basis(p)] for p in range(D + 1)]
    basis = GradedBasis(degrees)

    table = {}
    for p in range(1, D + 1):
        for a in quotient.basis(p):
            for q in range(1, D - p + 1):
                for b in quotient.basis(q):
                    product = quotient.reduce(free.multiply({a: linalg.ONE}, {b: linalg.ONE}))
                    table[(free.monomial_name(a), free.monomial_name(b))] = as_element(product, p + q)

    d_values = {}
    for p in range(D + 1):
        for m in quotient.basis(p):
            image = free.differential({m: linalg.ONE}, differential)
            if p + 1 <= D:
                d_values[free.monomial_name(m)] = as_element(quotient.reduce(image), p + 1)
            elif image and not complete:
                d_values[free.monomial_name(m)] = Element.zero(truncated=True)

    generator_elements = {name: as_element(quotient.reduce(free.generator(name)), degree)
                          for name, degree in free.generators if degree <= D}
    factorization = {free.monomial_name(m): free.factors(m)
                     for p in range(D + 1) for m in quotient.basis(p)}
    algebra = GradedAlgebra(basis, table, presentation.label, generator_elements,
                            factorization, complete=complete)
    LOG.debug("built %s with dims %s (complete=%s)", presentation.label, basis.dims(), complete)
    return ChainComplexAlgebra(algebra, d_values, presentation)


def presented_algebra(generators, relations=(), truncation=None, label="A"):
    """Graded algebra from generators and relations given as written-order terms

    Args:
        generators: sequence of (name, degree)
        relations: sequence of relations, each a list of (coefficient, [names])
        truncation: truncation degree; defaults to the sum of the generator degrees
        label: display name

    Returns:
        GradedAlgebra
    """
    free = FreeGradedAlgebra(generators)
    if truncation is None:
        truncation = sum(free.degrees)
    polys = [free.polynomial(terms) for terms in relations]
    return build_from_presentation(Presentation(list(free.generators), polys, {}, truncation, label)).algebra


def evaluate(algebra, generator_elements, poly, free):
    """Value of a free polynomial in an algebra, given images of the generators"""
    A = underlying(algebra)
    total = Element.zero()
    for m, c in poly.items():
        value = A.multiply_all([generator_elements[name] for name in free.factors(m)])
        total = total + value.scaled(c)
    return total


def _generator_name(name, degree, taken):
    if _GENERATOR_NAME.match(name) and name not in taken:
        return name
    k = 1
    while f"g{degree}_{k}" in taken:
        k += 1
    return f"g{degree}_{k}"


def presentation_of(algebra, label=None):
    """Recover generators and relations of an algebra given by a multiplication table

    Generators are basis elements completing the decomposables degreewise; relations
    are, per degree, kernel vectors of the evaluation map from free monomials that are
    new modulo the ideal of lower relations. A ChainComplexAlgebra also contributes
    its differential, rewritten in the generators.

    Returns:
        Presentation whose realization maps generator names to the chosen basis elements
    """
    A = underlying(algebra)
    D = A.truncation
    chosen = []
    taken = set()
    for p in range(1, D + 1):
        names = A.names(p)
        rows = []
        for i in range(1, p):
            for a in A.names(i):
                for b in A.names(p - i):
                    rows.append(A.vector(A.product_of_basis(a, b), p))
        for j in linalg.complement_indices(rows, len(names)):
            gen_name = _generator_name(names[j], p, taken)
            taken.add(gen_name)
            chosen.append((gen_name, p, A.basis_element(names[j])))

    free = FreeGradedAlgebra([(name, degree) for name, degree, _ in chosen])
    realization = {name: element for name, _, element in chosen}
    relations = []
    for p in range(1, D + 1):
        monomials = free.monomials(p)
        if not monomials:
            continue
        columns = [A.vector(evaluate(A, realization, {m: linalg.ONE}, free), p) for m in monomials]
        kernel = linalg.nullspace(linalg.transpose(columns, len(A.names(p))), len(monomials))
        ideal_rows = []
        for relation in relations:
            rel_degree = free.degree_of_polynomial(relation)
            for m in free.monomials(p - rel_degree):
                product = free.multiply(relation, {m: linalg.ONE})
                if product:
                    ideal_rows.append(free.vector(product, p))
        for idx in linalg.independent_extension(kernel, ideal_rows, len(monomials)):
            relations.append(free.from_vector(p, kernel[idx]))

    presentation = Presentation(list(free.generators), relations, {}, D, label or A.label, realization)
    if isinstance(algebra, ChainComplexAlgebra):
        for name, element in realization.items():
            image = algebra.d(element)
            if not image.is_zero() and not image.truncated:
                presentation.differential[name] = express_in_generators(A, presentation, image)
    return presentation


def express_in_generators(algebra, presentation, x):
    """A polynomial in the presentation's generators that evaluates to x

    Raises:
        AlgebraInputError: x is not in the subalgebra generated by the realization
    """
    A = underlying(algebra)
    free = presentation.free_algebra()
    result = {}
    for degree in sorted({A.degree_of(name) for name in x.terms}):
        part = A.homogeneous_part(x, degree)
        monomials = free.monomials(degree)
        columns = [A.vector(evaluate(A, presentation.realization, {m: linalg.ONE}, free), degree)
                   for m in monomials]
        solution = linalg.solve(columns, A.vector(part, degree))
        if solution is None:
            raise AlgebraInputError(f"{part} is not expressible in the generators of {A.label}")
        result = free.add(result, free.from_vector(degree, solution))
    return result


def exterior_algebra(generators, label="E"):
    """Free exterior algebra on odd generators, given as names (degree 1) or (name, degree) pairs"""
    pairs = [(g, 1) if isinstance(g, str) else g for g in generators]
    for name, degree in pairs:
        if degree % 2 == 0:
            raise AlgebraInputError(f"Exterior generator '{name}' must have odd degree")
    return presented_algebra(pairs, (), sum(d for _, d in pairs), label)


def torus(r, names=None):
    """H(T^r): exterior algebra on r degree-1 classes, named x1..xr by default"""
    names = list(names) if names else [f"x{i}" for i in range(1, r + 1)]
    return exterior_algebra(names, label=f"T{r}")


def projective_space(n, name="u"):
    """H(CP^n) = Q[u]/(u^(n+1)) with |u| = 2

    Truncated at 2n + 2, the degree of the relation, so the result is complete.
    """
    return presented_algebra([(name, 2)], [[(1, [name] * (n + 1))]], 2 * n + 2, label=f"CP{n}")


def sphere(k, name=None):
    """H(S^k): one class of degree k squaring to zero; even spheres are truncated at 2k"""
    name = name or f"s{k}"
    if k % 2:
        return exterior_algebra([(name, k)], label=f"S{k}")
    return presented_algebra([(name, k)], [[(1, [name, name])]], 2 * k, label=f"S{k}")


def kodaira_thurston():
    """The cdga of the Kodaira-Thurston nilmanifold: exterior on e1..e4 with d(e4) = e1*e2"""
    free = FreeGradedAlgebra([("e1", 1), ("e2", 1), ("e3", 1), ("e4", 1)])
    differential = {"e4": free.product_of_names(["e1", "e2"])}
    return build_from_presentation(Presentation(list(free.generators), [], differential, 4, "KT"))
