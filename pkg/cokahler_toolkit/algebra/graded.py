"""Graded-commutative algebras with exact rational structure constants

An algebra is a finite basis per degree up to a truncation degree D plus a
multiplication table on basis pairs. Products landing above D are dropped and
the resulting Element carries a truncation flag, so downstream checks can
report "inconclusive above D" instead of guessing.
"""

import random

from sympy import QQ

from . import linalg
from .errors import AlgebraInputError


def format_scalar(q):
    """Render a QQ element as 'p' or 'p/q'"""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def koszul_sign(deg_a, deg_b):
    return -1 if (deg_a * deg_b) % 2 else 1


class Element:
    """A linear combination of basis elements with QQ coefficients

    Zero is the empty combination and has no degree. The truncation flag is set
    when some product contributing to this element was dropped above the
    algebra's truncation degree.
    """

    __slots__ = ("terms", "degree", "truncated")

    def __init__(self, terms=None, degree=None, truncated=False):
        cleaned = {}
        for name, coeff in (terms or {}).items():
            coeff = QQ.convert(coeff)
            if coeff != 0:
                cleaned[name] = coeff
        self.terms = cleaned
        self.degree = degree if cleaned else None
        self.truncated = bool(truncated)

    @classmethod
    def zero(cls, truncated=False):
        return cls({}, None, truncated)

    def is_zero(self):
        return not self.terms

    def coefficient(self, name):
        return self.terms.get(name, linalg.ZERO)

    def scaled(self, c):
        c = QQ.convert(c)
        return Element({k: c * v for k, v in self.terms.items()}, self.degree, self.truncated)

    def _combine_degree(self, other):
        if self.is_zero():
            return other.degree
        if other.is_zero():
            return self.degree
        return self.degree if self.degree == other.degree else None

    def __add__(self, other):
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, linalg.ZERO) + v
        return Element(terms, self._combine_degree(other), self.truncated or other.truncated)

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        flag = ", truncated" if self.truncated else ""
        return f"Element({self}{flag})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for name, coeff in self.terms.items():
            if coeff == 1:
                text = name
            elif coeff == -1:
                text = f"-{name}"
            else:
                text = f"{format_scalar(coeff)}*{name}"
            parts.append(text)
        return " + ".join(parts).replace("+ -", "- ")


def combination(pairs):
    """Sum of c * x over (c, x) pairs, starting from zero"""
    total = Element.zero()
    for c, x in pairs:
        total = total + x.scaled(c)
    return total


class GradedBasis:
    """Per-degree ordered basis names up to a truncation degree

    Args:
        degrees: sequence indexed by degree, each a sequence of basis names;
                 degree 0 must hold exactly the unit
    """

    def __init__(self, degrees):
        self.degrees = tuple(tuple(names) for names in degrees)
        if not self.degrees:
            raise AlgebraInputError("A graded basis needs at least degree 0")
        if len(self.degrees[0]) != 1:
            raise AlgebraInputError("Degree 0 must be spanned by the unit alone")
        self.truncation = len(self.degrees) - 1
        self._where = {}
        for degree, names in enumerate(self.degrees):
            for index, name in enumerate(names):
                if name in self._where:
                    raise AlgebraInputError(f"Basis name '{name}' is used twice")
                self._where[name] = (degree, index)

    def __contains__(self, name):
        return name in self._where

    def degree_of(self, name):
        return self._where[name][0]

    def index_of(self, name):
        return self._where[name][1]

    def names(self, degree):
        if 0 <= degree <= self.truncation:
            return self.degrees[degree]
        return ()

    def dims(self):
        return [len(names) for names in self.degrees]

    def all_names(self):
        return [name for names in self.degrees for name in names]


class GradedAlgebra:
    """A truncated graded-commutative algebra over QQ

    Args:
        basis: GradedBasis
        product_table: dict mapping (name_i, name_j) to Element; missing pairs
                       within truncation are zero, unit products are filled in
        label: display name
        generators: optional dict generator name -> Element, for presented algebras
        factorization: optional dict basis name -> tuple of generator names whose
                       product (in order) is that basis element
        tensor_factors: optional dict basis name -> (left name, right name)
        complete: True when the algebra vanishes above the truncation degree, so
                  products landing there are exact zeros rather than unknowns
    """

    def __init__(self, basis, product_table, label="A", generators=None,
                 factorization=None, tensor_factors=None, complete=False):
        self.basis = basis
        self.label = label
        self.complete = bool(complete)
        self.unit = basis.degrees[0][0]
        self.generators = dict(generators or {})
        self.factorization = dict(factorization or {})
        self.tensor_factors = dict(tensor_factors or {})
        table = {}
        for (a, b), value in product_table.items():
            for name in (a, b):
                if name not in basis:
                    raise AlgebraInputError(f"Product table mentions unknown basis element '{name}'")
            degree = basis.degree_of(a) + basis.degree_of(b)
            for name in value.terms:
                if name not in basis:
                    raise AlgebraInputError(f"Product {a}*{b} mentions unknown basis element '{name}'")
                if basis.degree_of(name) != degree:
                    raise AlgebraInputError(f"Product {a}*{b} is not of degree {degree}")
            table[(a, b)] = Element(value.terms, degree, value.truncated)
        for name in basis.all_names():
            single = self.basis_element(name)
            table.setdefault((self.unit, name), single)
            table.setdefault((name, self.unit), single)
        self.product_table = table

    @property
    def truncation(self):
        return self.basis.truncation

    def dims(self):
        return self.basis.dims()

    def names(self, degree):
        return self.basis.names(degree)

    def degree_of(self, name):
        return self.basis.degree_of(name)

    def top_degree(self):
        """Highest degree with a nonzero basis"""
        dims = self.dims()
        return max(p for p, dim in enumerate(dims) if dim > 0)

    def total_dimension(self):
        return sum(self.dims())

    def basis_element(self, name):
        return Element({name: linalg.ONE}, self.basis.degree_of(name))

    def unit_element(self):
        return self.basis_element(self.unit)

    def element(self, terms, truncated=False):
        """Element with its homogeneous degree filled in (None when mixed)"""
        degrees = {self.basis.degree_of(name) for name, c in terms.items() if c != 0}
        degree = degrees.pop() if len(degrees) == 1 else None
        return Element(terms, degree, truncated)

    def check_support(self, x):
        for name in x.terms:
            if name not in self.basis:
                raise AlgebraInputError(f"'{name}' is not a basis element of {self.label}")

    def product_of_basis(self, a, b):
        """Table product of two basis elements, flagged when above truncation"""
        if self.degree_of(a) + self.degree_of(b) > self.truncation:
            return Element.zero(truncated=not self.complete)
        return self.product_table.get((a, b), Element.zero())

    def multiply(self, x, y):
        """Bilinear extension of the product table"""
        self.check_support(x)
        self.check_support(y)
        result = {}
        truncated = x.truncated or y.truncated
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                product = self.product_of_basis(a, b)
                truncated = truncated or product.truncated
                for c, cc in product.terms.items():
                    result[c] = result.get(c, linalg.ZERO) + ca * cb * cc
        return self.element(result, truncated)

    def multiply_all(self, factors):
        """Ordered product of a sequence of elements"""
        result = self.unit_element()
        for factor in factors:
            result = self.multiply(result, factor)
        return result

    def power(self, x, k):
        return self.multiply_all([x] * k)

    def homogeneous_part(self, x, degree):
        return Element({n: c for n, c in x.terms.items() if self.degree_of(n) == degree},
                       degree, x.truncated)

    def vector(self, x, degree):
        """Coordinates of the degree-p part of x"""
        self.check_support(x)
        return [x.coefficient(name) for name in self.names(degree)]

    def from_vector(self, degree, vec):
        names = self.names(degree)
        return Element({name: c for name, c in zip(names, vec)}, degree)

    def reordered(self, seed):
        """Same algebra with each positive degree's basis order shuffled by a seeded RNG"""
        rng = random.Random(seed)
        degrees = []
        for p, names in enumerate(self.basis.degrees):
            names = list(names)
            if p > 0:
                rng.shuffle(names)
            degrees.append(names)
        return GradedAlgebra(GradedBasis(degrees), self.product_table, self.label,
                             self.generators, self.factorization, self.tensor_factors,
                             self.complete)

    def __repr__(self):
        return f"GradedAlgebra({self.label}, dims={self.dims()})"


class ChainComplexAlgebra:
    """A graded algebra with a degree +1 differential given on basis elements

    Args:
        algebra: GradedAlgebra
        differential: dict basis name -> Element of degree one higher; missing
                      names have zero differential
        presentation: the Presentation it was built from, when there is one
    """

    def __init__(self, algebra, differential=None, presentation=None):
        self.algebra = algebra
        self.presentation = presentation
        self.differential = {}
        for name, value in (differential or {}).items():
            if name not in algebra.basis:
                raise AlgebraInputError(f"Differential given on unknown basis element '{name}'")
            algebra.check_support(value)
            target = algebra.degree_of(name) + 1
            if value.degree is not None and value.degree != target:
                raise AlgebraInputError(f"d({name}) must have degree {target}")
            self.differential[name] = value

    @classmethod
    def with_zero_differential(cls, algebra):
        return cls(algebra, {})

    @property
    def label(self):
        return self.algebra.label

    @property
    def truncation(self):
        return self.algebra.truncation

    def is_formal_zero(self):
        """True when the differential vanishes identically"""
        return all(v.is_zero() and not v.truncated for v in self.differential.values())

    def multiply(self, x, y):
        return self.algebra.multiply(x, y)

    def d(self, x):
        self.algebra.check_support(x)
        total = Element.zero(truncated=x.truncated)
        for name, coeff in x.terms.items():
            total = total + self.differential.get(name, Element.zero()).scaled(coeff)
        return total

    def matrix(self, degree):
        """Rows of the matrix of d: C^p -> C^{p+1} (no rows when p is the truncation degree)"""
        if degree >= self.truncation:
            return []
        columns = [self.algebra.vector(self.d(self.algebra.basis_element(name)), degree + 1)
                   for name in self.algebra.names(degree)]
        return linalg.transpose(columns, len(self.algebra.names(degree + 1)))

    def __repr__(self):
        return f"ChainComplexAlgebra({self.label}, dims={self.algebra.dims()})"


def underlying(obj):
    """The GradedAlgebra beneath a GradedAlgebra, ChainComplexAlgebra or CohomologyRing"""
    if isinstance(obj, GradedAlgebra):
        return obj
    return obj.algebra


class AlgebraMap:
    """A degree-preserving linear map given by images of basis elements

    Args:
        source, target: GradedAlgebra or ChainComplexAlgebra
        images: dict source basis name -> Element of the target
    """

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        src = underlying(source)
        tgt = underlying(target)
        self.images = {}
        for name in src.basis.all_names():
            if name not in images:
                raise AlgebraInputError(f"Map has no image for basis element '{name}'")
            image = images[name]
            tgt.check_support(image)
            if image.degree is not None and image.degree != src.degree_of(name):
                raise AlgebraInputError(f"Map is not degree-preserving on '{name}'")
            self.images[name] = image

    @classmethod
    def identity(cls, algebra):
        src = underlying(algebra)
        return cls(algebra, algebra, {n: src.basis_element(n) for n in src.basis.all_names()})

    @classmethod
    def from_generator_images(cls, source, target, generator_images):
        """Extend images of generators multiplicatively over a presented source"""
        src = underlying(source)
        tgt = underlying(target)
        if not src.factorization:
            raise AlgebraInputError(f"{src.label} has no generator presentation")
        images = {}
        for name in src.basis.all_names():
            factors = src.factorization.get(name)
            if factors is None:
                raise AlgebraInputError(f"Basis element '{name}' has no factorization")
            for g in factors:
                if g not in generator_images:
                    raise AlgebraInputError(f"No image given for generator '{g}'")
            images[name] = tgt.multiply_all([generator_images[g] for g in factors])
        return cls(source, target, images)

    def apply(self, x):
        underlying(self.source).check_support(x)
        total = Element.zero(truncated=x.truncated)
        for name, coeff in x.terms.items():
            total = total + self.images[name].scaled(coeff)
        return total

    def matrix(self, degree):
        """Rows of the matrix of the map in degree p"""
        src = underlying(self.source)
        tgt = underlying(self.target)
        columns = [tgt.vector(self.images[name], degree) for name in src.names(degree)]
        return linalg.transpose(columns, len(tgt.names(degree)))

    def preimage(self, y):
        """Some x with f(x) = y, chosen with free coordinates zero, or None"""
        src = underlying(self.source)
        tgt = underlying(self.target)
        total = Element.zero(truncated=y.truncated)
        for degree in sorted({tgt.degree_of(name) for name in y.terms}):
            columns = [tgt.vector(self.images[name], degree) for name in src.names(degree)]
            solution = linalg.solve(columns, tgt.vector(y, degree))
            if solution is None:
                return None
            total = total + src.from_vector(degree, solution)
        return src.element(total.terms, total.truncated)

    def compose(self, other):
        """self after other"""
        return AlgebraMap(other.source, self.target,
                          {name: self.apply(image) for name, image in other.images.items()})

    def power(self, k):
        result = AlgebraMap.identity(self.source)
        for _ in range(k):
            result = self.compose(result)
        return result

    def identity_witness(self):
        """First basis element not fixed by the map, or None"""
        src = underlying(self.source)
        for name in src.basis.all_names():
            if self.images[name] != src.basis_element(name):
                return name
        return None

    def multiplicativity_witness(self):
        """First basis pair (x, y) with f(xy) != f(x)f(y) within truncation, or None"""
        src = underlying(self.source)
        tgt = underlying(self.target)
        names = src.basis.all_names()
        for a in names:
            for b in names:
                if src.degree_of(a) + src.degree_of(b) > src.truncation:
                    continue
                lhs = self.apply(src.product_of_basis(a, b))
                rhs = tgt.multiply(self.images[a], self.images[b])
                if rhs.truncated:
                    continue
                if lhs != rhs:
                    return (a, b)
        return None

    def chain_witness(self):
        """First basis element with f(dx) != d f(x), or None; only for two differential sides"""
        if not (isinstance(self.source, ChainComplexAlgebra) and isinstance(self.target, ChainComplexAlgebra)):
            return None
        src = self.source.algebra
        for name in src.basis.all_names():
            lhs = self.apply(self.source.d(src.basis_element(name)))
            rhs = self.target.d(self.images[name])
            if lhs.truncated or rhs.truncated:
                continue
            if lhs != rhs:
                return name
        return None


def _qualified(label, name):
    return f"{label}.{name}"


def _pair_names(a_alg, b_alg, pairs, qualify, left, right):
    names = {}
    for a, b in pairs:
        a_unit = a == a_alg.unit
        b_unit = b == b_alg.unit
        an = _qualified(left, a) if qualify else a
        bn = _qualified(right, b) if qualify else b
        if a_unit and b_unit:
            names[(a, b)] = a_alg.unit
        elif b_unit:
            names[(a, b)] = an
        elif a_unit:
            names[(a, b)] = bn
        else:
            names[(a, b)] = f"{an}*{bn}"
    return names


def _find_name_collisions(names):
    """Map each colliding name to the list of pairs that produce it"""
    name_to_pairs = {}
    for pair, name in names.items():
        name_to_pairs.setdefault(name, []).append(pair)
    return {name: pairs for name, pairs in name_to_pairs.items() if len(pairs) > 1}


def tensor_product(A, B, max_degree=None, label=None):
    """Graded tensor product A (x) B with the Koszul sign rule

    Args:
        A, B: GradedAlgebra
        max_degree: optional cap on the result's truncation degree
        label: display name of the result

    Returns:
        GradedAlgebra with basis pairs (a, b) named 'a', 'b' or 'a*b'; names are
        qualified as 'A.a' when the plain scheme would collide
    """
    D = A.truncation + B.truncation
    if max_degree is not None:
        D = min(D, max_degree)
    left = A.label
    right = B.label if B.label != A.label else f"{B.label}'"

    pairs_by_degree = []
    for p in range(D + 1):
        pairs = []
        for i in range(min(p, A.truncation), -1, -1):
            j = p - i
            if j > B.truncation:
                continue
            for a in A.names(i):
                for b in B.names(j):
                    pairs.append((a, b))
        pairs_by_degree.append(pairs)
    all_pairs = [pair for pairs in pairs_by_degree for pair in pairs]

    names = _pair_names(A, B, all_pairs, False, left, right)
    if _find_name_collisions(names):
        names = _pair_names(A, B, all_pairs, True, left, right)

    basis = GradedBasis([[names[pair] for pair in pairs] for pairs in pairs_by_degree])

    def embed(a_elem, b_elem, sign):
        terms = {}
        for a, ca in a_elem.terms.items():
            for b, cb in b_elem.terms.items():
                if (a, b) in names:
                    terms[names[(a, b)]] = terms.get(names[(a, b)], linalg.ZERO) + sign * ca * cb
        return terms

    table = {}
    for (a, b) in all_pairs:
        for (a2, b2) in all_pairs:
            degree = A.degree_of(a) + B.degree_of(b) + A.degree_of(a2) + B.degree_of(b2)
            if degree > D:
                continue
            sign = koszul_sign(B.degree_of(b), A.degree_of(a2))
            aa = A.product_of_basis(a, a2)
            bb = B.product_of_basis(b, b2)
            terms = embed(aa, bb, sign)
            table[(names[(a, b)], names[(a2, b2)])] = Element(terms, degree, aa.truncated or bb.truncated)

    generators = {}
    factorization = {}
    if A.factorization and B.factorization:
        gen_names = {}
        for g in A.generators:
            gen_names[("L", g)] = g
        for g in B.generators:
            gen_names[("R", g)] = g
        if len(set(gen_names.values())) < len(gen_names):
            gen_names = {(side, g): _qualified(left if side == "L" else right, g)
                         for side, g in gen_names}
        for (side, g), gname in gen_names.items():
            source = A if side == "L" else B
            image = source.generators[g]
            if side == "L":
                terms = embed(image, B.unit_element(), 1)
            else:
                terms = embed(A.unit_element(), image, 1)
            generators[gname] = Element(terms, image.degree)
        for (a, b) in all_pairs:
            factorization[names[(a, b)]] = (
                tuple(gen_names[("L", g)] for g in A.factorization[a])
                + tuple(gen_names[("R", g)] for g in B.factorization[b])
            )

    tensor_factors = {names[pair]: pair for pair in all_pairs}
    complete = A.complete and B.complete and D == A.truncation + B.truncation
    return GradedAlgebra(basis, table, label or f"{A.label} x {B.label}",
                         generators, factorization, tensor_factors, complete)
