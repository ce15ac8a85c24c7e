"""Hard Lefschetz checks, mapping-torus models and the co-Kahler Lefschetz map

A co-Kahler model is H = B (x) L(eta): B is the eta-free part (the invariant
cohomology of the Kahler fibre) and eta is the degree-1 circle class. The
contraction i_xi is the odd derivation with i_xi(eta) = 1 and i_xi(B) = 0.
"""

from dataclasses import dataclass, field

from . import linalg
from .cohomology import invariant_subalgebra
from .errors import AlgebraInputError
from .free import exterior_algebra
from .graded import AlgebraMap, Element, tensor_product, underlying
from ..report import FAIL, INCONCLUSIVE, PASS, Report
from ..utils import get_logger

LOG = get_logger(__name__)


@dataclass
class LefschetzEntry:
    """Multiplication map H^p -> H^q of one Lefschetz degree"""

    p: int
    source_degree: int
    target_degree: int
    matrix: list
    rank: int
    domain_dim: int
    codomain_dim: int
    truncated: bool = False
    antidiagonal: bool = True

    @property
    def iso(self):
        return self.rank == self.domain_dim == self.codomain_dim

    @property
    def status(self):
        if self.truncated:
            return INCONCLUSIVE
        return PASS if self.iso and self.antidiagonal else FAIL

    def witness(self):
        return {"p": self.p, "rank": self.rank, "domain": self.domain_dim, "codomain": self.codomain_dim}


@dataclass
class LefschetzReport:
    """Per-degree Lefschetz entries; the verdict passes iff every entry is an isomorphism"""

    n: int
    entries: list = field(default_factory=list)
    kind: str = "hard-lefschetz"

    @property
    def verdict(self):
        statuses = {entry.status for entry in self.entries}
        if FAIL in statuses:
            return FAIL
        if INCONCLUSIVE in statuses:
            return INCONCLUSIVE
        return PASS

    @property
    def cohomologically_kahlerian(self):
        return self.verdict == PASS

    def first_failure(self):
        for entry in self.entries:
            if entry.status != PASS:
                return entry
        return None

    def to_report(self, command, prefix=""):
        report = Report(command)
        for entry in self.entries:
            name = f"{prefix}L^{self.n - entry.p}: H^{entry.source_degree} -> H^{entry.target_degree}"
            detail = f"rank {entry.rank} of {entry.domain_dim}x{entry.codomain_dim}"
            if not entry.antidiagonal:
                detail += ", not block antidiagonal"
            report.add(name, entry.status, None if entry.status == PASS else entry.witness(), detail)
        return report


def _check_omega(A, omega):
    A.check_support(omega)
    if omega.is_zero() or omega.degree != 2:
        raise AlgebraInputError(f"omega must be a nonzero class of degree 2, got {omega}")


def _entry(A, p, source_degree, target_degree, images, truncated=False, antidiagonal=True):
    domain = len(A.names(source_degree))
    if target_degree > A.truncation:
        return LefschetzEntry(p, source_degree, target_degree, [], 0, domain, 0, truncated=True)
    codomain = len(A.names(target_degree))
    columns = [A.vector(image, target_degree) for image in images]
    truncated = truncated or any(image.truncated for image in images)
    rows = linalg.transpose(columns, codomain)
    return LefschetzEntry(p, source_degree, target_degree, rows, linalg.rank(rows, domain),
                          domain, codomain, truncated, antidiagonal)


def hard_lefschetz_check(H, omega, n):
    """Check that multiplication by omega^(n-p) maps H^p onto H^(2n-p) bijectively for 0 <= p <= n

    Args:
        H: GradedAlgebra or CohomologyRing
        omega: degree-2 Element of H
        n: half the formal dimension

    Returns:
        LefschetzReport
    """
    A = underlying(H)
    _check_omega(A, omega)
    report = LefschetzReport(n)
    for p in range(n + 1):
        power = A.power(omega, n - p)
        images = [A.multiply(power, A.basis_element(name)) for name in A.names(p)]
        report.entries.append(_entry(A, p, p, 2 * n - p, images, power.truncated))
    return report


def invariant_kahler_check(H_K, g, omega, n, cross_check=False):
    """Hard Lefschetz on H_K and on its invariant subalgebra under g, with the same omega

    Raises:
        AlgebraInputError: omega is not fixed by the action
    """
    A = underlying(H_K)
    _check_omega(A, omega)
    if not g.is_invariant(omega):
        raise AlgebraInputError(f"omega = {omega} is not invariant under the action")
    invariants, inclusion = invariant_subalgebra(H_K, g, cross_check=cross_check)
    omega_g = inclusion.preimage(omega)

    report = Report("check-kahler")
    report.extend(hard_lefschetz_check(A, omega, n).to_report("check-kahler"), prefix=A.label)
    invariant_report = hard_lefschetz_check(invariants, omega_g, n).to_report("check-kahler")
    for entry in invariant_report.checks:
        if entry.status == FAIL:
            entry.detail += "; invalid input: the invariant algebra must be cohomologically Kahlerian"
    report.extend(invariant_report, prefix=invariants.label)
    report.betti = invariants.dims()
    return report


class CoKahlerModel:
    """A graded algebra B (x) L(eta) with distinguished omega and eta

    Args:
        algebra: GradedAlgebra of top degree 2n + 1
        omega: degree-2 Element with no eta-component
        eta: degree-1 Element with eta * eta = 0
        n: complex dimension of the Kahler part
        base_names: per-degree lists of basis names spanning B
        base: optional GradedAlgebra B itself

    Raises:
        AlgebraInputError: some degree is not B^p + eta * B^(p-1), or omega, eta
                           violate the structural conditions
    """

    def __init__(self, algebra, omega, eta, n, base_names, base=None):
        self.algebra = algebra
        self.omega = omega
        self.eta = eta
        self.n = n
        self.base_names = [list(names) for names in base_names]
        self.base = base
        A = algebra
        A.check_support(eta)
        if eta.is_zero() or eta.degree != 1:
            raise AlgebraInputError(f"eta must be a nonzero class of degree 1, got {eta}")
        _check_omega(A, omega)
        if not A.multiply(eta, eta).is_zero():
            raise AlgebraInputError("eta * eta must vanish")
        while len(self.base_names) <= A.truncation:
            self.base_names.append([])

        self._decomposition = []
        for p in range(A.truncation + 1):
            columns = [A.vector(A.basis_element(b), p) for b in self.base_names[p]]
            if p > 0:
                columns += [A.vector(A.multiply(eta, A.basis_element(b)), p) for b in self.base_names[p - 1]]
            dim = len(A.names(p))
            if len(columns) != dim or linalg.rank(linalg.transpose(columns, dim), len(columns)) != dim:
                raise AlgebraInputError(f"{A.label} is not B (x) L(eta) in degree {p}")
            self._decomposition.append(columns)

        if not self.contract(omega).is_zero():
            raise AlgebraInputError(f"omega = {omega} has an eta-component")
        top = 2 * n + 1
        if top > A.truncation or len(A.names(top)) != 1 or A.top_degree() != top:
            raise AlgebraInputError(f"{A.label} must have a one-dimensional top degree {top}")
        volume = A.multiply(A.power(omega, n), eta)
        if volume.is_zero():
            raise AlgebraInputError("omega^n * eta must span the top degree")

    @classmethod
    def from_presented_algebra(cls, algebra, eta_generator, omega, n):
        """Model on a presented algebra where eta is a generator and B is spanned by eta-free monomials"""
        A = algebra
        if eta_generator not in A.generators:
            raise AlgebraInputError(f"'{eta_generator}' is not a generator of {A.label}")
        if not A.factorization:
            raise AlgebraInputError(f"{A.label} has no monomial basis to split along eta")
        base_names = [[name for name in A.names(p) if eta_generator not in A.factorization[name]]
                      for p in range(A.truncation + 1)]
        return cls(A, omega, A.generators[eta_generator], n, base_names)

    @property
    def top_degree(self):
        return 2 * self.n + 1

    def _split_coordinates(self, x, degree):
        A = self.algebra
        solution = linalg.solve(self._decomposition[degree], A.vector(x, degree))
        k = len(self.base_names[degree])
        return solution[:k], solution[k:]

    def contract(self, x):
        """i_xi(x): i_xi(b) = 0 and i_xi(eta * b) = b for b in B"""
        A = self.algebra
        A.check_support(x)
        total = Element.zero(truncated=x.truncated)
        for degree in sorted({A.degree_of(name) for name in x.terms}):
            _, eta_part = self._split_coordinates(A.homogeneous_part(x, degree), degree)
            for b, c in zip(self.base_names[degree - 1] if degree > 0 else [], eta_part):
                total = total + A.basis_element(b).scaled(c)
        return A.element(total.terms, total.truncated)

    def eta_split(self, x):
        """(x1, x2) with x2 = eta * i_xi(x) and x1 = x - x2 eta-free"""
        A = self.algebra
        x2 = A.multiply(self.eta, self.contract(x))
        x1 = x - x2
        return A.element(x1.terms, x1.truncated), x2

    def omega_power(self, k):
        """omega^k, taken as zero once its degree exceeds the top degree"""
        A = self.algebra
        if 2 * k > min(self.top_degree, A.truncation):
            return Element.zero()
        return A.power(self.omega, k)

    def base_betti(self):
        return [len(names) for names in self.base_names]

    def base_inclusion(self):
        """B -> algebra, sending the k-th basis element of B^p to base_names[p][k]"""
        if self.base is None:
            raise AlgebraInputError(f"{self.algebra.label} was not built from a base algebra")
        images = {}
        for p in range(self.base.truncation + 1):
            for name, target in zip(self.base.names(p), self.base_names[p]):
                images[name] = self.algebra.basis_element(target)
        return AlgebraMap(self.base, self.algebra, images)

    def __repr__(self):
        return f"CoKahlerModel({self.algebra.label}, n={self.n}, betti={self.algebra.dims()})"


def contract_xi(model, x):
    return model.contract(x)


def eta_split(model, x):
    return model.eta_split(x)


def _lefschetz_image(model, p, a):
    A = model.algebra
    first = A.multiply(model.omega_power(model.n - p + 1), model.contract(a))
    second = A.multiply(model.omega_power(model.n - p), A.multiply(model.eta, a))
    return first + second


def cokahler_lefschetz(model, p):
    """The map alpha -> omega^(n-p+1) i_xi(alpha) + omega^(n-p) eta alpha from H^p to H^(2n+1-p)

    Also checks that it swaps the summands B and eta * B.

    Raises:
        AlgebraInputError: p outside 0..n
    """
    if not 0 <= p <= model.n:
        raise AlgebraInputError(f"Lefschetz degree p must lie in 0..{model.n}, got {p}")
    A = model.algebra
    images = [_lefschetz_image(model, p, A.basis_element(name)) for name in A.names(p)]
    antidiagonal = True
    for b in model.base_names[p]:
        x1, _ = model.eta_split(_lefschetz_image(model, p, A.basis_element(b)))
        antidiagonal = antidiagonal and x1.is_zero()
    if p > 0:
        for b in model.base_names[p - 1]:
            image = _lefschetz_image(model, p, A.multiply(model.eta, A.basis_element(b)))
            antidiagonal = antidiagonal and model.eta_split(image)[1].is_zero()
    return _entry(A, p, p, model.top_degree - p, images, antidiagonal=antidiagonal)


def cokahler_lefschetz_check(model):
    report = LefschetzReport(model.n, kind="cokahler-lefschetz")
    for p in range(model.n + 1):
        report.entries.append(cokahler_lefschetz(model, p))
    return report


def _left_embedding(product, right_unit):
    """Names of the product basis elements a (x) 1, keyed by a"""
    return {a: name for name, (a, b) in product.tensor_factors.items() if b == right_unit}


def mapping_torus_algebra(H_K, g, omega, n=None, cross_check=False, label=None):
    """The co-Kahler model H_K^G (x) L(eta) of a Kahler mapping torus

    Args:
        H_K: GradedAlgebra or CohomologyRing of the Kahler fibre
        g: GroupActionSpec on H_K
        omega: invariant degree-2 Element of H_K
        n: complex dimension; defaults to half the top degree of H_K

    Returns:
        CoKahlerModel whose base is the invariant subalgebra
    """
    A = underlying(H_K)
    if n is None:
        top = A.top_degree()
        if top % 2:
            raise AlgebraInputError(f"{A.label} has odd top degree {top}; pass n explicitly")
        n = top // 2
    if not g.is_invariant(omega):
        raise AlgebraInputError(f"omega = {omega} is not invariant under the action")
    invariants, inclusion = invariant_subalgebra(H_K, g, cross_check=cross_check)
    circle = exterior_algebra(["eta"], label="S1")
    M = tensor_product(invariants, circle, label=label or f"{A.label}_phi")

    embed = _left_embedding(M, circle.unit)
    eta_name = next(name for name, (a, b) in M.tensor_factors.items()
                    if a == invariants.unit and b == "eta")
    omega_g = inclusion.preimage(omega)
    omega_m = M.element({embed[name]: c for name, c in omega_g.terms.items()})
    base_names = [[embed[name] for name in invariants.names(p)] for p in range(M.truncation + 1)]
    model = CoKahlerModel(M, omega_m, M.basis_element(eta_name), n, base_names, base=invariants)
    LOG.debug("mapping torus of %s: betti %s", A.label, M.dims())
    return model


def betti_relation_checks(model):
    """Betti-number relations of a co-Kahler model

    Checks b_1 <= ... <= b_n = b_(n+1), that b_(2i+1) - b_(2i) is even for i <= n
    and non-negative for i <= n/2, and b_s = bbar_s + bbar_(s-1) against the base.
    """
    n = model.n
    betti = model.algebra.dims()

    def b(s):
        return betti[s] if 0 <= s < len(betti) else 0

    report = Report("betti-relations", betti=betti[:model.top_degree + 1])
    increasing = all(b(s) <= b(s + 1) for s in range(1, n))
    report.check(f"b_1 <= ... <= b_{n}", increasing, [b(s) for s in range(1, n + 1)])
    report.check(f"b_{n} = b_{n + 1}", b(n) == b(n + 1), [b(n), b(n + 1)])
    for i in range(n + 1):
        diff = b(2 * i + 1) - b(2 * i)
        report.check(f"b_{2 * i + 1} - b_{2 * i} even", diff % 2 == 0, diff)
        if i <= n // 2:
            report.check(f"b_{2 * i + 1} - b_{2 * i} >= 0", diff >= 0, diff)
    base = model.base_betti()

    def bbar(s):
        return base[s] if 0 <= s < len(base) else 0

    mismatch = [s for s in range(len(betti)) if b(s) != bbar(s) + bbar(s - 1)]
    report.check("b_s = bbar_s + bbar_(s-1)", not mismatch,
                 {"degree": mismatch[0], "b": b(mismatch[0]),
                  "bbar": [bbar(mismatch[0]), bbar(mismatch[0] - 1)]} if mismatch else None)
    return report
