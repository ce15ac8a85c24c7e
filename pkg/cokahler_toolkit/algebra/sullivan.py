"""Sullivan minimal models of formal algebras, quasi-isomorphism checks and model comparison

A SullivanAlgebra is a free graded-commutative algebra on well-ordered
generators with a differential given on generators. Models are built degree by
degree: closed generators fill the cokernel of H^n(model) -> H^n, and
generators whose differentials are cocycles kill the kernel of
H^(n+1)(model) -> H^(n+1).
"""

import random
from dataclasses import dataclass, field

from . import linalg
from .cohomology import cocycle_classes, cohomology, invariant_subalgebra
from .errors import AlgebraInputError, ModelConstructionError
from .free import FreeGradedAlgebra, Presentation, build_from_presentation
from .graded import AlgebraMap, ChainComplexAlgebra, Element, underlying
from .ordering import is_well_ordered, well_order
from ..report import FAIL, INCONCLUSIVE, PASS, Report
from ..utils import get_logger

LOG = get_logger(__name__)


def _pad(poly, extra):
    return {m + (0,) * extra: c for m, c in poly.items()}


def _shift(poly, extra):
    return {(0,) * extra + m: c for m, c in poly.items()}


class SullivanAlgebra:
    """(L V, d): free on generators with d(x) in the subalgebra on earlier generators

    Args:
        generators: sequence of (name, degree)
        differential: dict name -> polynomial over the generators (exponent tuples,
                      in the order given); generators out of well-order are re-sorted
        truncation: degree through which the algebra models something
        label: display name

    Raises:
        AlgebraInputError: a dependency cycle among differentials, a differential of
                           the wrong degree, or d(d(x)) != 0
    """

    def __init__(self, generators, differential=None, truncation=0, label="M"):
        free = FreeGradedAlgebra(generators)
        differential = {name: dict(value) for name, value in (differential or {}).items() if value}
        for name in differential:
            free.index_of(name)
        if not is_well_ordered(free.generators, differential):
            order = well_order(free.generators, differential)
            degree = dict(free.generators)
            reordered = FreeGradedAlgebra([(name, degree[name]) for name in order])
            differential = {name: _rewrite(free, reordered, value) for name, value in differential.items()}
            free = reordered
        self.free = free
        self.generators = list(free.generators)
        self.differential = differential
        self.truncation = truncation
        self.label = label
        self._chains = {}

        for name, value in differential.items():
            expected = free.degrees[free.index_of(name)] + 1
            if free.degree_of_polynomial(value) != expected:
                raise AlgebraInputError(f"d({name}) must be homogeneous of degree {expected}")
            dd = free.differential(value, differential)
            if dd:
                raise AlgebraInputError(f"d(d({name})) = {free.format_polynomial(dd)} is not zero")

    def d(self, name):
        return self.differential.get(name, {})

    def degree_of(self, name):
        return self.free.degrees[self.free.index_of(name)]

    def generators_in_degree(self, n):
        return [name for name, degree in self.generators if degree == n]

    def generator_counts(self, N):
        return [len(self.generators_in_degree(n)) for n in range(1, N + 1)]

    def minimality_witness(self):
        """First generator whose differential has a linear term, or None"""
        for name, value in self.differential.items():
            if any(sum(m) == 1 for m in value):
                return name
        return None

    def is_minimal(self):
        return self.minimality_witness() is None

    def chain(self, truncation=None):
        """The underlying chain complex algebra, truncated (default: truncation + 1)"""
        truncation = self.truncation + 1 if truncation is None else truncation
        if truncation not in self._chains:
            presentation = Presentation(list(self.generators), [], dict(self.differential),
                                        truncation, self.label)
            self._chains[truncation] = build_from_presentation(presentation)
        return self._chains[truncation]

    def tensor(self, other, label=None):
        """Tensor product: generators concatenated, qualified as 'label.name' on collision"""
        names = [name for name, _ in self.generators]
        other_names = [name for name, _ in other.generators]
        if set(names) & set(other_names):
            left = [(f"{self.label}.{n}", d) for n, d in self.generators]
            right_label = other.label if other.label != self.label else f"{other.label}'"
            right = [(f"{right_label}.{n}", d) for n, d in other.generators]
        else:
            left, right = list(self.generators), list(other.generators)
        differential = {}
        for (name, _), (new, _) in zip(self.generators, left):
            if name in self.differential:
                differential[new] = _pad(self.differential[name], len(right))
        for (name, _), (new, _) in zip(other.generators, right):
            if name in other.differential:
                differential[new] = _shift(other.differential[name], len(left))
        return SullivanAlgebra(left + right, differential, min(self.truncation, other.truncation),
                               label or f"{self.label} x {other.label}")

    def format_differential(self):
        return {name: self.free.format_polynomial(self.d(name)) for name, _ in self.generators}

    def __repr__(self):
        return f"SullivanAlgebra({self.label}, generators={self.generators})"


def _rewrite(source_free, target_free, poly):
    """Re-express a polynomial after a change of generator order"""
    result = {}
    for m, c in poly.items():
        result = target_free.add(result, target_free.product_of_names(source_free.factors(m)), c)
    return result


class ModelMap:
    """A multiplicative map from a Sullivan algebra, given on generators

    Args:
        source: SullivanAlgebra
        target: GradedAlgebra, CohomologyRing or ChainComplexAlgebra
        images: dict generator name -> Element of the target
    """

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = dict(images)
        for name, _ in source.generators:
            if name not in self.images:
                raise AlgebraInputError(f"Model map has no image for generator '{name}'")

    def algebra_map(self, truncation=None):
        chain = self.source.chain(truncation)
        target = self.target if isinstance(self.target, ChainComplexAlgebra) else underlying(self.target)
        return AlgebraMap.from_generator_images(chain, target, self.images)


class _ModelBuilder:
    def __init__(self, A, N, label):
        self.A = A
        self.N = N
        self.label = label
        self.generators = []
        self.differential = {}
        self.images = {}
        self.taken = set()

    def _chain(self):
        presentation = Presentation(list(self.generators), [], dict(self.differential), self.N + 2, self.label)
        return build_from_presentation(presentation)

    def _image(self, chain, x):
        """Value in A of an element of the model's chain algebra"""
        A = self.A
        total = Element.zero()
        for name, coeff in x.terms.items():
            factors = chain.algebra.factorization[name]
            total = total + A.multiply_all([self.images[g] for g in factors]).scaled(coeff)
        return total

    def _classes_and_images(self, degree):
        chain = self._chain()
        classes = [chain.algebra.from_vector(degree, vec) for vec in cocycle_classes(chain, degree)]
        columns = [self.A.vector(self._image(chain, z), degree) for z in classes]
        return chain, classes, columns

    def _fresh(self, preferred, degree, prefix="g"):
        name = preferred
        if not name or not _is_identifier(name) or name in self.taken:
            k = 1
            while f"{prefix}{degree}_{k}" in self.taken:
                k += 1
            name = f"{prefix}{degree}_{k}"
        self.taken.add(name)
        return name

    def _append(self, new):
        """Append generators given as (name, degree, d-polynomial, image)"""
        for name in list(self.differential):
            self.differential[name] = _pad(self.differential[name], len(new))
        for name, degree, poly, image in new:
            self.generators.append((name, degree))
            if poly:
                self.differential[name] = _pad(poly, len(new))
            self.images[name] = image

    def add_cokernel_generators(self, n):
        A = self.A
        _, _, columns = self._classes_and_images(n)
        new = []
        for j in linalg.complement_indices(columns, len(A.names(n))):
            basis_name = A.names(n)[j]
            new.append((self._fresh(basis_name, n), n, {}, A.basis_element(basis_name)))
        if new:
            LOG.debug("degree %d: closed generators %s", n, [g[0] for g in new])
            self._append(new)

    def kill_kernel(self, n, max_rounds):
        A = self.A
        for round_number in range(1, max_rounds + 2):
            chain, classes, columns = self._classes_and_images(n + 1)
            dim = len(A.names(n + 1))
            kernel = linalg.nullspace(linalg.transpose(columns, dim), len(classes)) if classes else []
            if not kernel:
                return
            cocycles = [sum((classes[i].scaled(c) for i, c in enumerate(vec) if c != 0), Element.zero())
                        for vec in kernel]
            if round_number > max_rounds:
                raise ModelConstructionError(
                    f"Minimal model does not converge in degree {n}: classes "
                    f"{', '.join(str(z) for z in cocycles)} keep appearing after {max_rounds} rounds",
                    degree=n, classes=[str(z) for z in cocycles])
            free = FreeGradedAlgebra(self.generators)
            new = []
            for z in cocycles:
                poly = {}
                for name, c in z.terms.items():
                    poly = free.add(poly, free.product_of_names(chain.algebra.factorization[name]), c)
                new.append((self._fresh(None, n, prefix="v"), n, poly, Element.zero()))
            LOG.debug("degree %d round %d: killing generators %s", n, round_number, [g[0] for g in new])
            self._append(new)

    def result(self):
        model = SullivanAlgebra(self.generators, self.differential, self.N, self.label)
        return model, ModelMap(model, self.A, self.images)


def _is_identifier(name):
    try:
        FreeGradedAlgebra([(name, 1)])
    except AlgebraInputError:
        return False
    return True


def minimal_model_of_formal(H, N, seed=None, max_rounds=8, label=None):
    """Minimal model of (H, 0) through degree N

    Args:
        H: GradedAlgebra or CohomologyRing; a ChainComplexAlgebra is replaced by its
           cohomology (the formal case)
        N: model degree
        seed: when given, H's basis order is shuffled with this seed first
        max_rounds: kernel-killing rounds allowed per degree
        label: display name of the model

    Returns:
        (SullivanAlgebra, ModelMap)

    Raises:
        ModelConstructionError: new kernel classes keep appearing in one degree
    """
    if isinstance(H, ChainComplexAlgebra):
        H = cohomology(H)
    A = underlying(H)
    if seed is not None:
        A = A.reordered(seed)
    if N < 1:
        raise AlgebraInputError(f"Model degree must be at least 1, got {N}")
    if N > A.truncation and not A.complete:
        raise AlgebraInputError(f"Model degree {N} exceeds the truncation degree {A.truncation} of {A.label}")
    builder = _ModelBuilder(A, N, label or f"M({A.label})")
    for n in range(1, N + 1):
        builder.add_cokernel_generators(n)
        builder.kill_kernel(n, max_rounds)
    model, model_map = builder.result()
    LOG.debug("minimal model of %s: %s", A.label, model.generators)
    return model, model_map


def verify_quasi_iso(model_map, N):
    """Check that a model map induces isomorphisms H^p(model) -> H^p(target)

    Degrees below N must be bijective; a non-bijective degree N is reported
    inconclusive since it depends on data above the truncation.
    """
    S = model_map.source
    chain = S.chain(N + 1)
    f = model_map.algebra_map(N + 1)
    ring = cohomology(chain)
    target = model_map.target
    if isinstance(target, ChainComplexAlgebra):
        target_ring = cohomology(target)
        T = target_ring.algebra
        project = target_ring.class_of
    else:
        T = underlying(target)
        target_ring = None

        def project(x):
            return x

    report = Report("verify-quasi-iso")
    broken = None
    for name, _ in S.generators:
        x = chain.algebra.generators.get(name)
        if x is None:
            continue
        lhs = f.apply(chain.d(x))
        rhs = target.d(model_map.images[name]) if target_ring is not None else Element.zero()
        if not lhs.truncated and lhs != rhs:
            broken = name
            break
    report.check("chain map", broken is None, broken)
    report.check("minimal", S.is_minimal(), S.minimality_witness())

    for p in range(N + 1):
        classes = ring.algebra.names(p)
        flagged = p > T.truncation and not T.complete
        columns = []
        for h in classes:
            image = project(f.apply(ring.representatives[h]))
            flagged = flagged or image.truncated
            columns.append(T.vector(image, p))
        codomain = len(T.names(p))
        r = linalg.rank(linalg.transpose(columns, codomain), len(classes))
        bijective = r == len(classes) == codomain
        if bijective:
            status = PASS
        elif p == N or flagged:
            status = INCONCLUSIVE
        else:
            status = FAIL
        report.add(f"H^{p}", status,
                   None if status == PASS else {"degree": p, "rank": r, "model": len(classes), "target": codomain},
                   "truncation-unreliable" if p == N and status != PASS else "")
    return report


@dataclass
class ModelFingerprint:
    """Generator counts dim V^n and ranks of the quadratic parts of d on V^n, for n = 1..N"""

    generator_counts: list = field(default_factory=list)
    quadratic_ranks: list = field(default_factory=list)

    def to_dict(self):
        return {"generator_counts": list(self.generator_counts), "quadratic_ranks": list(self.quadratic_ranks)}

    def first_difference(self, other):
        for key in ("generator_counts", "quadratic_ranks"):
            mine, theirs = getattr(self, key), getattr(other, key)
            for n, (a, b) in enumerate(zip(mine, theirs), start=1):
                if a != b:
                    return {"field": key, "degree": n, "left": a, "right": b}
        return None


def model_fingerprint(S, N):
    free = S.free
    counts = S.generator_counts(N)
    ranks = []
    for n in range(1, N + 1):
        quadratic = [m for m in free.monomials(n + 1) if sum(m) == 2]
        position = {m: i for i, m in enumerate(quadratic)}
        rows = []
        for name in S.generators_in_degree(n):
            vec = linalg.zero_vector(len(quadratic))
            for m, c in S.d(name).items():
                if m in position:
                    vec[position[m]] = c
            rows.append(vec)
        ranks.append(linalg.rank(rows, len(quadratic)))
    return ModelFingerprint(counts, ranks)


@dataclass
class IsomorphismResult:
    status: str
    images: dict = None
    reason: str = ""


def _substitute(source, target_free, images, poly):
    """f(poly) for f given by images of source generators as target polynomials"""
    result = {}
    for m, c in poly.items():
        value = target_free.one()
        for name in source.free.factors(m):
            value = target_free.multiply(value, images[name])
        result = target_free.add(result, value, c)
    return result


def find_isomorphism(S1, S2, N, seed=0, attempts=24):
    """Bounded search for an isomorphism S1 -> S2 through degree N

    Generators of S1 are mapped in well-order. For each one, d2 f(x) = f(d1 x) is
    solved over the monomials of S2 of degree |x|; candidates are the particular
    solution, its shifts by kernel vectors and seeded small random combinations.
    A candidate is kept when the linear parts stay independent degreewise.
    """
    fp1, fp2 = model_fingerprint(S1, N), model_fingerprint(S2, N)
    difference = fp1.first_difference(fp2)
    if difference is not None:
        return IsomorphismResult(FAIL, None, f"fingerprints differ: {difference}")

    rng = random.Random(seed)
    free2 = S2.free
    images = {}
    linear_parts = {}
    for name, degree in S1.generators:
        if degree > N:
            continue
        monomials = free2.monomials(degree)
        target = _substitute(S1, free2, images, S1.d(name))
        columns = [free2.vector(free2.differential({m: linalg.ONE}, S2.differential), degree + 1)
                   for m in monomials]
        particular = linalg.solve(columns, free2.vector(target, degree + 1))
        if particular is None:
            return IsomorphismResult(INCONCLUSIVE, None, f"no chain-compatible image for '{name}'")
        kernel = linalg.nullspace(linalg.transpose(columns, len(free2.monomials(degree + 1))), len(monomials))

        linear_index = [i for i, m in enumerate(monomials) if sum(m) == 1]
        chosen = linear_parts.setdefault(degree, [])

        def candidates():
            yield particular
            for k in kernel:
                yield [a + b for a, b in zip(particular, k)]
            for _ in range(attempts):
                vec = list(particular)
                for k in kernel:
                    c = rng.randint(-2, 2)
                    vec = [a + c * b for a, b in zip(vec, k)]
                yield vec

        found = None
        for vec in candidates():
            linear = [vec[i] for i in linear_index]
            if linalg.rank(chosen + [linear], len(linear_index)) == len(chosen) + 1:
                found = vec
                chosen.append(linear)
                break
        if found is None:
            return IsomorphismResult(INCONCLUSIVE, None, f"no candidate keeps the linear part injective at '{name}'")
        images[name] = free2.from_vector(degree, found)

    for name, degree in S1.generators:
        if degree > N:
            continue
        lhs = free2.differential(images[name], S2.differential)
        if lhs != _substitute(S1, free2, images, S1.d(name)):
            return IsomorphismResult(INCONCLUSIVE, None, f"image of '{name}' is not a chain map")
    return IsomorphismResult(PASS, images)


def compare_models(S1, S2, N, seed=0, command="compare-models"):
    report = Report(command)
    fp1, fp2 = model_fingerprint(S1, N), model_fingerprint(S2, N)
    difference = fp1.first_difference(fp2)
    report.check("fingerprints agree", difference is None, difference)
    report.data["fingerprint"] = fp1.to_dict()
    if difference is None:
        result = find_isomorphism(S1, S2, N, seed=seed)
        report.add("explicit isomorphism", result.status, detail=result.reason)
        if result.status == PASS:
            report.data["isomorphism"] = {name: S2.free.format_polynomial(poly)
                                          for name, poly in result.images.items()}
    return report


def circle_model(truncation=1):
    """L(eta) with |eta| = 1 and d = 0"""
    return SullivanAlgebra([("eta", 1)], {}, truncation, label="S1")


def tensor_structure_check(inclusion, eta, N):
    """H_M = H_KG (x) L(eta) as rings, through degree N

    Args:
        inclusion: AlgebraMap H_KG -> H_M
        eta: degree-1 Element of H_M

    The inclusion must be multiplicative, eta must square to zero, and in every
    degree p the images of H_KG^p and eta * H_KG^(p-1) must together form a
    basis of H_M^p.
    """
    base, total = underlying(inclusion.source), underlying(inclusion.target)
    total.check_support(eta)
    if eta.is_zero() or eta.degree != 1:
        raise AlgebraInputError(f"eta must be a nonzero class of degree 1, got {eta}")
    report = Report("tensor-structure")
    pair = inclusion.multiplicativity_witness()
    report.check("H_KG -> H_M is multiplicative", pair is None, pair and {"left": pair[0], "right": pair[1]})
    square = total.multiply(eta, eta)
    report.check("eta^2 = 0", square.is_zero(), {"eta^2": square}, inconclusive=square.truncated)

    def base_names(q):
        return base.names(q) if 0 <= q <= base.truncation else []

    failure = None
    unreliable = []
    for p in range(min(N, total.truncation) + 1):
        if p > base.truncation and not base.complete:
            unreliable.append(p)
            continue
        products = [total.multiply(eta, inclusion.images[b]) for b in base_names(p - 1)]
        if any(x.truncated for x in products):
            unreliable.append(p)
            continue
        columns = [total.vector(inclusion.images[b], p) for b in base_names(p)]
        columns += [total.vector(x, p) for x in products]
        dim = len(total.names(p))
        rank = linalg.rank(columns, dim)
        if len(columns) != dim or rank != dim:
            failure = {"degree": p, "dimension": dim, "summands": len(columns), "rank": rank}
            break
    name = "H_M^p = H_KG^p + eta * H_KG^(p-1)"
    if failure is not None:
        report.add(name, FAIL, failure)
    elif unreliable:
        report.add(name, INCONCLUSIVE, {"degrees": unreliable}, "truncation-unreliable")
    else:
        report.add(name, PASS)
    return report


def model_tensor_split_check(inclusion, eta, N, seed=0):
    """Model of H_M against model(H_KG) (x) L(eta), through degree N

    Args:
        inclusion: AlgebraMap H_KG -> H_M
        eta: degree-1 Element of H_M

    The tensor structure of H_M is checked first; when it fails no models are built.
    """
    base, total = underlying(inclusion.source), underlying(inclusion.target)
    report = Report("check-split")
    b, m = base.dims(), total.dims()

    def at(vec, s):
        return vec[s] if 0 <= s < len(vec) else 0

    mismatch = [s for s in range(min(len(m), N + 1)) if at(m, s) != at(b, s) + at(b, s - 1)]
    report.check("Betti numbers of H_M match H_KG (x) L(eta)", not mismatch,
                 {"degree": mismatch[0]} if mismatch else None)
    report.extend(tensor_structure_check(inclusion, eta, N))
    if report.verdict == FAIL:
        return report

    base_model, base_map = minimal_model_of_formal(base, N, label="M_KG")
    total_model, total_map = minimal_model_of_formal(total, N, label="M_M")
    report.extend(verify_quasi_iso(base_map, N), prefix="M_KG")
    report.extend(verify_quasi_iso(total_map, N), prefix="M_M")
    left = base_model.tensor(circle_model(N), label="M_KG x S1")
    report.extend(compare_models(left, total_model, N, seed=seed))
    report.data["fingerprint"] = model_fingerprint(total_model, N).to_dict()
    return report


def compare_presentations(H_K1, g1, H_K2, g2, N, seed=0):
    """Two presentations of one co-Kahler manifold must have isomorphic invariant algebras"""
    first, _ = invariant_subalgebra(H_K1, g1, label="H1^G")
    second, _ = invariant_subalgebra(H_K2, g2, label="H2^G")
    report = Report("compare-presentations")
    depth = min(N, first.truncation, second.truncation)
    report.check("invariant Betti numbers agree", first.dims()[:depth + 1] == second.dims()[:depth + 1],
                 {"first": first.dims(), "second": second.dims()})
    model1, _ = minimal_model_of_formal(first, depth, label="M1")
    model2, _ = minimal_model_of_formal(second, depth, label="M2")
    report.extend(compare_models(model1, model2, depth, seed=seed))
    return report
