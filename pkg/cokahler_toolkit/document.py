"""Algebra documents: the JSON files every command reads and writes

A document names generators, relations, a differential, distinguished classes
and an optional cyclic action. Polynomials are lists of terms
{"coeff": "p/q", "monomial": [generator names]}, with each monomial read in
written order and then Koszul-normalized.
"""

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from sympy import QQ

from .algebra.cohomology import GroupActionSpec
from .algebra.errors import ActionOrderError, AlgebraInputError, DocumentError
from .algebra.free import (FreeGradedAlgebra, Presentation, build_from_presentation,
                           express_in_generators, presentation_of)
from .algebra.graded import (ChainComplexAlgebra, Element, GradedAlgebra, GradedBasis, format_scalar,
                             underlying)
from .utils import get_logger

LOG = get_logger(__name__)

_FIELDS = ("name", "coefficient_field", "truncation_degree", "generators", "relations",
           "differential", "classes", "action")
_COEFFICIENT = re.compile(r"^-?\d+(/\d+)?$")


@dataclass
class ActionDocument:
    """A generator of Z_order given by the images of the algebra generators

    Generators without an image are fixed.
    """

    order: int
    images: dict = field(default_factory=dict)


@dataclass
class AlgebraDocument:
    """Parsed contents of an algebra document

    Polynomials are kept as written: lists of (QQ coefficient, tuple of generator names).
    """

    name: str
    truncation_degree: int
    generators: list
    relations: list = field(default_factory=list)
    differential: dict = field(default_factory=dict)
    classes: dict = field(default_factory=dict)
    action: ActionDocument = None
    coefficient_field: str = "Q"

    def free_algebra(self):
        return FreeGradedAlgebra(self.generators)

    def polynomial(self, terms, free=None):
        free = free or self.free_algebra()
        return free.polynomial([(coeff, list(names)) for coeff, names in terms])

    def presentation(self, truncation=None):
        """Presentation capped at the given truncation (default: the document's)

        Relations above the cap are dropped and logged at debug level.
        """
        D = self.truncation_degree if truncation is None else truncation
        free = self.free_algebra()
        relations = []
        for terms in self.relations:
            poly = self.polynomial(terms, free)
            degree = free.degree_of_polynomial(poly) if poly else None
            if degree is not None and degree > D:
                LOG.debug("%s: dropping relation %s of degree %d above the truncation degree %d",
                          self.name, free.format_polynomial(poly), degree, D)
                continue
            relations.append(poly)
        differential = {name: self.polynomial(terms, free) for name, terms in self.differential.items()}
        return Presentation(list(free.generators), relations, differential, D, self.name)

    def build(self, max_degree=None):
        """The ChainComplexAlgebra of the document, optionally truncated lower

        Raises:
            DocumentError: max_degree exceeds the document's truncation degree
        """
        if max_degree is not None and max_degree > self.truncation_degree:
            raise DocumentError(
                f"--max-degree {max_degree} exceeds the truncation degree {self.truncation_degree} of {self.name}",
                field="truncation_degree")
        return build_from_presentation(self.presentation(max_degree))

    def _evaluate(self, algebra, terms):
        A = underlying(algebra)
        total = Element.zero()
        for coeff, names in terms:
            value = A.unit_element()
            for name in names:
                factor = A.generators.get(name)
                if factor is None:
                    factor = Element.zero(truncated=True)
                value = A.multiply(value, factor)
            total = total + value.scaled(coeff)
        return A.element(total.terms, total.truncated)

    def class_element(self, algebra, label):
        """The named class as an Element of the built algebra

        Raises:
            DocumentError: no class of that name
        """
        if label not in self.classes:
            known = ", ".join(sorted(self.classes)) or "none"
            raise DocumentError(f"Document {self.name} has no class '{label}' (known: {known})",
                                field=f"classes.{label}")
        return self._evaluate(algebra, self.classes[label])

    def action_spec(self, algebra):
        """GroupActionSpec on the built algebra

        Raises:
            DocumentError: the document has no action
            ActionOrderError: g^order is not the identity, or a smaller power is
        """
        if self.action is None:
            raise DocumentError(f"Document {self.name} has no action", field="action")
        A = underlying(algebra)
        images = {}
        for name in A.generators:
            terms = self.action.images.get(name)
            images[name] = A.generators[name] if terms is None else self._evaluate(A, terms)
        try:
            return GroupActionSpec.from_generator_images(algebra, images, self.action.order)
        except ActionOrderError:
            raise
        except AlgebraInputError as exc:
            raise DocumentError(str(exc), field="action") from exc

    def validate(self):
        """Build the algebra and the action once, turning engine errors into DocumentErrors"""
        try:
            algebra = self.build()
        except AlgebraInputError as exc:
            raise DocumentError(str(exc)) from exc
        if self.action is not None:
            self.action_spec(algebra)
        return algebra

    def to_dict(self):
        result = {
            "name": self.name,
            "coefficient_field": self.coefficient_field,
            "truncation_degree": self.truncation_degree,
            "generators": [{"name": name, "degree": degree} for name, degree in self.generators],
            "relations": [_terms_to_json(terms) for terms in self.relations],
            "differential": {name: _terms_to_json(terms) for name, terms in self.differential.items()},
            "classes": {label: _terms_to_json(terms) for label, terms in self.classes.items()},
        }
        if self.action is not None:
            result["action"] = {
                "order": self.action.order,
                "images": {name: _terms_to_json(terms) for name, terms in self.action.images.items()},
            }
        return result


def _terms_to_json(terms):
    return [{"coeff": format_scalar(coeff), "monomial": list(names)} for coeff, names in terms]


def dump(data):
    return json.dumps(data, indent=2) + "\n"


def serialize(document):
    """Canonical JSON text of a document"""
    return dump(document.to_dict())


class _Parser:
    def __init__(self, data):
        self.data = data
        self.declared = set()

    def expect(self, value, kind, where):
        if kind is int:
            ok = isinstance(value, int) and not isinstance(value, bool)
        else:
            ok = isinstance(value, kind)
        if not ok:
            names = {int: "an integer", str: "a string", list: "a list", dict: "an object"}
            raise DocumentError(f"Expected {names[kind]}, got {json.dumps(value)}", field=where)
        return value

    def keys(self, obj, allowed, required, where):
        self.expect(obj, dict, where)
        for key in obj:
            if key not in allowed:
                raise DocumentError(f"Unknown field '{key}'", field=f"{where}.{key}" if where else key)
        for key in required:
            if key not in obj:
                raise DocumentError(f"Missing field '{key}'", field=f"{where}.{key}" if where else key)

    def coefficient(self, value, where):
        self.expect(value, str, where)
        if not _COEFFICIENT.match(value):
            raise DocumentError(f"Coefficient '{value}' is not of the form 'p' or 'p/q'", field=where)
        numerator, _, denominator = value.partition("/")
        if denominator and int(denominator) == 0:
            raise DocumentError(f"Coefficient '{value}' has a zero denominator", field=where)
        return QQ(int(numerator), int(denominator or 1))

    def terms(self, value, where):
        self.expect(value, list, where)
        terms = []
        for i, term in enumerate(value):
            at = f"{where}[{i}]"
            self.keys(term, ("coeff", "monomial"), ("coeff", "monomial"), at)
            coeff = self.coefficient(term["coeff"], f"{at}.coeff")
            names = self.expect(term["monomial"], list, f"{at}.monomial")
            for j, name in enumerate(names):
                if name not in self.declared:
                    raise DocumentError(f"Undeclared generator '{name}'", field=f"{at}.monomial[{j}]")
            terms.append((coeff, tuple(names)))
        return terms

    def generator_map(self, value, where):
        self.expect(value, dict, where)
        result = {}
        for name, terms in value.items():
            if name not in self.declared:
                raise DocumentError(f"Undeclared generator '{name}'", field=f"{where}.{name}")
            result[name] = self.terms(terms, f"{where}.{name}")
        return result

    def parse(self):
        data = self.data
        self.keys(data, _FIELDS, ("name", "truncation_degree", "generators"), "")
        name = self.expect(data["name"], str, "name")
        field_name = data.get("coefficient_field", "Q")
        if field_name != "Q":
            raise DocumentError(f"Only the coefficient field Q is supported, got {json.dumps(field_name)}",
                                field="coefficient_field")
        truncation = self.expect(data["truncation_degree"], int, "truncation_degree")
        if truncation < 0:
            raise DocumentError("Truncation degree must be non-negative", field="truncation_degree")

        generators = []
        for i, entry in enumerate(self.expect(data["generators"], list, "generators")):
            at = f"generators[{i}]"
            self.keys(entry, ("name", "degree"), ("name", "degree"), at)
            gen_name = self.expect(entry["name"], str, f"{at}.name")
            degree = self.expect(entry["degree"], int, f"{at}.degree")
            if gen_name in self.declared:
                raise DocumentError(f"Generator '{gen_name}' is declared twice", field=f"{at}.name")
            self.declared.add(gen_name)
            generators.append((gen_name, degree))
        try:
            FreeGradedAlgebra(generators)
        except AlgebraInputError as exc:
            raise DocumentError(str(exc), field="generators") from exc

        relations = [self.terms(terms, f"relations[{i}]")
                     for i, terms in enumerate(self.expect(data.get("relations", []), list, "relations"))]
        differential = self.generator_map(data.get("differential", {}), "differential")
        classes = {}
        for label, terms in self.expect(data.get("classes", {}), dict, "classes").items():
            classes[label] = self.terms(terms, f"classes.{label}")

        action = None
        if data.get("action") is not None:
            self.keys(data["action"], ("order", "images"), ("order",), "action")
            order = self.expect(data["action"]["order"], int, "action.order")
            if order < 1:
                raise DocumentError(f"Action order must be positive, got {order}", field="action.order")
            images = self.generator_map(data["action"].get("images", {}), "action.images")
            action = ActionDocument(order, images)

        return AlgebraDocument(name, truncation, generators, relations, differential, classes, action,
                               field_name)


def parse_algebra_document(text, validate=True):
    """Parse and validate an algebra document

    Args:
        text: str or UTF-8 bytes
        validate: also build the algebra and the action, so degree and order errors
                  are reported at parse time

    Returns:
        AlgebraDocument

    Raises:
        DocumentError: malformed JSON, unknown field, undeclared generator, bad coefficient
        ActionOrderError: the action does not have the declared order
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentError(f"Document is not UTF-8: {exc.reason}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"Invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    document = _Parser(data).parse()
    if validate:
        document.validate()
    return document


def load_document(path, validate=True):
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise DocumentError(f"Cannot read {path}: {exc.strerror}") from exc
    LOG.debug("parsing %s", path)
    return parse_algebra_document(raw, validate=validate)


def write_document(document, path):
    Path(path).write_text(serialize(document))


def _poly_to_terms(free, poly):
    return [(c, free.factors(m)) for m, c in sorted(poly.items(), reverse=True)]


def _padded(A, extra):
    """A complete algebra with `extra` zero degrees appended above its truncation"""
    degrees = [list(names) for names in A.basis.degrees] + [[] for _ in range(extra)]
    return GradedAlgebra(GradedBasis(degrees), A.product_table, A.label, A.generators,
                         A.factorization, A.tensor_factors, complete=True)


def document_from_algebra(algebra, classes=None, action=None, label=None):
    """Document presenting a computed algebra by generators and relations

    Args:
        algebra: GradedAlgebra, CohomologyRing or ChainComplexAlgebra
        classes: dict label -> Element of the algebra to embed
        action: optional GroupActionSpec on the algebra to embed
        label: document name

    A complete algebra is padded with empty degrees so the emitted relations
    also kill every monomial above its top, and the rebuilt algebra is complete too.
    """
    A = underlying(algebra)
    presentation = presentation_of(algebra, label)
    formal = not isinstance(algebra, ChainComplexAlgebra) or algebra.is_formal_zero()
    if A.complete and formal and presentation.generators:
        extra = max(degree for _, degree in presentation.generators)
        presentation = presentation_of(_padded(A, extra), label)
    free = presentation.free_algebra()

    def terms_of(x):
        return _poly_to_terms(free, express_in_generators(A, presentation, x))

    embedded = {name: terms_of(x) for name, x in (classes or {}).items()}
    action_document = None
    if action is not None:
        images = {}
        for name, element in presentation.realization.items():
            image = action.apply(element)
            if image != element:
                images[name] = terms_of(image)
        action_document = ActionDocument(action.order, images)
    return AlgebraDocument(
        name=label or A.label,
        truncation_degree=presentation.truncation,
        generators=list(presentation.generators),
        relations=[_poly_to_terms(free, poly) for poly in presentation.relations],
        differential={name: _poly_to_terms(free, poly) for name, poly in presentation.differential.items()},
        classes=embedded,
        action=action_document,
    )


def document_from_sullivan(model, label=None):
    """Document of a Sullivan algebra: free generators, no relations, d on generators"""
    free = model.free
    return AlgebraDocument(
        name=label or model.label,
        truncation_degree=model.truncation,
        generators=list(model.generators),
        differential={name: _poly_to_terms(free, poly) for name, poly in model.differential.items()},
    )
