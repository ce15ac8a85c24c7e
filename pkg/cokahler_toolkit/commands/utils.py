"""Utility functions shared by the cokahler commands"""

from dataclasses import dataclass

from ..algebra.cohomology import GroupActionSpec, cohomology, induced_action
from ..algebra.errors import AlgebraInputError, DocumentError
from ..algebra.lefschetz import CoKahlerModel, mapping_torus_algebra
from ..document import load_document
from ..utils import configure_logging, get_logger

__all__ = ["Options", "get_logger", "configure_logging", "LoadedAlgebra", "load_algebra",
           "kahler_fibre", "cokahler_model", "complex_dimension"]


@dataclass
class Options:
    """Command-line flags shared by every command"""

    out: str = None
    format: str = "text"
    max_degree: int = None
    omega: str = "omega"
    eta: str = "eta"
    dim: int = None
    batch: str = None
    debug: bool = False
    verbose: bool = False
    timing: bool = False

    @property
    def structured(self):
        return self.format == "structured"


@dataclass
class LoadedAlgebra:
    """A document with its cochain algebra and, when d is nonzero, its cohomology ring

    Attributes:
        document: the AlgebraDocument
        chain: ChainComplexAlgebra built from the document
        ring: CohomologyRing of the chain, or None when d = 0
    """

    document: object
    chain: object
    ring: object = None

    @property
    def cohomology(self):
        """H as a GradedAlgebra"""
        return self.ring.algebra if self.ring is not None else self.chain.algebra

    @property
    def name(self):
        return self.document.name

    def named_class(self, label):
        """A document class as an Element of H"""
        element = self.document.class_element(self.chain, label)
        if self.ring is None:
            return element
        try:
            return self.ring.class_of(element)
        except AlgebraInputError as exc:
            raise DocumentError(f"Class '{label}' is not closed: {exc}", field=f"classes.{label}") from exc

    def action(self):
        """The document's action on H (the trivial action when none is given)"""
        if self.document.action is None:
            return GroupActionSpec.trivial(self.cohomology)
        g = self.document.action_spec(self.chain)
        if self.ring is None:
            return g
        return induced_action(self.ring, g)


def load_algebra(path, options, cap=True):
    """Parse a document and build its algebra, truncated at --max-degree when cap is set"""
    document = load_document(path)
    chain = document.build(options.max_degree if cap else None)
    ring = None if chain.is_formal_zero() else cohomology(chain)
    return LoadedAlgebra(document, chain, ring)


def complex_dimension(H, options):
    """n from --dim, else half the top degree of H"""
    if options.dim is not None:
        return options.dim
    top = H.top_degree()
    if top % 2:
        raise AlgebraInputError(f"{H.label} has odd top degree {top}; pass --dim")
    return top // 2


def kahler_fibre(path, options, loaded=None):
    """(loaded, H_K, g, omega, n) for a Kahler fibre document with an action"""
    loaded = loaded or load_algebra(path, options)
    H = loaded.cohomology
    return loaded, H, loaded.action(), loaded.named_class(options.omega), complex_dimension(H, options)


def cokahler_model(path, options):
    """A co-Kahler model from either a fibre with an action or an emitted model document

    A document with an action is taken as the Kahler fibre and its mapping torus is
    built. Otherwise the document is a model whose --eta class is a generator.
    """
    loaded = load_algebra(path, options)
    if loaded.document.action is not None:
        loaded, H, g, omega, n = kahler_fibre(path, options, loaded)
        return mapping_torus_algebra(H, g, omega, n, cross_check=options.debug,
                                     label=f"{loaded.name}_phi")
    H = loaded.cohomology
    eta = loaded.named_class(options.eta)
    omega = loaded.named_class(options.omega)
    generator = next((name for name, element in H.generators.items() if element == eta), None)
    if generator is None:
        raise DocumentError(f"Class '{options.eta}' must be one of the generators", field=f"classes.{options.eta}")
    if options.dim is not None:
        n = options.dim
    else:
        top = H.top_degree()
        if top % 2 == 0:
            raise AlgebraInputError(f"{H.label} has even top degree {top}; pass --dim")
        n = (top - 1) // 2
    return CoKahlerModel.from_presented_algebra(H, generator, omega, n)
