"""cohomology, invariants and poincare-duality commands"""

import sys

from ..algebra.cohomology import cohomology, induced_action, invariant_subalgebra, poincare_duality_check
from ..algebra.errors import AlgebraInputError, DocumentError
from ..document import document_from_algebra
from ..report import INCONCLUSIVE, Report
from .utils import get_logger, load_algebra

LOG = get_logger(__name__)


def _warn(message):
    print(f"Warning: {message}", file=sys.stderr)


def compute_cohomology(path, options):
    """Cohomology ring of a document, emitted as a new document

    Closed named classes and the action are carried over to the ring.

    Args:
        path: Path to the algebra document
        options: Options from the command line
    """
    loaded = load_algebra(path, options)
    document, chain = loaded.document, loaded.chain
    ring = loaded.ring or cohomology(chain)

    report = Report("cohomology", betti=ring.betti_numbers())
    report.check("product of classes well defined", ring.well_defined_witness is None,
                 ring.well_defined_witness)
    for degree in ring.unreliable_degrees:
        report.add(f"H^{degree}", INCONCLUSIVE,
                   detail="truncation-unreliable: d out of this degree lies above the truncation")

    classes = {}
    for label in document.classes:
        try:
            classes[label] = ring.class_of(document.class_element(chain, label))
        except AlgebraInputError:
            _warn(f"class '{label}' is not closed and is not carried over")
    action = None
    if document.action is not None:
        action = induced_action(ring, document.action_spec(chain))
    emitted = document_from_algebra(ring.algebra, classes, action, label=f"H({document.name})")
    report.model = emitted.to_dict()
    LOG.debug("cohomology of %s has %d generators", document.name, len(emitted.generators))
    return report


def compute_invariants(path, options):
    """Invariant subalgebra H^G of a document with an action

    Args:
        path: Path to the algebra document
        options: Options from the command line
    """
    loaded = load_algebra(path, options)
    if loaded.document.action is None:
        raise DocumentError(f"Document {loaded.name} has no action", field="action")
    H = loaded.cohomology
    g = loaded.action()
    invariants, inclusion = invariant_subalgebra(H, g, cross_check=options.debug,
                                                 label=f"{loaded.name}^G")

    report = Report("invariants", betti=invariants.dims())
    report.data["order"] = g.order
    classes = {}
    for label in loaded.document.classes:
        element = loaded.named_class(label)
        if g.is_invariant(element):
            classes[label] = inclusion.preimage(element)
        else:
            _warn(f"class '{label}' is not invariant and is not carried over")
    report.model = document_from_algebra(invariants, classes, label=invariants.label).to_dict()
    return report


def poincare_duality(path, options):
    """Perfectness of the pairings into the top degree of H"""
    H = load_algebra(path, options).cohomology
    report = poincare_duality_check(H, H.top_degree())
    report.betti = H.dims()
    return report
