"""Minimal-model commands: minimal-model, check-split, compare-presentations"""

import sys

from ..algebra.lefschetz import mapping_torus_algebra
from ..algebra.sullivan import (compare_presentations as compare_invariant_models, minimal_model_of_formal,
                                model_tensor_split_check, verify_quasi_iso)
from ..document import document_from_sullivan
from .utils import get_logger, kahler_fibre, load_algebra

LOG = get_logger(__name__)


def _mapping_torus(path, options, loaded):
    _, H, g, omega, n = kahler_fibre(path, options, loaded)
    return mapping_torus_algebra(H, g, omega, n, cross_check=options.debug, label=f"{loaded.name}_phi")


def minimal_model(path, options):
    """Minimal model through --max-degree (default: the top degree)

    A document with an action is modelled through its mapping torus; any other
    document through its cohomology algebra, taken with zero differential.
    """
    loaded = load_algebra(path, options, cap=False)
    if loaded.document.action is not None:
        H = _mapping_torus(path, options, loaded).algebra
    else:
        if loaded.ring is not None:
            print(f"Warning: {loaded.name} has a nonzero differential; modelling its cohomology "
                  "algebra as a formal algebra", file=sys.stderr)
        H = loaded.cohomology
    N = options.max_degree if options.max_degree is not None else H.top_degree()
    model, model_map = minimal_model_of_formal(H, N, label=f"M({H.label})")
    report = verify_quasi_iso(model_map, N)
    report.command = "minimal-model"
    report.data["generator_degrees"] = [degree for _, degree in model.generators]
    report.model = document_from_sullivan(model).to_dict()
    LOG.debug("model of %s: %s", H.label, model.format_differential())
    return report


def check_split(path, options):
    """Model of the mapping torus against model(H_K^G) (x) L(eta)"""
    loaded = load_algebra(path, options, cap=False)
    model = _mapping_torus(path, options, loaded)
    N = options.max_degree if options.max_degree is not None else model.top_degree
    return model_tensor_split_check(model.base_inclusion(), model.eta, N)


def compare_presentations(first_path, second_path, options):
    """Invariant algebras of two presentations (K, G) of one co-Kahler manifold"""
    first = load_algebra(first_path, options, cap=False)
    second = load_algebra(second_path, options, cap=False)
    H1, g1 = first.cohomology, first.action()
    H2, g2 = second.cohomology, second.action()
    if options.max_degree is not None:
        N = options.max_degree
    else:
        N = min(H1.top_degree(), H2.top_degree())
    return compare_invariant_models(H1, g1, H2, g2, N)
