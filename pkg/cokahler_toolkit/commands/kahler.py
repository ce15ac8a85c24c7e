"""Kahler and co-Kahler commands: check-kahler, mapping-torus, check-cokahler-lefschetz, betti-relations"""

from ..algebra.lefschetz import (betti_relation_checks, cokahler_lefschetz_check, invariant_kahler_check,
                                 mapping_torus_algebra)
from ..document import document_from_algebra
from ..report import Report
from .utils import cokahler_model, kahler_fibre


def check_kahler(path, options):
    """Hard Lefschetz on H_K and on H_K^G for the document's omega"""
    _, H, g, omega, n = kahler_fibre(path, options)
    return invariant_kahler_check(H, g, omega, n, cross_check=options.debug)


def mapping_torus(path, options):
    """Build the co-Kahler model H_K^G (x) L(eta) of a Kahler fibre with an action

    The emitted document embeds eta and omega under the --eta and --omega labels,
    so later commands read the model without further flags.
    """
    loaded, H, g, omega, n = kahler_fibre(path, options)
    model = mapping_torus_algebra(H, g, omega, n, cross_check=options.debug,
                                  label=f"{loaded.name}_phi")
    betti = model.algebra.dims()[:model.top_degree + 1]
    report = Report("mapping-torus", betti=betti)
    report.extend(betti_relation_checks(model), prefix="betti relations")
    report.data["n"] = n
    emitted = document_from_algebra(model.algebra, {options.eta: model.eta, options.omega: model.omega},
                                    label=model.algebra.label)
    report.model = emitted.to_dict()
    return report


def check_cokahler_lefschetz(path, options):
    """Co-Kahler Lefschetz maps H^p -> H^(2n+1-p) for p = 0..n"""
    model = cokahler_model(path, options)
    report = cokahler_lefschetz_check(model).to_report("check-cokahler-lefschetz")
    report.betti = model.algebra.dims()[:model.top_degree + 1]
    return report


def betti_relations(path, options):
    return betti_relation_checks(cokahler_model(path, options))
