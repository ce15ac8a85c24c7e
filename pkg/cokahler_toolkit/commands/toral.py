"""Toral-rank commands: trc, toral-bound, trc-pipeline"""

from ..algebra.errors import DocumentError
from ..algebra.toral_rank import cokahler_trc_pipeline, toral_bound_report, trc_check
from .utils import kahler_fibre, load_algebra


def trc(path, options):
    """Cohomological torus certificate for dim H >= 2^r"""
    return trc_check(load_algebra(path, options).cohomology)


def toral_bound(path, options):
    """Upper bound on the toral rank of the mapping torus of a fibre with an action"""
    loaded = load_algebra(path, options)
    if loaded.document.action is None:
        raise DocumentError(f"Document {loaded.name} has no action", field="action")
    return toral_bound_report(loaded.cohomology, loaded.action())


def trc_pipeline(path, options):
    _, H, g, omega, n = kahler_fibre(path, options)
    return cokahler_trc_pipeline(H, g, omega, n, cross_check=options.debug)
