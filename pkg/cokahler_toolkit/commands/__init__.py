"""Command implementations for cokahler

Each command takes document paths and an Options instance and returns a Report.
Public functions are re-exported here for the CLI dispatcher.
"""

# Import public command functions
from .axioms import check_axioms
from .cohomology import compute_cohomology, compute_invariants, poincare_duality
from .kahler import betti_relations, check_cokahler_lefschetz, check_kahler, mapping_torus
from .property_b import property_b
from .toral import toral_bound, trc, trc_pipeline
from .models import check_split, compare_presentations, minimal_model
from .utils import Options

# Export public API
__all__ = [
    'check_axioms',
    'compute_cohomology',
    'compute_invariants',
    'poincare_duality',
    'check_kahler',
    'mapping_torus',
    'check_cokahler_lefschetz',
    'betti_relations',
    'property_b',
    'trc',
    'toral_bound',
    'trc_pipeline',
    'minimal_model',
    'check_split',
    'compare_presentations',
    'Options',
]
