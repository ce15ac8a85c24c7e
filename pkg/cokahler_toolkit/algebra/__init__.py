"""The algebra engine: graded algebras, cohomology, Lefschetz maps, derivations, torus certificates and minimal models

Public names are re-exported here.
"""

from .errors import ActionOrderError, AlgebraInputError, CokahlerError, DocumentError, ModelConstructionError
from .graded import (AlgebraMap, ChainComplexAlgebra, Element, GradedAlgebra, GradedBasis,
                     tensor_product)
from .free import (FreeGradedAlgebra, Presentation, build_from_presentation, exterior_algebra,
                   kodaira_thurston, presentation_of, presented_algebra, projective_space, sphere, torus)
from .axioms import verify_algebra_axioms
from .cohomology import (CohomologyRing, GroupActionSpec, betti_numbers, cohomology, induced_action,
                         invariant_subalgebra, poincare_duality_check)
from .lefschetz import (CoKahlerModel, betti_relation_checks, cokahler_lefschetz, cokahler_lefschetz_check,
                        hard_lefschetz_check, invariant_kahler_check, mapping_torus_algebra)
from .derivations import derivation_space, property_b_check, tensor_property_b_probe
from .toral_rank import cokahler_trc_pipeline, max_exterior_rank, toral_rank_bound, trc_check
from .sullivan import (SullivanAlgebra, compare_models, compare_presentations, minimal_model_of_formal,
                       model_fingerprint, model_tensor_split_check, tensor_structure_check,
                       verify_quasi_iso)

__all__ = [
    'ActionOrderError',
    'AlgebraInputError',
    'CokahlerError',
    'DocumentError',
    'ModelConstructionError',
    'AlgebraMap',
    'ChainComplexAlgebra',
    'Element',
    'GradedAlgebra',
    'GradedBasis',
    'tensor_product',
    'FreeGradedAlgebra',
    'Presentation',
    'build_from_presentation',
    'exterior_algebra',
    'kodaira_thurston',
    'presentation_of',
    'presented_algebra',
    'projective_space',
    'sphere',
    'torus',
    'verify_algebra_axioms',
    'CohomologyRing',
    'GroupActionSpec',
    'betti_numbers',
    'cohomology',
    'induced_action',
    'invariant_subalgebra',
    'poincare_duality_check',
    'CoKahlerModel',
    'betti_relation_checks',
    'cokahler_lefschetz',
    'cokahler_lefschetz_check',
    'hard_lefschetz_check',
    'invariant_kahler_check',
    'mapping_torus_algebra',
    'derivation_space',
    'property_b_check',
    'tensor_property_b_probe',
    'cokahler_trc_pipeline',
    'max_exterior_rank',
    'toral_rank_bound',
    'trc_check',
    'SullivanAlgebra',
    'compare_models',
    'compare_presentations',
    'minimal_model_of_formal',
    'model_fingerprint',
    'model_tensor_split_check',
    'tensor_structure_check',
    'verify_quasi_iso',
]
