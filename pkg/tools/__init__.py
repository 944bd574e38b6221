from tools.lie_core import (
    validate,
    bracket,
    bracket_norm_sq,
    derivation_algebra,
    scaled_derivation_algebra,
    normal_space,
    orbit_transitivity_check,
    unimodularity_check,
    change_of_basis,
    orthonormal_frame,
    is_nilpotent,
    adjoint,
    killing_form,
    algebra_fingerprint,
)
from tools.symmetry import (
    is_orthogonal_automorphism,
    sign_diagonal_subgroup,
    two_reversible_check,
    invariant_forms_subspace,
    maximality_certificate,
    default_group,
)
from tools.curvature import (
    ricci_tensor,
    scalar_curvature,
    einstein_check,
    ricci_soliton_check,
    ricci_spectrum,
    isotropy_irreducibility_diagnostic,
)
from tools.flows import flow_field, integrate, self_similarity_diagnostics
from tools.graph_algebras import (
    attach_algebra,
    vertex_reflections,
    graph_automorphisms,
    edge_transitivity_check,
    lift_automorphism,
    lift_isomorphism,
    graph_isomorphic,
    direction_independence_check,
)
from tools.families import build, w_permutation_equivalence
from tools.batch import run_batch

__all__ = [
    'validate',
    'bracket',
    'bracket_norm_sq',
    'derivation_algebra',
    'scaled_derivation_algebra',
    'normal_space',
    'orbit_transitivity_check',
    'unimodularity_check',
    'change_of_basis',
    'orthonormal_frame',
    'is_nilpotent',
    'adjoint',
    'killing_form',
    'algebra_fingerprint',
    'is_orthogonal_automorphism',
    'sign_diagonal_subgroup',
    'two_reversible_check',
    'invariant_forms_subspace',
    'maximality_certificate',
    'default_group',
    'ricci_tensor',
    'scalar_curvature',
    'einstein_check',
    'ricci_soliton_check',
    'ricci_spectrum',
    'isotropy_irreducibility_diagnostic',
    'flow_field',
    'integrate',
    'self_similarity_diagnostics',
    'attach_algebra',
    'vertex_reflections',
    'graph_automorphisms',
    'edge_transitivity_check',
    'lift_automorphism',
    'lift_isomorphism',
    'graph_isomorphic',
    'direction_independence_check',
    'build',
    'w_permutation_equivalence',
    'run_batch',
]
