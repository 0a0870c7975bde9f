"""
Combinatorics of the restricted simplex category and of permutahedra
"""

from .simplex_cat import (
    Injection,
    FactorizationChain,
    compose,
    eval_word,
    normal_form,
    rewrite_to_normal_form,
    enumerate_injections,
    ordered_partitions,
    two_step_factorizations,
    factor_through,
    subset_of_factorization,
    factorization_chains
)
from .permutahedron import (
    PermFace,
    FaceLattice,
    face_lattice,
    order_complex,
    boundary_order_complex,
    boundary_coequalizer_check,
    facet_census,
    label_obstruction_boundary,
    dual_witness_complex,
    gluing_count
)

__all__ = [
    'Injection',
    'FactorizationChain',
    'compose',
    'eval_word',
    'normal_form',
    'rewrite_to_normal_form',
    'enumerate_injections',
    'ordered_partitions',
    'two_step_factorizations',
    'factor_through',
    'subset_of_factorization',
    'factorization_chains',
    'PermFace',
    'FaceLattice',
    'face_lattice',
    'order_complex',
    'boundary_order_complex',
    'boundary_coequalizer_check',
    'facet_census',
    'label_obstruction_boundary',
    'dual_witness_complex',
    'gluing_count',
]

__version__ = "1.0.0"
