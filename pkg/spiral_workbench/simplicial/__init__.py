"""
Finite simplicial sets and the Dwyer-Kan resolution of finite categories
"""

from .sset import (
    SimplicialSet,
    standard_simplex,
    boundary,
    horn,
    subcomplex,
    is_subcomplex,
    quotient,
    cone,
    product,
    opposite,
    fattened_simplex,
    homology,
    reduced_homology,
    is_acyclic,
    is_sphere,
    euler_characteristic,
    components,
    cofibration_sequence_check
)
from .dk_resolution import (
    FinCat,
    NestedWord,
    delta_op_category,
    free_dag_category,
    dk_mapping_space,
    is_degenerate,
    component_of,
    boundary_of_component,
    components_by_arrow,
    iso_check
)

__all__ = [
    'SimplicialSet',
    'standard_simplex',
    'boundary',
    'horn',
    'subcomplex',
    'is_subcomplex',
    'quotient',
    'cone',
    'product',
    'opposite',
    'fattened_simplex',
    'homology',
    'reduced_homology',
    'is_acyclic',
    'is_sphere',
    'euler_characteristic',
    'components',
    'cofibration_sequence_check',
    'FinCat',
    'NestedWord',
    'delta_op_category',
    'free_dag_category',
    'dk_mapping_space',
    'is_degenerate',
    'component_of',
    'boundary_of_component',
    'components_by_arrow',
    'iso_check',
]

__version__ = "1.0.0"
