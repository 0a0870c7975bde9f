"""
Exact homological algebra over F_p and Z: linear algebra, Smith normal form,
chain complexes, bicomplexes, exact couples and the staircase algorithm
"""

from .linalg import Subquotient, mat_mul, rank, nullspace, solve, inverse
from .snf import SmithNormalForm, snf, invariant_factors, determinant
from .chain_complex import (
    ChainComplex,
    HomologyGroup,
    ShortExactSequence,
    homology,
    homology_basis,
    induced_map,
    connecting_map,
    long_exact_sequence_check
)
from .bicomplex import (
    Bicomplex,
    Piece,
    total,
    double_homology,
    vertical_homology,
    bicomplex_from_pieces,
    change_basis,
    random_bicomplex
)
from .exact_couple import (
    ExactCouple,
    CoupleReport,
    Page,
    couple_check,
    require_exact,
    derived_couple,
    pages,
    stable_page,
    pages_table
)
from .staircase import FilteredComplex, filtered_total, staircase_pages, spectral_pages, extend_representative

__all__ = [
    'Subquotient',
    'mat_mul',
    'rank',
    'nullspace',
    'solve',
    'inverse',
    'SmithNormalForm',
    'snf',
    'invariant_factors',
    'determinant',
    'ChainComplex',
    'HomologyGroup',
    'ShortExactSequence',
    'homology',
    'homology_basis',
    'induced_map',
    'connecting_map',
    'long_exact_sequence_check',
    'Bicomplex',
    'Piece',
    'total',
    'double_homology',
    'vertical_homology',
    'bicomplex_from_pieces',
    'change_basis',
    'random_bicomplex',
    'ExactCouple',
    'CoupleReport',
    'Page',
    'couple_check',
    'require_exact',
    'derived_couple',
    'pages',
    'stable_page',
    'pages_table',
    'FilteredComplex',
    'filtered_total',
    'staircase_pages',
    'spectral_pages',
    'extend_representative',
]

__version__ = "1.0.0"
