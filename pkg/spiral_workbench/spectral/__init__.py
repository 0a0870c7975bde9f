"""
Simplicial and cosimplicial vector spaces, the spiral and Tot spectral
sequences, and the seeded instance corpus
"""

from .simplicial_vs import (
    SimplicialVS,
    BisimplicialVS,
    normalize,
    homotopy_groups,
    dold_kan,
    dold_kan_inverse2,
    double_moore,
    diag,
    constant_bisimplicial
)
from .spiral import (
    SpiralTower,
    FibrancyReport,
    LiftingResult,
    moore_cycles,
    moore_chains,
    matching,
    modified_matching,
    fibrancy_check,
    spiral_tower,
    spiral_couple,
    spiral_pages,
    spiral_stable_page,
    spiral_vs_staircase,
    lifting_differential,
    abutment_check,
    moore_chain_homotopy_check,
    strict_cycles_agree,
    spiral_report
)
from .tot import (
    CochainBicomplex,
    CosimplicialSVS,
    TotTower,
    dual_dold_kan,
    cosimplicial_from_bicomplex,
    normalized_cochain,
    tot_tower,
    tot_couple,
    tot_pages,
    d1_check,
    cosimplicial_lift_check,
    tot_vs_staircase,
    tot_abutment_check,
    constant_cosimplicial
)
from .corpus import Instance, corpus, random_instance, engineered_instances, instance_from_dict

__all__ = [
    'SimplicialVS',
    'BisimplicialVS',
    'normalize',
    'homotopy_groups',
    'dold_kan',
    'dold_kan_inverse2',
    'double_moore',
    'diag',
    'constant_bisimplicial',
    'SpiralTower',
    'FibrancyReport',
    'LiftingResult',
    'moore_cycles',
    'moore_chains',
    'matching',
    'modified_matching',
    'fibrancy_check',
    'spiral_tower',
    'spiral_couple',
    'spiral_pages',
    'spiral_stable_page',
    'spiral_vs_staircase',
    'lifting_differential',
    'abutment_check',
    'moore_chain_homotopy_check',
    'strict_cycles_agree',
    'spiral_report',
    'CochainBicomplex',
    'CosimplicialSVS',
    'TotTower',
    'dual_dold_kan',
    'cosimplicial_from_bicomplex',
    'normalized_cochain',
    'tot_tower',
    'tot_couple',
    'tot_pages',
    'd1_check',
    'cosimplicial_lift_check',
    'tot_vs_staircase',
    'tot_abutment_check',
    'constant_cosimplicial',
    'Instance',
    'corpus',
    'random_instance',
    'engineered_instances',
    'instance_from_dict',
]

__version__ = "1.0.0"
