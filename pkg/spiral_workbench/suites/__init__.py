"""
Verification suites for the Spiral Workbench.
Each suite is one acceptance battery run as a node of the suite graph.
"""

from .factorization_bijection import FactorizationBijectionSuite
from .permutahedral_components import PermutahedralComponentsSuite
from .moore_chains import MooreChainsSuite
from .spiral_vs_staircase import SpiralVsStaircaseSuite
from .lifting import LiftingSuite
from .abutment import AbutmentSuite
from .cosimplicial_d1 import CosimplicialD1Suite
from .cosimplicial_lifts import CosimplicialLiftsSuite
from .obstruction_labels import ObstructionLabelsSuite
from .determinism import DeterminismSuite

DEFAULT_SUITES = [
    FactorizationBijectionSuite,
    PermutahedralComponentsSuite,
    MooreChainsSuite,
    SpiralVsStaircaseSuite,
    LiftingSuite,
    AbutmentSuite,
    CosimplicialD1Suite,
    CosimplicialLiftsSuite,
    ObstructionLabelsSuite,
    DeterminismSuite,
]

__all__ = [
    'DEFAULT_SUITES',
    'FactorizationBijectionSuite',
    'PermutahedralComponentsSuite',
    'MooreChainsSuite',
    'SpiralVsStaircaseSuite',
    'LiftingSuite',
    'AbutmentSuite',
    'CosimplicialD1Suite',
    'CosimplicialLiftsSuite',
    'ObstructionLabelsSuite',
    'DeterminismSuite',
]

__version__ = "1.0.0"
