import numpy as np
import pytest

from spiral_workbench.algebra.bicomplex import Piece, bicomplex_from_pieces
from spiral_workbench.resource.run_config import InstanceKind, RunConfig
from spiral_workbench.spectral.corpus import engineered_instances


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def small_config(tmp_path):
    """Small corpus bounds so suites finish quickly"""
    return RunConfig(seeds=2, max_n=2, max_q=2, dim_cap=1, r_max=4, max_gap=3, output_dir=tmp_path)


@pytest.fixture
def zigzag_d2():
    """x at (2,0) reaches z at (0,1) through y at (1,0): a single nonzero d2"""
    return bicomplex_from_pieces(2, [Piece("zigzag", 2, 0, 2)])


@pytest.fixture
def engineered_bisimplicial():
    return {instance.name: instance for instance in engineered_instances(InstanceKind.BISIMPLICIAL)}


@pytest.fixture
def engineered_cosimplicial():
    return {instance.name: instance for instance in engineered_instances(InstanceKind.COSIMPLICIAL)}
