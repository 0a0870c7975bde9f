import numpy as np
import pytest

from spiral_workbench.algebra.bicomplex import Bicomplex, random_bicomplex
from spiral_workbench.algebra.chain_complex import ChainComplex, change_middle_basis, lift_independence_check
from spiral_workbench.algebra.exact_couple import couple_check, derived_couple, pages
from spiral_workbench.algebra.staircase import staircase_pages
from spiral_workbench.resource.errors import IndexOutOfRange, ObjectMismatch
from spiral_workbench.resource.run_config import InstanceKind
from spiral_workbench.spectral.corpus import (constant_instance, diagonal_realization, random_instance,
                                              single_entry_instance)
from spiral_workbench.spectral.simplicial_vs import (diag, dold_kan, dold_kan_inverse2, double_moore, homotopy_groups,
                                                      normalize)
from spiral_workbench.spectral.spiral import (abutment_check, compare_pages, couple_of_tower,
                                              e2_matches_double_homology, fibrancy_check,
                                              first_quadrant_stabilization, lifting_differential, matching,
                                              modified_matching, moore_chain_homotopy_check, spiral_couple,
                                              spiral_pages, spiral_report, spiral_tower, spiral_vs_staircase,
                                              tower_of_bicomplex)


@pytest.fixture
def zigzag(engineered_bisimplicial):
    return engineered_bisimplicial["zigzag-d2"].value


def test_double_normalization_recovers_the_bicomplex(engineered_bisimplicial):
    instance = engineered_bisimplicial["zigzag-d2"]
    assert double_moore(instance.value).dims == instance.bicomplex.dims


def test_constant_instance_lives_at_the_origin():
    X = constant_instance(InstanceKind.BISIMPLICIAL).value
    pages = spiral_pages(X, 2)
    assert pages[0].support() == [(0, 0)]
    assert pages[0].dim((0, 0)) == 1
    assert pages[1].support() == [(0, 0)]


def test_couple_is_exact(zigzag):
    report = spiral_report(zigzag, 3)
    assert report["exactness"]["passed"]
    assert len(report["pages"]) == 3


def test_pages_agree_with_the_staircase_from_e2(zigzag):
    comparison = spiral_vs_staircase(zigzag, 4)
    assert [m for m in comparison["mismatches"] if m["r"] >= 2] == []
    assert e2_matches_double_homology(zigzag)["passed"]


def test_zigzag_carries_a_nonzero_d2(zigzag):
    pages = spiral_pages(zigzag, 3)
    assert pages[1].rank_out((2, 0)) == 1
    assert pages[2].dim((2, 0)) == 0


def test_lifting_matches_the_couple(zigzag):
    tower = spiral_tower(zigzag, 3)
    pages = spiral_pages(zigzag, 3)
    result = lifting_differential(zigzag, 2, 0, 2, np.array([1]), tower, pages)
    assert result.target == (0, 1)
    assert result.agrees
    assert not result.is_zero


def test_lifting_d3_on_the_longer_zigzag(engineered_bisimplicial):
    X = engineered_bisimplicial["zigzag-d3"].value
    result = lifting_differential(X, 3, 0, 3, np.array([1]))
    assert result.agrees
    assert not result.is_zero


def test_lifting_rejects_bad_input(zigzag):
    with pytest.raises(IndexOutOfRange):
        lifting_differential(zigzag, 2, 0, 0, np.array([1]))
    with pytest.raises(ObjectMismatch):
        lifting_differential(zigzag, 2, 0, 2, np.array([1, 0]))


def test_abutment(engineered_bisimplicial):
    for instance in engineered_bisimplicial.values():
        report = abutment_check(instance.value, extended=diagonal_realization(instance.bicomplex))
        assert report["passed"], (instance.name, report)
        assert report["diagonal_covers_support"], (instance.name, report)


@pytest.mark.parametrize("n, q", [(2, 1), (1, 2), (1, 1)])
def test_single_entry_shows_up_in_the_diagonal(n, q):
    instance = single_entry_instance(InstanceKind.BISIMPLICIAL, n, q)
    report = abutment_check(instance.value, extended=diagonal_realization(instance.bicomplex))
    assert report["passed"] and report["diagonal_covers_support"], report
    diagonal = {row["t"]: row["diagonal"] for row in report["rows"] if row["diagonal"] is not None}
    assert diagonal == {t: int(t == n + q) for t in range(n + q + 1)}


def test_truncated_diagonal_does_not_cover_the_top_degree():
    instance = single_entry_instance(InstanceKind.BISIMPLICIAL, 2, 1)
    report = abutment_check(instance.value)
    assert report["passed"]
    assert report["diagonal_top"] == 0
    assert not report["diagonal_covers_support"]


def test_abutment_rejects_an_unrelated_extension(zigzag):
    with pytest.raises(ObjectMismatch):
        abutment_check(zigzag, extended=diagonal_realization(Bicomplex(2, {(0, 0): 1})))


def test_moore_chains_compute_e1(zigzag):
    report = moore_chain_homotopy_check(zigzag)
    assert report["passed"], report


def test_diagonal_of_the_constant_instance():
    X = constant_instance(InstanceKind.BISIMPLICIAL, prime=3, dim=2).value
    groups = homotopy_groups(diag(X))
    assert groups[0] == 2
    assert all(rank == 0 for degree, rank in groups.items() if degree)


def test_dold_kan_normalizes_back():
    C = ChainComplex(3, {0: 1, 1: 1}, {1: [[0]]})
    X = dold_kan(C)
    assert X.dim(1) == 2
    assert normalize(X).dims == {0: 1, 1: 1}
    assert homotopy_groups(X) == {0: 1, 1: 1}


def test_double_dold_kan_inverse_recovers_the_bicomplex(zigzag_d2):
    assert double_moore(dold_kan_inverse2(zigzag_d2)).dims == zigzag_d2.dims


def test_first_matching_space_has_no_relations(zigzag):
    full, horn = matching(zigzag, 1), modified_matching(zigzag, 1)
    for q, space in full.items():
        assert space.indices == (0, 1)
        assert space.dim == 2 * zigzag.dim(0, q)
        assert horn[q].indices == (1,)
    with pytest.raises(IndexOutOfRange):
        matching(zigzag, 0)


def test_fibrancy_is_reported_not_assumed(zigzag):
    assert all(fibrancy_check(zigzag).matching_kernel.values())
    X = dold_kan_inverse2(Bicomplex(2, {(1, 1): 1}), max_n=2, max_q=1)
    report = fibrancy_check(X)
    assert not report.strict[2]
    assert not report.passed
    assert {"check": "strict", "n": 2, "q": 1} in report.failures


def test_derived_spiral_couple_is_the_second_page(zigzag):
    couple = spiral_couple(zigzag, 3)
    assert couple.r == 1
    second = derived_couple(couple)
    assert second.r == 2
    assert {key: d for key, d in second.e_dims.items() if d} == {(0, 1): 1, (2, 0): 1}


def test_pages_stabilize_once_no_differential_has_room(engineered_bisimplicial):
    instances = list(engineered_bisimplicial.values())
    instances += [random_instance(InstanceKind.BISIMPLICIAL, seed, max_n=2, max_q=2, dim_cap=1) for seed in range(3)]
    for instance in instances:
        page_list = spiral_pages(instance.value, 6)
        report = first_quadrant_stabilization(page_list)
        assert report["passed"], (instance.name, report)
        for n, p in page_list[0].support():
            if p <= n:
                assert len({page.dim((n, p)) for page in page_list if page.r >= n + 2}) == 1, (instance.name, n, p)


def test_tower_connecting_maps_do_not_depend_on_the_lift(zigzag, rng):
    tower = spiral_tower(zigzag, 3)
    for n in range(1, tower.top + 1):
        twisted = change_middle_basis(tower.sequences[n], rng)
        twisted.check()
        assert lift_independence_check(twisted, rng)["passed"]


def test_corpus_sized_bicomplexes_agree_with_the_staircase():
    """N = Q = 4 with entries up to 3, built on the bicomplex directly"""
    for seed in range(3):
        B = random_bicomplex(np.random.default_rng(seed), 2, 4, 4, 3)
        couple = couple_of_tower(tower_of_bicomplex(B, 5))
        assert couple_check(couple).passed
        spiral = pages(couple, 5)
        comparison = compare_pages(spiral, staircase_pages(B, "column", 5))
        assert [m for m in comparison["mismatches"] if m["r"] >= 2] == [], seed
        assert first_quadrant_stabilization(spiral)["passed"], seed
