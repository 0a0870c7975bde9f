import numpy as np
import pytest

from spiral_workbench.algebra.exact_couple import couple_check, pages
from spiral_workbench.algebra.linalg import mat_mul
from spiral_workbench.resource.errors import IndexOutOfRange, ObjectMismatch
from spiral_workbench.resource.run_config import InstanceKind
from spiral_workbench.spectral.corpus import constant_instance
from spiral_workbench.spectral.tot import (cochain_differential, cosimplicial_lift_check, couple_of_tot, d1_check,
                                           normalized_cochain, normalized_cochain_basis, splitting_check,
                                           tot_abutment_check, tot_couple, tot_pages, tot_tower, tot_vs_staircase)


def test_constant_instance_lives_at_the_origin():
    X = constant_instance(InstanceKind.COSIMPLICIAL).value
    pages = tot_pages(X, 2)
    assert pages[0].support() == [(0, 0)]
    assert pages[-1].support() == [(0, 0)]


def test_levels_split_into_normalized_parts(engineered_cosimplicial):
    for instance in engineered_cosimplicial.values():
        report = splitting_check(instance.value)
        assert report["passed"], (instance.name, report)


def test_normalized_cochains_square_to_zero(engineered_cosimplicial):
    X = engineered_cosimplicial["zigzag-d2"].value
    for n in range(X.N - 1):
        for q in range(X.Q + 1):
            first, second = cochain_differential(X, n, q), cochain_differential(X, n + 1, q)
            assert not np.any(mat_mul(second, first, X.prime))


def test_tot_couple_is_exact(engineered_cosimplicial):
    X = engineered_cosimplicial["zigzag-d2"].value
    assert couple_check(couple_of_tot(tot_tower(X))).passed


def test_d1_is_the_alternating_coface_sum(engineered_cosimplicial):
    for instance in engineered_cosimplicial.values():
        report = d1_check(instance.value)
        assert report["passed"], (instance.name, report)


def test_pages_match_the_row_staircase(engineered_cosimplicial):
    for instance in engineered_cosimplicial.values():
        report = tot_vs_staircase(instance.value, 4)
        assert report["passed"], (instance.name, report["mismatches"][:3])


def test_lifts_find_the_engineered_d2(engineered_cosimplicial):
    report = cosimplicial_lift_check(engineered_cosimplicial["zigzag-d2"].value)
    assert report["passed"], report
    survivors = [entry for entry in report["classes"] if entry["survives"]]
    assert any(np.any(entry["d2_by_lifting"]) for entry in survivors)


def test_lift_rejects_wrong_sized_representatives(engineered_cosimplicial):
    X = engineered_cosimplicial["zigzag-d2"].value
    first = tot_pages(X, 1)[0]
    n, t = first.support()[0]
    with pytest.raises(ObjectMismatch):
        cosimplicial_lift_check(X, reps=[(n, t, np.ones(first.dim((n, t)) + 1, dtype=np.int64))])


def test_tot_abutment(engineered_cosimplicial):
    for instance in engineered_cosimplicial.values():
        report = tot_abutment_check(instance.value)
        assert report["passed"], (instance.name, report)


def test_normalized_cochains_keep_the_normalized_basis(engineered_cosimplicial):
    X = engineered_cosimplicial["zigzag-d2"].value
    for n in range(X.N + 1):
        level = normalized_cochain(X, n)
        assert [level.dim(q) for q in range(X.Q + 1)] == \
               [normalized_cochain_basis(X, n, q).shape[1] for q in range(X.Q + 1)]
    with pytest.raises(IndexOutOfRange):
        normalized_cochain(X, X.N + 1)


def test_tot_couple_pages(engineered_cosimplicial):
    X = engineered_cosimplicial["zigzag-d2"].value
    couple = tot_couple(X)
    assert couple.r == 1
    assert [page.dims for page in pages(couple, 3)] == [page.dims for page in tot_pages(X, 3)]
