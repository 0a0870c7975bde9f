import numpy as np
import pytest

from spiral_workbench.algebra.bicomplex import Bicomplex, Piece, double_homology, total
from spiral_workbench.algebra.chain_complex import (ChainComplex, change_middle_basis, cone_of_identity, connecting_map,
                                                    homology, lift_independence_check, long_exact_sequence_check,
                                                    split_sequence)
from spiral_workbench.algebra.exact_couple import check_page
from spiral_workbench.algebra.linalg import Subquotient, inverse, mat_mul, nullspace, random_invertible, rank, solve
from spiral_workbench.algebra.snf import determinant, invariant_factors, snf
from spiral_workbench.algebra.staircase import filtered_total, staircase_pages
from spiral_workbench.resource.errors import BoundaryNotZero, IndexOutOfRange, SchemaViolation


def test_rank_and_nullspace_mod_p():
    matrix = np.array([[1, 2, 0], [2, 4, 1]], dtype=np.int64)
    assert rank(matrix, 5) == 2
    kernel = nullspace(matrix, 5)
    assert kernel.shape == (3, 1)
    assert not np.any(mat_mul(matrix, kernel, 5))


def test_solve_reports_inconsistent_systems():
    matrix = np.array([[1, 1], [1, 1]], dtype=np.int64)
    assert solve(matrix, np.array([[1], [0]], dtype=np.int64), 3) is None
    solution = solve(matrix, np.array([[2], [2]], dtype=np.int64), 3)
    assert not np.any((mat_mul(matrix, solution, 3) - 2) % 3)


def test_random_invertible_has_an_inverse(rng):
    matrix = random_invertible(rng, 3, 7)
    assert np.array_equal(mat_mul(matrix, inverse(matrix, 7), 7), np.eye(3, dtype=np.int64))


def test_subquotient_dimension():
    numerator = np.eye(3, dtype=np.int64)
    denominator = np.array([[1], [1], [0]], dtype=np.int64)
    quotient = Subquotient.of(numerator, denominator, 2)
    assert quotient.dim == 2
    assert quotient.ambient == 3


def test_smith_normal_form():
    matrix = [[2, 4], [6, 8]]
    left, diagonal, right = snf(matrix)
    assert np.array_equal(left.dot(np.array(matrix, dtype=object)).dot(right), diagonal)
    assert invariant_factors(matrix) == (2, 4)
    assert determinant(matrix) == -8
    assert invariant_factors([[0, 0], [0, 0]]) == ()


def test_chain_complex_rejects_nonzero_square():
    with pytest.raises(BoundaryNotZero):
        ChainComplex(2, {0: 1, 1: 1, 2: 1}, {1: [[1]], 2: [[1]]})


def test_split_sequence_is_exact():
    circle = ChainComplex(3, {0: 1, 1: 1}, {1: [[0]]})
    point = ChainComplex(3, {0: 1})
    report = long_exact_sequence_check(split_sequence(circle, point))
    assert report["passed"], report


def test_cone_of_the_identity_is_acyclic():
    circle = ChainComplex(3, {0: 1, 1: 1}, {1: [[0]]})
    ses = cone_of_identity(circle)
    ses.check()
    assert all(group.is_zero for group in homology(ses.middle).values())
    assert long_exact_sequence_check(ses)["passed"]
    # the cone is acyclic, so the connecting map is an isomorphism
    assert [rank(connecting_map(ses, n), 3) for n in (1, 2)] == [1, 1]


def test_connecting_map_does_not_depend_on_the_lift(rng):
    circle = ChainComplex(3, {0: 1, 1: 1}, {1: [[0]]})
    twisted = change_middle_basis(cone_of_identity(circle), rng)
    twisted.check()
    # j is no longer a coordinate projection, so the lift through it is not unique
    assert rank(nullspace(twisted.j(1), 3), 3) == 1
    first = connecting_map(twisted, 1, column_order=list(rng.permutation(twisted.middle.dim(1))))
    second = connecting_map(twisted, 1, column_order=list(rng.permutation(twisted.middle.dim(1))))
    assert np.array_equal(first, second)
    assert np.array_equal(first, connecting_map(cone_of_identity(circle), 1))
    for ses in (cone_of_identity(circle), twisted):
        assert lift_independence_check(ses, rng, trials=3)["passed"]


def test_bicomplex_validation():
    with pytest.raises(BoundaryNotZero):
        Bicomplex(2, {(1, 1): 1, (0, 1): 1, (1, 0): 1, (0, 0): 1},
                  dh={(1, 1): [[1]], (1, 0): [[1]]}, dv={(1, 1): [[1]], (0, 1): [[0]]})
    with pytest.raises(IndexOutOfRange):
        Bicomplex(2, {(-1, 0): 1})


def test_bicomplex_serialization(zigzag_d2):
    restored = Bicomplex.from_dict(zigzag_d2.to_dict())
    assert restored.dims == zigzag_d2.dims
    with pytest.raises(SchemaViolation):
        Bicomplex.from_dict({"dims": {}})


def test_zigzag_cells():
    assert Piece("zigzag", 2, 0, 2).cells() == [(2, 0), (1, 1), (1, 0), (0, 1)]
    assert Piece("square", 1, 1).fits(1, 1)
    assert not Piece("zigzag", 3, 0, 3).fits(2, 2)


def test_zigzag_has_acyclic_total_complex(zigzag_d2):
    assert all(group.rank == 0 for group in homology(total(zigzag_d2)).values())
    assert double_homology(zigzag_d2) == {(0, 1): 1, (2, 0): 1}


def test_staircase_finds_the_long_differential(zigzag_d2):
    pages = staircase_pages(zigzag_d2, "column", 3)
    first, second, third = pages
    assert first.support() == [(0, 1), (2, 0)]
    assert first.is_zero_differential()
    assert second.rank_out((2, 0)) == 1
    assert third.support() == []
    for page, following in zip(pages, pages[1:]):
        assert check_page(page, following) == []


def test_row_filtration_of_the_zigzag(zigzag_d2):
    pages = staircase_pages(zigzag_d2, "row", 3)
    assert pages[-1].support() == []
    with pytest.raises(SchemaViolation):
        filtered_total(zigzag_d2, "diagonal")
