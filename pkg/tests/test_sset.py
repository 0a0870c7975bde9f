import pytest

from spiral_workbench.algebra.chain_complex import ChainComplex, homology as complex_homology
from spiral_workbench.resource.errors import NotASubcomplex, SchemaViolation, UnsupportedRing
from spiral_workbench.simplicial.sset import (SimplicialSet, boundary, cofibration_sequence_check, components, cone,
                                              euler_characteristic, fattened_simplex, homology, horn,
                                              is_acyclic, is_sphere, is_subcomplex, normalize_degeneracies,
                                              opposite, product, quotient, reduced_homology, standard_simplex,
                                              subcomplex, tr_simplex)


def test_standard_simplex_counts_and_contractibility():
    simplex = standard_simplex(2)
    assert simplex.counts() == (3, 3, 1)
    assert is_acyclic(simplex)
    assert euler_characteristic(simplex) == 1


def test_boundary_of_a_triangle_is_a_circle():
    circle = boundary(2)
    groups = homology(circle)
    assert groups[0].rank == 1
    assert groups[1].rank == 1
    assert is_sphere(circle, 1)


def test_horns_are_contractible():
    for k in range(3):
        assert is_acyclic(horn(2, k))
    assert is_subcomplex(standard_simplex(3), horn(3, 1))


def test_quotient_by_the_boundary_is_a_sphere():
    sphere = quotient(standard_simplex(2), boundary(2))
    assert sphere.counts() == (1, 0, 1)
    assert is_sphere(sphere, 2)


def test_quotient_needs_a_subcomplex():
    with pytest.raises(NotASubcomplex):
        quotient(boundary(1), standard_simplex(1))


def test_subcomplex_closes_under_faces():
    closed = subcomplex(standard_simplex(2), ["(1,2)"])
    assert closed.counts() == (2, 1)


def test_cone_on_a_circle_is_contractible():
    assert is_acyclic(cone(boundary(2)))


def test_product_of_intervals_is_a_square():
    square = product(standard_simplex(1), standard_simplex(1))
    assert square.counts() == (4, 5, 2)
    assert is_acyclic(square)


def test_opposite_reverses_edges():
    simplex = standard_simplex(2)
    flipped = opposite(simplex)
    assert flipped.counts() == simplex.counts()
    assert flipped.vertices_of(((), "(0,1)")) == ("(1)", "(0)")


def test_fattened_simplex_is_contractible():
    assert is_acyclic(fattened_simplex(2))


def test_components_of_two_points():
    assert components(boundary(1)) == [["(0)"], ["(1)"]]


def test_degeneracy_words_are_normalized():
    assert normalize_degeneracies((0, 1)) == (2, 0)
    assert normalize_degeneracies((3, 1, 0)) == (3, 1, 0)


@pytest.mark.parametrize("n", [2, 3])
def test_cofibration_sequence(n):
    report = cofibration_sequence_check(n)
    assert report["passed"], report


def test_serialization_keeps_the_face_data():
    circle = boundary(2)
    restored = SimplicialSet.from_dict(circle.to_dict())
    assert restored.counts() == circle.counts()
    assert restored.faces == circle.faces


def test_from_dict_rejects_malformed_input():
    with pytest.raises(SchemaViolation):
        SimplicialSet.from_dict({"faces": {}})
    with pytest.raises(SchemaViolation):
        SimplicialSet.from_dict({"cells": {"0": ["a"], "1": ["e"]}, "faces": {"e": [[[], "a"]]}})


def test_unsupported_ring():
    with pytest.raises(UnsupportedRing):
        homology(boundary(2), "Q")


def test_integer_torsion_and_field_coefficients():
    dims, diffs = {0: 1, 1: 1}, {1: [[2]]}
    over_z = complex_homology(ChainComplex("Z", dims, diffs))
    assert over_z[0].rank == 0 and over_z[0].torsion == (2,)
    over_f2 = complex_homology(ChainComplex(2, dims, diffs))
    assert over_f2[0].rank == 1 and over_f2[1].rank == 1


def test_subdivided_simplex_is_a_cone_on_the_boundary():
    subdivided = tr_simplex(2)
    assert subdivided.counts() == (4, 6, 3)
    assert is_acyclic(subdivided)


def test_reduced_homology_of_a_circle():
    groups = reduced_homology(boundary(2))
    assert groups[0].is_zero
    assert groups[1].rank == 1
