from collections import Counter

import pytest

from spiral_workbench.combinatorics.permutahedron import (PermFace, boundary_coequalizer_check, boundary_order_complex,
                                                          dual_witness_complex, face_lattice, facet_census,
                                                          gluing_count, label_obstruction_boundary, order_complex)
from spiral_workbench.resource.errors import IndexOutOfRange
from spiral_workbench.simplicial.sset import euler_characteristic, is_acyclic, is_sphere


@pytest.mark.parametrize("n, expected", [
    (1, (2, 1)),
    (2, (6, 6, 1)),
    (3, (24, 36, 14, 1)),
])
def test_f_vectors(n, expected):
    assert face_lattice(n).f_vector() == expected


def test_refinement_merges_consecutive_blocks():
    vertex = PermFace(((1,), (0,), (2,)))
    assert vertex.refines(PermFace(((0, 1), (2,))))
    assert not vertex.refines(PermFace(((0, 2), (1,))))
    assert len(PermFace(((0, 1, 2),)).splits()) == 6


def test_order_complex_of_the_hexagon():
    complex_ = order_complex(2)
    assert complex_.counts() == (13, 24, 12)
    assert is_acyclic(complex_)


def test_boundary_order_complex_is_a_sphere():
    circle = boundary_order_complex(2)
    assert circle.counts() == (12, 12)
    assert is_sphere(circle, 1)
    assert euler_characteristic(boundary_order_complex(3)) == 2


def test_facet_census():
    assert facet_census(3) == {"1,3": 4, "2,2": 6, "3,1": 4}


@pytest.mark.parametrize("n", [1, 2])
def test_boundary_is_glued_from_facet_products(n):
    report = boundary_coequalizer_check(n)
    assert report["passed"], report
    assert report["facets"] == 2 ** (n + 1) - 2


def test_hexagon_labels():
    labels = label_obstruction_boundary(2, 2)
    assert Counter(entry["label"] for entry in labels) == {"coherence": 1, "zero": 3, "choice": 2}
    assert {entry["stage"] for entry in labels if entry["label"] == "choice"} == {1}
    assert not any(entry["new"] for entry in labels if entry["label"] != "choice")


def test_two_choices_are_new_at_r_three():
    labels = label_obstruction_boundary(3, 3)
    assert sorted(entry["right"] for entry in labels if entry["new"]) == [[0, 1, 2], [0, 1, 3]]
    assert len(labels) == 14


def test_labels_need_r_at_least_two():
    with pytest.raises(IndexOutOfRange):
        label_obstruction_boundary(3, 1)


@pytest.mark.parametrize("r, top, glued", [(2, 6, 6), (3, 24, 36)])
def test_dual_witness_complex(r, top, glued):
    witness = dual_witness_complex(r)
    assert len(witness.cells[witness.dimension]) == top
    assert gluing_count(witness) == glued
