import pytest

from spiral_workbench.combinatorics.permutahedron import order_complex
from spiral_workbench.combinatorics.simplex_cat import Injection
from spiral_workbench.resource.errors import ObjectMismatch, SizeLimitExceeded, UnknownObject
from spiral_workbench.simplicial.dk_resolution import (NestedWord, arrow_name, boundary_of_component, component_of,
                                                       components_by_arrow, delta_op_category, dk_mapping_space,
                                                       free_dag_category, is_degenerate, iso_check)
from spiral_workbench.simplicial.sset import boundary, is_acyclic, is_sphere, opposite, standard_simplex


@pytest.fixture
def gap_two_components():
    return components_by_arrow(delta_op_category(0, 2), 2, 0)


def test_delta_op_category_is_a_category():
    category = delta_op_category(0, 2)
    category.validate()
    assert len(category.hom(2, 0)) == 3
    assert category.is_identity(arrow_name(Injection.identity(1)))


def test_gap_one_components_are_points():
    space = dk_mapping_space(delta_op_category(1, 2), 2, 1)
    assert space.counts() == (3,)


def test_gap_two_components_are_intervals(gap_two_components):
    assert len(gap_two_components) == 3
    for component in gap_two_components.values():
        assert component.counts() == (3, 2)
        assert is_acyclic(component)
        assert is_sphere(boundary_of_component(component), 0)


def test_gap_two_component_is_the_order_complex_of_an_interval(gap_two_components):
    component = next(iter(gap_two_components.values()))
    assert iso_check(component, order_complex(1)) is not None


def test_opposite_face_convention_is_not_isomorphic(gap_two_components):
    component = next(iter(gap_two_components.values()))
    flipped = opposite(component)
    assert is_acyclic(flipped)
    assert iso_check(component, flipped) is None


def test_gap_three_component_matches_the_hexagon():
    space = dk_mapping_space(delta_op_category(0, 3), 3, 0)
    theta = Injection(0, 3, (0,))
    component = component_of(space, theta)
    assert component.counts() == (13, 24, 12)
    assert is_acyclic(component)
    assert is_sphere(boundary_of_component(component), 1)


def test_component_of_rejects_foreign_arrows():
    space = dk_mapping_space(delta_op_category(0, 2), 2, 0)
    with pytest.raises(ObjectMismatch):
        component_of(space, "d0@5")


def test_unknown_objects():
    with pytest.raises(UnknownObject):
        dk_mapping_space(delta_op_category(0, 2), 5, 0)
    with pytest.raises(UnknownObject):
        delta_op_category(3, 1)


def test_free_category_on_a_path():
    category = free_dag_category([("f", "a", "b"), ("g", "b", "c")])
    space = dk_mapping_space(category, "a", "c")
    assert space.counts() == (2, 1)


def test_iso_check():
    assert iso_check(boundary(2), boundary(2)) is not None
    assert iso_check(standard_simplex(1), boundary(2)) is None
    with pytest.raises(SizeLimitExceeded):
        iso_check(standard_simplex(3), standard_simplex(3), cap=4)


def test_degenerate_nested_words():
    assert not is_degenerate(NestedWord(("a", "b"), ((2,),)))
    assert is_degenerate(NestedWord(("a",), ((1,),)))
    assert is_degenerate(NestedWord(("a", "b"), ((1, 1),)))
