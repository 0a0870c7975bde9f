from itertools import combinations, product

import pytest

from spiral_workbench.combinatorics.simplex_cat import (Injection, chain_from_partition, compose, compose_chain,
                                                        enumerate_injections, eval_word, factor_through,
                                                        factorization_chains, normal_form, ordered_partitions,
                                                        rewrite_to_normal_form, subset_of_factorization,
                                                        two_step_factorizations)
from spiral_workbench.resource.errors import IndexOutOfRange, ObjectMismatch


def test_face_skips_its_index():
    assert Injection.face(2, 1).image == (0, 2)
    assert Injection.face(2, 1).name() == "d1"
    assert Injection.identity(3).name() == "id"


def test_injection_rejects_bad_images():
    with pytest.raises(ObjectMismatch):
        Injection(1, 2, (1, 0))
    with pytest.raises(IndexOutOfRange):
        Injection(0, 1, (2,))


def test_compose_applies_first_argument_first():
    g = Injection.face(1, 0)   # [0] -> [1], image (1,)
    f = Injection.face(2, 0)   # [1] -> [2], image (1, 2)
    assert compose(g, f).image == (2,)
    with pytest.raises(ObjectMismatch):
        compose(f, g)


def test_composition_is_associative_and_unital():
    for g, f, h in product(enumerate_injections(0, 1), enumerate_injections(1, 2), enumerate_injections(2, 3)):
        assert compose_chain([g, f, h]) == compose(g, compose(f, h))
        assert compose(Injection.identity(0), g) == g == compose(g, Injection.identity(1))


def test_eval_word_reads_letters_right_to_left():
    theta = eval_word([0, 2], 2)
    assert (theta.src, theta.tgt, theta.image) == (0, 2, (1,))
    assert theta.name() == "d0d2"


def test_eval_word_rejects_out_of_range_letters():
    with pytest.raises(IndexOutOfRange):
        eval_word([3], 2)


def test_rewriting_reaches_the_normal_form():
    """Every valid word into [3] rewrites to the omitted set of the injection it evaluates to"""
    n = 3
    for length in range(n + 1):
        for word in product(range(n + 1), repeat=length):
            if any(word[-1 - t] > n - t for t in range(length)):
                continue
            assert rewrite_to_normal_form(word) == eval_word(word, n).omitted(), word


def test_normal_form_evaluates_back():
    for m in range(-1, 4):
        for theta in enumerate_injections(m, 3):
            word = normal_form(theta)
            assert list(word) == sorted(word)
            assert eval_word(word, 3) == theta


def test_enumerate_injections_counts_binomials():
    assert len(enumerate_injections(1, 3)) == 6
    assert len(enumerate_injections(-1, 2)) == 1
    assert enumerate_injections(3, 2) == []


def test_ordered_partitions_are_surjections():
    assert len(ordered_partitions(3, 2)) == 6
    assert len(ordered_partitions(4, 2)) == 14
    assert ordered_partitions(2, 3) == []


def test_two_step_factorizations_biject_with_subsets():
    theta = Injection(0, 3, (2,))
    pairs = two_step_factorizations(theta)
    assert len(pairs) == 2 ** theta.gap
    assert len({(first, second) for first, second in pairs}) == len(pairs)
    for first, second in pairs:
        assert compose(first, second) == theta


def test_subset_of_factorization_inverts_factor_through():
    theta = Injection(1, 4, (0, 3))
    for k in range(theta.gap + 1):
        for subset in combinations(range(theta.gap), k):
            first, second = factor_through(theta, subset)
            assert subset_of_factorization(theta, first, second) == subset


def test_chain_from_partition_places_omitted_entries():
    theta = Injection(-1, 2, ())
    chain = chain_from_partition(theta, ((1,), (0, 2)))
    assert chain.blocks == ((1,), (0, 2))
    assert [factor.gap for factor in chain.factors] == [1, 2]
    assert not chain.has_identity


def test_factorization_chains_without_identities():
    theta = Injection(0, 3, (0,))
    strict = factorization_chains(theta, 2, allow_identity=False)
    assert len(strict) == 6
    assert len(factorization_chains(theta, 2)) == 8
    with pytest.raises(IndexOutOfRange):
        factorization_chains(theta, 0)
