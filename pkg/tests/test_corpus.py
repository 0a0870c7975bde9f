import pytest

from spiral_workbench.algebra.bicomplex import Bicomplex
from spiral_workbench.resource.artifact_io import dumps, loads
from spiral_workbench.resource.errors import SchemaViolation, SizeLimitExceeded
from spiral_workbench.resource.run_config import InstanceKind
from spiral_workbench.spectral.corpus import (corpus, diagonal_level, diagonal_realization, engineered_instances,
                                              instance_for_seed, instance_from_dict, random_instance, realize,
                                              single_entry_instance)


@pytest.mark.parametrize("kind", list(InstanceKind))
def test_same_seed_same_bytes(kind):
    first = random_instance(kind, 42, max_n=2, max_q=2, dim_cap=1)
    second = random_instance(kind, 42, max_n=2, max_q=2, dim_cap=1)
    assert dumps(first.to_dict()) == dumps(second.to_dict())


@pytest.mark.parametrize("kind", list(InstanceKind))
def test_instance_files_read_back(kind):
    instance = random_instance(kind, 3, max_n=2, max_q=2, dim_cap=1)
    data = loads(dumps(instance.to_dict()))
    restored = instance_from_dict(data)
    assert restored.kind == kind
    assert dumps(restored.to_dict()) == dumps(instance.to_dict())


def test_corpus_yields_one_instance_per_seed(small_config):
    instances = list(corpus(small_config))
    assert [instance.seed for instance in instances] == small_config.seed_list()
    assert dumps(instances[0].to_dict()) == dumps(instance_for_seed(small_config, small_config.seed).to_dict())


def test_engineered_instances_declare_their_differentials():
    instances = engineered_instances(InstanceKind.BICOMPLEX)
    assert [instance.name for instance in instances] == ["zigzag-d2", "zigzag-d2-shifted", "zigzag-d2-mixed",
                                                         "zigzag-d3"]
    assert instances[-1].expect == {"d3_nonzero": True}


def test_single_entry_instance():
    instance = single_entry_instance(InstanceKind.BICOMPLEX, 1, 1)
    assert instance.value.dims == {(1, 1): 1}


def test_realize_caps_the_levels():
    with pytest.raises(SizeLimitExceeded):
        realize(Bicomplex(2, {(6, 0): 1}), InstanceKind.BISIMPLICIAL)


def test_instance_from_dict_validates_the_kind():
    with pytest.raises(SchemaViolation):
        instance_from_dict({"instance": {}})
    with pytest.raises(SchemaViolation):
        instance_from_dict({"kind": "simplicial", "instance": {}})


def test_diagonal_level_reaches_past_the_top_total_degree():
    assert diagonal_level(Bicomplex(2, {(0, 0): 1})) == 1
    assert diagonal_level(Bicomplex(2, {(2, 1): 1})) == 4
    assert diagonal_level(Bicomplex(2, {(3, 0): 1})) == 4
    X = diagonal_realization(Bicomplex(2, {(2, 1): 1}))
    assert (X.N, X.Q) == (4, 4)
    with pytest.raises(SizeLimitExceeded):
        diagonal_realization(Bicomplex(2, {(3, 2): 1}))
