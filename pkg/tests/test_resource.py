import numpy as np
import pytest
from pydantic import ValidationError

from spiral_workbench.combinatorics.permutahedron import face_lattice
from spiral_workbench.resource.artifact_io import (digest, dumps, loads, parse_bidegree, parse_matrix, read_artifact,
                                                   tsv_table, with_digest, write_artifact)
from spiral_workbench.resource.dot_visualizer import face_lattice_dot, save_dot
from spiral_workbench.resource.errors import (ClassDoesNotSurvive, ExactnessFailure, InvariantFailure,
                                              SchemaViolation, WorkbenchError)
from spiral_workbench.resource.logger import LoggerFactory, find_logs_by_correlation_id
from spiral_workbench.resource.run_config import InstanceKind, RunConfig


def test_dumps_is_canonical():
    first = dumps({"b": 1, "a": np.array([[1, 2]])})
    second = dumps({"a": [[1, 2]], "b": 1})
    assert first == second
    assert first.endswith(b"\n")
    assert digest({"b": 1, "a": [[1, 2]]}) == digest({"a": [[1, 2]], "b": 1})


def test_artifacts_round_trip(tmp_path):
    payload = with_digest({"pages": [{"r": 1, "dims": {"0,0": 1}}]})
    path = tmp_path / "nested" / "report.json"
    written = write_artifact(path, payload)
    assert read_artifact(path) == payload
    assert written == digest(payload)


def test_schema_errors(tmp_path):
    with pytest.raises(SchemaViolation):
        loads(b"{not json")
    with pytest.raises(SchemaViolation):
        read_artifact(tmp_path / "missing.json")
    with pytest.raises(SchemaViolation):
        parse_bidegree("1;2")
    with pytest.raises(SchemaViolation):
        parse_matrix([[1, 2]], 2, 2, "dh")


def test_tsv_table():
    assert tsv_table(("r", "dim"), [(1, 2), (2, 0)]) == "r\tdim\n1\t2\n2\t0\n"


def test_exit_codes_and_witnesses():
    assert SchemaViolation("bad").exit_code == 2
    assert InvariantFailure("failed", {"check": "d1"}).exit_code == 1
    assert ExactnessFailure((1, 0), "E:ker_gamma=im_beta", 1).to_dict()["witness"]["node"] == "(1, 0)"
    dead = ClassDoesNotSurvive(2, {"node": [2, 0]})
    assert isinstance(dead, WorkbenchError)
    assert dead.page == 2 and str(dead) == "dies at page 2"


def test_run_config_validation():
    config = RunConfig(seed=2 ** 64 - 1, seeds=3)
    assert config.seed_list() == [2 ** 64 - 1, 0, 1]
    assert config.with_overrides(kind=InstanceKind.COSIMPLICIAL).kind == InstanceKind.COSIMPLICIAL
    assert config.kind == InstanceKind.BISIMPLICIAL
    with pytest.raises(ValidationError):
        RunConfig(prime=4)
    with pytest.raises(ValidationError):
        RunConfig(seed=-1)
    with pytest.raises(ValidationError):
        RunConfig(max_gap=9)


def test_face_lattice_dot(tmp_path):
    source = face_lattice_dot(face_lattice(2))
    assert source.startswith("digraph P2")
    assert "0|1|2" in source
    assert save_dot(source, tmp_path / "p2.dot").read_text(encoding="utf-8") == source


def test_logs_are_searchable_by_correlation_id():
    logger = LoggerFactory.get_command_logger("perm", "corr_test_logging")
    logger.info("Permutahedron artifact written", {"n": 2})
    entries = find_logs_by_correlation_id("corr_test_logging")
    assert any(entry.get("extra") == {"n": 2} for entry in entries)
