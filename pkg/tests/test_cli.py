import pytest

from run_spiral_workbench import main
from spiral_workbench.manager.commands import parse_arrow, parse_ring
from spiral_workbench.resource.artifact_io import loads, read_artifact, write_artifact
from spiral_workbench.resource.errors import SchemaViolation
from spiral_workbench.resource.run_config import InstanceKind
from spiral_workbench.simplicial.sset import boundary
from spiral_workbench.spectral.corpus import engineered_instances

INSTANCE_BOUNDS = ["--N", "2", "--Q", "2", "--dim-cap", "1"]


def test_parse_arrow():
    theta = parse_arrow("d1d2", 2, 0)
    assert theta.image == (0,)
    assert parse_arrow("id", 2, 2).is_identity
    with pytest.raises(SchemaViolation):
        parse_arrow("d0d2", 2, 1)
    with pytest.raises(SchemaViolation):
        parse_arrow("x0", 2, 1)


def test_parse_ring():
    assert parse_ring("z") == "Z"
    assert parse_ring("5") == 5
    with pytest.raises(SchemaViolation):
        parse_ring("6")


def test_gen_dk_component(tmp_path, capsys):
    assert main(["gen-dk", "--from", "2", "--to", "0", "--component", "d1d2", "--out", str(tmp_path)]) == 0
    summary = loads(capsys.readouterr().out)
    assert summary["counts"] == [3, 2]
    assert (tmp_path / "dk-2-0-d1d2.json").exists()


def test_perm_lattice_and_labels(tmp_path):
    assert main(["perm", "--n", "2", "--out", str(tmp_path)]) == 0
    assert read_artifact(tmp_path / "perm-2-lattice.json")["n"] == 2
    assert main(["perm", "--n", "3", "--emit", "labels", "--format", "tsv", "--out", str(tmp_path)]) == 0
    table = (tmp_path / "perm-3-labels-r3.tsv").read_text(encoding="utf-8")
    assert table.splitlines()[0] == "facet\tlabel\tstage\tnew"
    assert main(["perm", "--n", "2", "--format", "dot", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "perm-2-lattice.dot").exists()


def test_homology_of_a_circle(tmp_path):
    source = tmp_path / "circle.json"
    write_artifact(source, boundary(2).to_dict())
    assert main(["homology", "--in", str(source), "--ring", "Z", "--out", str(tmp_path)]) == 0
    report = read_artifact(tmp_path / "circle.homology.json")
    assert report["homology"]["1"] == {"betti": 1, "torsion": []}


def test_random_is_deterministic(tmp_path):
    first, second = tmp_path / "first", tmp_path / "second"
    for target in (first, second):
        assert main(["random", "--seed", "5", "--count", "2", *INSTANCE_BOUNDS, "--out", str(target)]) == 0
    for name in ("bisimplicial-5.json", "bisimplicial-6.json"):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_spiral_on_an_engineered_instance(tmp_path):
    source = tmp_path / "zigzag.json"
    write_artifact(source, engineered_instances(InstanceKind.BISIMPLICIAL)[0].to_dict())
    assert main(["spiral", "--in", str(source), "--rmax", "3", "--verify", "all", "--out", str(tmp_path)]) == 0
    report = read_artifact(tmp_path / "zigzag-d2.spiral.json")
    assert report["exactness"]["passed"]
    assert report["pages"][1]["dims"] == {"0,1": 1, "2,0": 1}


def test_totss_on_a_random_instance(tmp_path):
    assert main(["random", "--kind", "cosimplicial", "--seed", "1", *INSTANCE_BOUNDS, "--out", str(tmp_path)]) == 0
    source = tmp_path / "cosimplicial-1.json"
    assert main(["totss", "--in", str(source), "--rmax", "3", "--format", "tsv", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "random-cosimplicial-1.totss.tsv").exists()


def test_verify_writes_a_report(tmp_path):
    assert main(["verify", "--suite", "obstruction-labels", "--emit-graph", "--out", str(tmp_path)]) == 0
    report = read_artifact(tmp_path / "verify-obstruction-labels-0.json")
    assert report["passed"]
    assert (tmp_path / "suite_graph.dot").exists()


def test_schema_violations_exit_with_two(tmp_path, capsys):
    assert main(["random", "--p", "4", "--out", str(tmp_path)]) == 2
    assert main(["verify", "--suite", "no-such-suite", "--out", str(tmp_path)]) == 2
    error = capsys.readouterr().err
    assert "SchemaViolation" in error
    assert main(["homology", "--in", str(tmp_path / "missing.json"), "--out", str(tmp_path)]) == 2


def test_verify_accepts_anchor_names(tmp_path):
    assert main(["verify", "--suite", "prop5.4", "--max-gap", "4", "--out", str(tmp_path)]) == 0
    report = read_artifact(tmp_path / "verify-prop5.4-0.json")
    assert report["passed"]
    assert list(report["suites"]) == ["permutahedral-components"]
    gaps = {check["gap"] for check in report["suites"]["permutahedral-components"]["checks"]
            if check["check"] == "components_are_permutahedra"}
    assert gaps == {1, 2, 3, 4}


def test_random_bicomplexes_at_corpus_bounds_are_deterministic(tmp_path):
    first, second = tmp_path / "first", tmp_path / "second"
    bounds = ["--kind", "bicomplex", "--seed", "7", "--N", "4", "--Q", "4", "--dim-cap", "3"]
    for target in (first, second):
        assert main(["random", *bounds, "--out", str(target)]) == 0
    assert (first / "bicomplex-7.json").read_bytes() == (second / "bicomplex-7.json").read_bytes()
