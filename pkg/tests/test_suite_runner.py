from typing import Any, Dict, List, Optional

import pytest

from spiral_workbench.manager.suite_runner import BaseSuite, SuiteRunner, SuiteStatus
from spiral_workbench.resource.errors import SchemaViolation
from spiral_workbench.resource.logger import find_logs_by_correlation_id
from spiral_workbench.resource.run_config import RunConfig
from spiral_workbench.suites import DEFAULT_SUITES


class BrokenSuite(BaseSuite):
    """Records one passing check, then raises"""

    suite_name = "broken"
    criterion = 0

    def __init__(self, correlation_id: Optional[str] = None):
        super().__init__(name=self.suite_name, description="Always raises", correlation_id=correlation_id)

    def run(self, config: RunConfig) -> List[Dict[str, Any]]:
        self.record("before_failure", True)
        raise ValueError("boom")


def _run(config: RunConfig, suite: str) -> Dict[str, Any]:
    return SuiteRunner(config.with_overrides(suite=suite), "corr_test_suites").run()


def test_registry_lists_every_suite(small_config):
    runner = SuiteRunner(small_config.with_overrides(suite="determinism"))
    names = runner.get_available_suites()
    assert names == [suite.suite_name for suite in DEFAULT_SUITES]
    assert len(names) == 10
    assert sorted(suite.criterion for suite in DEFAULT_SUITES) == [2, 3, 4, 5, 6, 7, 8, 8, 9, 10]
    info = runner.get_suite_info("lifting")
    assert info["class"] == "LiftingSuite"
    assert runner.get_suite_info("missing") is None


def test_unknown_suite_is_a_schema_violation(small_config):
    with pytest.raises(SchemaViolation):
        SuiteRunner(small_config.with_overrides(suite="no-such-suite"))


def test_graph_fans_out_to_every_suite(small_config):
    source = SuiteRunner(small_config).graph_dot()
    assert "pre_node" in source and "post_node" in source
    assert "suite_obstruction_labels" in source


@pytest.mark.parametrize("suite", ["factorization-bijection", "obstruction-labels", "permutahedral-components"])
def test_combinatorial_suites_pass(small_config, suite):
    report = _run(small_config, suite)
    assert report["passed"], report["first_failure"]
    assert list(report["suites"]) == [suite]
    assert report["suites"][suite]["checks"]


def test_report_is_reproducible(small_config):
    first = _run(small_config, "obstruction-labels")
    second = _run(small_config, "obstruction-labels")
    assert first["digest"] == second["digest"]


@pytest.mark.parametrize("suite", ["moore-chains", "spiral-vs-staircase", "abutment", "cosimplicial-d1",
                                   "cosimplicial-lifts", "determinism"])
def test_corpus_suites_pass_on_a_small_corpus(small_config, suite):
    report = _run(small_config, suite)
    assert report["passed"], report["first_failure"]


def test_lifting_suite_covers_the_engineered_instances(small_config):
    report = _run(small_config.with_overrides(seeds=1), "lifting")
    assert report["passed"], report["first_failure"]
    checks = {check["check"] for check in report["suites"]["lifting"]["checks"]}
    assert "engineered_coverage" in checks


def test_a_raising_suite_fails_with_a_witness(small_config):
    runner = SuiteRunner(small_config.with_overrides(suite="obstruction-labels"))
    runner.register_custom_suite(BrokenSuite)
    runner.config = runner.config.with_overrides(suite="broken")
    result = runner._execute_suite("broken")
    assert result.status == SuiteStatus.FAILED
    assert result.witness == {"error": "ValueError", "message": "boom"}
    assert [check["check"] for check in result.checks] == ["before_failure"]

    report = runner.run()
    assert not report["passed"]
    assert report["first_failure"]["suite"] == "broken"
    assert list(report["suites"]) == ["broken"]


def test_anchor_names_select_their_suites(small_config):
    runner = SuiteRunner(small_config.with_overrides(suite="lemma5.3"))
    assert runner.registry.get_all_aliases() == {
        "lemma5.3": "factorization-bijection",
        "prop5.4": "permutahedral-components",
        "lemma4.1": "moore-chains",
        "thm3.3": "spiral-vs-staircase",
        "con4.2": "lifting",
        "con7.3-d1": "cosimplicial-d1",
        "prop9.5": "cosimplicial-lifts",
    }
    assert runner.registry.get_suite_class("con4.2").suite_name == "lifting"
    report = runner.run()
    assert report["passed"], report["first_failure"]
    assert list(report["suites"]) == ["factorization-bijection"]


def test_graph_nodes_log_under_their_own_names(small_config):
    SuiteRunner(small_config.with_overrides(suite="obstruction-labels"), "corr_test_nodes").run()
    loggers = {entry["logger"] for entry in find_logs_by_correlation_id("corr_test_nodes")}
    assert {"node.pre_node", "node.post_node"} <= loggers
