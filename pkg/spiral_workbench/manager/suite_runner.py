from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Annotated, Any, Dict, List, Optional, Tuple, Type

from langgraph.checkpoint.memory import MemorySaver
from langgraph.graph import END, StateGraph
from tqdm import tqdm

from ..resource.artifact_io import digest, dumps, loads
from ..resource.dot_visualizer import suite_graph_dot
from ..resource.errors import SchemaViolation, WorkbenchError
from ..resource.logger import LoggerFactory
from ..resource.run_config import RunConfig


class SuiteStatus(Enum):
    """Suite execution status"""
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"
    OPTED_OUT = "opted_out"


@dataclass
class SuiteResult:
    """Outcome of one verification suite"""
    name: str
    criterion: int = 0
    passed: bool = False
    checks: List[Dict[str, Any]] = field(default_factory=list)
    witness: Optional[Dict[str, Any]] = None
    error: str = ""
    execution_time: float = 0.0
    status: SuiteStatus = SuiteStatus.PENDING
    metadata: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "criterion": self.criterion,
            "passed": self.passed,
            "checks": self.checks,
            "witness": self.witness,
            "error": self.error,
            "status": self.status.value,
        }


def merge_suite_results(existing: Dict[str, SuiteResult], new: Dict[str, SuiteResult]) -> Dict[str, SuiteResult]:
    """Merge function: updates existing dict with new entries"""
    merged = dict(existing)
    merged.update(new)
    return merged


def merge_metadata(existing: Dict[str, Any], new: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(existing)
    merged.update(new)
    return merged


def latest_timestamp(old: str, new: str) -> str:
    return max(old, new)


@dataclass
class SuiteRunnerState:
    """State for the suite runner: one result per suite"""
    suite_results: Annotated[Dict[str, SuiteResult], merge_suite_results] = field(default_factory=dict)
    metadata: Annotated[Dict[str, Any], merge_metadata] = field(default_factory=dict)
    timestamp: Annotated[str, latest_timestamp] = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())


class BaseSuite(ABC):
    """Base class for all verification suites.

    A suite records named checks; each check is a JSON-safe dict with a
    `passed` flag. The first failing check becomes the suite's witness.
    """

    criterion: int = 0
    # extra selector names, one per acceptance anchor the suite covers
    aliases: Tuple[str, ...] = ()

    def __init__(self, name: str, description: str, correlation_id: Optional[str] = None):
        self.name = name
        self.description = description
        self.correlation_id = correlation_id
        self.logger = LoggerFactory.get_suite_logger(name, correlation_id)
        self.checks: List[Dict[str, Any]] = []

    def opt_in(self, config: RunConfig) -> bool:
        """Run when the selector names this suite or asks for all of them"""
        selected = config.suite in ("all", self.name, *self.aliases)
        self.logger.info(f"Suite {self.name} opt-in decision: {selected}")
        return selected

    def record(self, check: str, passed: bool, **detail: Any) -> bool:
        entry = {"check": check, "passed": bool(passed), **detail}
        self.checks.append(loads(dumps(entry)))
        self.logger.log_check(check, bool(passed), {"suite": self.name})
        return bool(passed)

    def progress(self, items, config: RunConfig, label: str):
        return tqdm(items, desc=f"{self.name}:{label}", disable=not config.progress)

    @abstractmethod
    def run(self, config: RunConfig) -> List[Dict[str, Any]]:
        """Execute the suite and return its checks"""
        pass


class SuiteRegistry:
    """Registry for managing suites"""

    def __init__(self):
        self._suites: Dict[str, Type[BaseSuite]] = {}
        self._aliases: Dict[str, str] = {}
        self.logger = LoggerFactory.get_logger("SuiteRegistry")

    def register_suite(self, suite_class: Type[BaseSuite]) -> None:
        """Register a suite class under its command-line name and its aliases"""
        suite_name = suite_class.suite_name
        self._suites[suite_name] = suite_class
        for alias in suite_class.aliases:
            self._aliases[alias] = suite_name
        self.logger.debug(f"Registered suite: {suite_name}", {"aliases": list(suite_class.aliases)})

    def resolve(self, selector: str) -> Optional[str]:
        """The registered name behind a suite name or alias"""
        if selector in self._suites:
            return selector
        return self._aliases.get(selector)

    def get_suite_class(self, suite_name: str) -> Optional[Type[BaseSuite]]:
        resolved = self.resolve(suite_name)
        return self._suites.get(resolved) if resolved else None

    def get_all_suite_names(self) -> List[str]:
        return list(self._suites.keys())

    def get_all_aliases(self) -> Dict[str, str]:
        return dict(self._aliases)


class SuiteRunner:
    """Runs the verification suites as a LangGraph fan-out"""

    def __init__(self, config: RunConfig, correlation_id: Optional[str] = None):
        self.config = config
        self.correlation_id = correlation_id
        self.registry = SuiteRegistry()
        self.logger = LoggerFactory.get_logger("SuiteRunner", correlation_id)
        self.memory = MemorySaver()
        self._setup_default_suites()
        if config.suite != "all" and self.registry.resolve(config.suite) is None:
            choices = ['all'] + self.registry.get_all_suite_names() + sorted(self.registry.get_all_aliases())
            raise SchemaViolation(f"Unknown suite {config.suite!r}; choose one of {', '.join(choices)}")
        self.graph = self._build_suite_graph()
        self.logger.info("Suite runner initialized with graph-based execution")

    def _setup_default_suites(self):
        from ..suites import DEFAULT_SUITES

        for suite_class in DEFAULT_SUITES:
            self.registry.register_suite(suite_class)

    def register_custom_suite(self, suite_class: Type[BaseSuite]) -> None:
        self.registry.register_suite(suite_class)
        self.graph = self._build_suite_graph()
        self.logger.info(f"Registered custom suite: {suite_class.suite_name}")

    @staticmethod
    def node_name(suite_name: str) -> str:
        return "suite_" + suite_name.replace("-", "_")

    def _build_suite_graph(self):
        """pre_node -> one node per suite -> post_node -> END"""
        graph = StateGraph(SuiteRunnerState)
        graph.add_node("pre_node", self._pre_node)
        suite_names = self.registry.get_all_suite_names()
        for suite_name in suite_names:
            graph.add_node(self.node_name(suite_name), self._create_suite_node(suite_name))
        graph.add_node("post_node", self._post_node)

        graph.set_entry_point("pre_node")
        for suite_name in suite_names:
            graph.add_edge("pre_node", self.node_name(suite_name))
            graph.add_edge(self.node_name(suite_name), "post_node")
        graph.add_edge("post_node", END)
        return graph.compile(checkpointer=self.memory)

    def graph_dot(self) -> str:
        return suite_graph_dot(self.graph)

    def _pre_node(self, state: SuiteRunnerState) -> Dict[str, Any]:
        node_logger = LoggerFactory.get_node_logger("pre_node", self.correlation_id)
        node_logger.log_suite_step("pre_node", "started", {"suite": self.config.suite, "seed": self.config.seed})
        return {"metadata": {"pre_processing_completed": True,
                             "suite_count": len(self.registry.get_all_suite_names())}}

    def _create_suite_node(self, suite_name: str):
        def suite_node(state: SuiteRunnerState) -> Dict[str, Any]:
            return {"suite_results": {suite_name: self._execute_suite(suite_name)}}
        return suite_node

    def _execute_suite(self, suite_name: str) -> SuiteResult:
        suite_class = self.registry.get_suite_class(suite_name)
        if not suite_class:
            self.logger.error(f"Suite class not found: {suite_name}")
            return SuiteResult(name=suite_name, error=f"Suite class not found: {suite_name}",
                               status=SuiteStatus.FAILED)
        suite = suite_class(correlation_id=self.correlation_id)
        if not suite.opt_in(self.config):
            return SuiteResult(name=suite_name, criterion=suite.criterion, passed=True, status=SuiteStatus.OPTED_OUT)

        start_time = datetime.now(timezone.utc)
        try:
            self.logger.log_suite_step(suite_name, "running")
            checks = suite.run(self.config)
            failing = [check for check in checks if not check["passed"]]
            end_time = datetime.now(timezone.utc)
            execution_time = (end_time - start_time).total_seconds()
            result = SuiteResult(
                name=suite_name,
                criterion=suite.criterion,
                passed=not failing,
                checks=checks,
                witness=failing[0] if failing else None,
                execution_time=execution_time,
                status=SuiteStatus.COMPLETED,
                metadata={"completed_at": end_time.isoformat()},
            )
            self.logger.log_suite_step(suite_name, "passed" if result.passed else "failed",
                                       {"checks": len(checks), "failing": len(failing),
                                        "seconds": round(execution_time, 3)})
            return result
        except Exception as e:
            self.logger.error(f"Suite {suite_name} failed: {str(e)}")
            witness = e.to_dict() if isinstance(e, WorkbenchError) else {"error": type(e).__name__, "message": str(e)}
            return SuiteResult(name=suite_name, criterion=suite.criterion, checks=list(suite.checks),
                               witness=loads(dumps(witness)), error=str(e), status=SuiteStatus.FAILED,
                               execution_time=(datetime.now(timezone.utc) - start_time).total_seconds())

    def _post_node(self, state: SuiteRunnerState) -> Dict[str, Any]:
        ran = [r for r in state.suite_results.values() if r.status != SuiteStatus.OPTED_OUT]
        node_logger = LoggerFactory.get_node_logger("post_node", self.correlation_id)
        node_logger.log_suite_step("post_node", "completed", {"suites": len(ran)})
        return {"metadata": {"post_processing_completed": True, "completed_suites": len(ran)},
                "timestamp": datetime.now(timezone.utc).isoformat()}

    def run(self) -> Dict[str, Any]:
        """Run the selected suites; the report is ordered by suite name"""
        thread = {"configurable": {"thread_id": self.correlation_id or "verify"}}
        try:
            final_state = self.graph.invoke(SuiteRunnerState(), config=thread)
        except Exception as e:
            self.logger.error(f"Failed to run suites: {str(e)}")
            raise
        results = final_state.get("suite_results", {})
        selected = {name: result for name, result in sorted(results.items())
                    if result.status != SuiteStatus.OPTED_OUT}
        failing = [result for result in selected.values() if not result.passed]
        payload = {
            "suite": self.config.suite,
            "seed": self.config.seed,
            "seeds": self.config.seeds,
            "passed": not failing,
            "suites": {name: result.to_dict() for name, result in selected.items()},
            "first_failure": {"suite": failing[0].name, "witness": failing[0].witness} if failing else None,
        }
        self.logger.info("Suite timings", {name: round(result.execution_time, 3) for name, result in selected.items()})
        return {**payload, "digest": digest(payload)}

    def get_available_suites(self) -> List[str]:
        return self.registry.get_all_suite_names()

    def get_suite_info(self, suite_name: str) -> Optional[Dict[str, Any]]:
        suite_class = self.registry.get_suite_class(suite_name)
        if not suite_class:
            return None
        instance = suite_class()
        return {"name": suite_name, "description": instance.description, "criterion": instance.criterion,
                "class": suite_class.__name__}
