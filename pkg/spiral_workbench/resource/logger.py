"""
Structured logger for the Spiral Workbench
Every record carries a JSON payload with the run's correlation_id
"""

import logging
import os
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

import orjson
from dotenv import load_dotenv

load_dotenv()


def _project_root() -> Path:
    current = Path.cwd()
    while current != current.parent:
        if (current / ".env").exists():
            return current
        current = current.parent
    return Path.cwd()


def _log_dir() -> Path:
    return _project_root() / "logs"


class WorkbenchLogger:
    def __init__(self, name: str, correlation_id: Optional[str] = None):
        self.name = name
        self.correlation_id = correlation_id
        self.log_dir = _log_dir()
        self.log_dir.mkdir(exist_ok=True)
        logger_name = f"spiral.{name}" if correlation_id is None else f"spiral.{name}.{correlation_id}"
        self.logger = logging.getLogger(logger_name)
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False
        if not self.logger.handlers:
            self._setup_handlers()

    def _setup_handlers(self):
        formatter = logging.Formatter('%(asctime)s | %(levelname)s | %(name)s | %(message)s', datefmt='%Y-%m-%d %H:%M:%S')

        console_handler = logging.StreamHandler()
        console_handler.setLevel(logging.INFO)
        console_handler.setFormatter(formatter)
        self.logger.addHandler(console_handler)

        self._setup_file_handlers(formatter)

    def _setup_file_handlers(self, formatter):
        general_handler = logging.FileHandler(self.log_dir / "spiral_general.log", encoding='utf-8')
        general_handler.setLevel(logging.DEBUG)
        general_handler.setFormatter(formatter)
        self.logger.addHandler(general_handler)

        if self.correlation_id:
            correlation_handler = logging.FileHandler(self.log_dir / f"correlation_{self.correlation_id}.log", encoding='utf-8')
            correlation_handler.setLevel(logging.DEBUG)
            correlation_handler.setFormatter(formatter)
            self.logger.addHandler(correlation_handler)

    def _format_message(self, message: str, extra_data: Optional[Dict[str, Any]] = None) -> str:
        log_data = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "logger": self.name,
            "message": message
        }
        if self.correlation_id:
            log_data["correlation_id"] = self.correlation_id
        if extra_data:
            log_data["extra"] = extra_data
        return orjson.dumps(log_data, default=str).decode("utf-8")

    def debug(self, message: str, extra_data: Optional[Dict[str, Any]] = None):
        self.logger.debug(self._format_message(message, extra_data))

    def info(self, message: str, extra_data: Optional[Dict[str, Any]] = None):
        self.logger.info(self._format_message(message, extra_data))

    def warning(self, message: str, extra_data: Optional[Dict[str, Any]] = None):
        self.logger.warning(self._format_message(message, extra_data))

    def error(self, message: str, extra_data: Optional[Dict[str, Any]] = None):
        self.logger.error(self._format_message(message, extra_data))

    def critical(self, message: str, extra_data: Optional[Dict[str, Any]] = None):
        self.logger.critical(self._format_message(message, extra_data))

    # Specialized logging methods
    def log_suite_step(self, step: str, status: str, extra_data: Optional[Dict[str, Any]] = None):
        """Log a suite or graph step with its status"""
        step_data = {"step": step, "status": status}
        if extra_data:
            step_data.update(extra_data)
        self.info(f"Suite step: {step} - {status}", step_data)

    def log_check(self, check: str, passed: bool, extra_data: Optional[Dict[str, Any]] = None):
        """Log the outcome of a single invariant check"""
        check_data = {"check": check, "passed": passed}
        if extra_data:
            check_data.update(extra_data)
        if passed:
            self.debug(f"Check {check} passed", check_data)
        else:
            self.warning(f"Check {check} FAILED", check_data)

    def log_page(self, r: int, dims: Dict[str, int], extra_data: Optional[Dict[str, Any]] = None):
        """Log the nonzero dimensions of a spectral sequence page"""
        page_data = {"r": r, "dims": dims}
        if extra_data:
            page_data.update(extra_data)
        self.debug(f"Page E^{r}: {sum(dims.values())} total dimension", page_data)


class LoggerFactory:
    @staticmethod
    def get_logger(name: str, correlation_id: Optional[str] = None) -> WorkbenchLogger:
        return WorkbenchLogger(name, correlation_id)

    @staticmethod
    def get_suite_logger(suite_name: str, correlation_id: Optional[str] = None) -> WorkbenchLogger:
        return WorkbenchLogger(f"suite.{suite_name}", correlation_id)

    @staticmethod
    def get_node_logger(node_name: str, correlation_id: Optional[str] = None) -> WorkbenchLogger:
        return WorkbenchLogger(f"node.{node_name}", correlation_id)

    @staticmethod
    def get_command_logger(command: str, correlation_id: Optional[str] = None) -> WorkbenchLogger:
        return WorkbenchLogger(f"command.{command}", correlation_id)


def _parse_log_line(line: str) -> Optional[Dict[str, Any]]:
    # JSON payload sits after the "time | level | name |" prefix
    json_part = line.split('|', 3)[-1].strip() if '|' in line else line
    try:
        return orjson.loads(json_part)
    except orjson.JSONDecodeError:
        return None


def find_logs_by_correlation_id(correlation_id: str) -> List[Dict[str, Any]]:
    """Find all log payloads written for a specific correlation ID"""
    correlation_file = _log_dir() / f"correlation_{correlation_id}.log"
    if not correlation_file.exists():
        return []
    logs = []
    with open(correlation_file, 'r', encoding='utf-8') as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            entry = _parse_log_line(line)
            if entry is not None:
                logs.append(entry)
    return logs


def search_logs(query: str, log_file: str = "spiral_general.log") -> List[Dict[str, Any]]:
    """Search the general log for payloads mentioning a term"""
    log_file_path = _log_dir() / log_file
    if not log_file_path.exists():
        return []
    matching_logs = []
    with open(log_file_path, 'r', encoding='utf-8') as f:
        for line in f:
            line = line.strip()
            if query.lower() in line.lower():
                entry = _parse_log_line(line)
                if entry is not None:
                    matching_logs.append(entry)
    return matching_logs


def output_dir() -> Path:
    """Artifact directory: SPIRAL_WORKBENCH_OUTPUT_DIR if set, else ./output"""
    override = os.getenv("SPIRAL_WORKBENCH_OUTPUT_DIR", "").strip()
    return Path(override) if override else Path.cwd() / "output"


if __name__ == "__main__":
    logger = LoggerFactory.get_logger("test", "test-correlation-123")
    logger.info("Test message", {"key": "value"})
    logger.log_suite_step("spiral-vs-staircase", "started", {"seeds": 4})
    logger.log_check("couple_exactness", True)
    print(f"Found {len(find_logs_by_correlation_id('test-correlation-123'))} logs for test-correlation-123")
