"""
Exception types shared by every tier of the workbench
"""

from typing import Any, Dict, Optional


class WorkbenchError(Exception):
    """Base class for all workbench errors"""

    exit_code = 1

    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.witness = witness or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": self.message, "witness": self.witness}


class SchemaViolation(WorkbenchError):
    """Input JSON or run configuration does not conform to its schema"""

    exit_code = 2


class InvariantFailure(WorkbenchError):
    """A verification check failed; the witness is serialized by the CLI"""


class ObjectMismatch(WorkbenchError):
    pass


class IndexOutOfRange(WorkbenchError):
    pass


class UnknownObject(WorkbenchError):
    pass


class NotASubcomplex(WorkbenchError):
    pass


class SizeLimitExceeded(WorkbenchError):
    pass


class UnsupportedRing(WorkbenchError):
    pass


class SimplicialIdentityError(WorkbenchError):
    pass


class BoundaryNotZero(WorkbenchError):
    """d∘d is nonzero somewhere in a chain complex or bicomplex"""


class NonExactSequence(WorkbenchError):
    pass


class ExactnessFailure(WorkbenchError):
    """An exact couple fails exactness at a node"""

    def __init__(self, node: Any, kind: str, defect: int):
        super().__init__(f"Exactness fails at {node} ({kind}), defect dimension {defect}",
                         {"node": str(node), "kind": kind, "defect": defect})
        self.node = node
        self.kind = kind
        self.defect = defect


class ClassDoesNotSurvive(WorkbenchError):
    """A representative does not extend far enough; it dies at `page`"""

    def __init__(self, page: int, witness: Optional[Dict[str, Any]] = None):
        super().__init__(f"dies at page {page}", witness)
        self.page = page
