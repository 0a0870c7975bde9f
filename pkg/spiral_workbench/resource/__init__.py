"""
Resource module for the Spiral Workbench
Contains logging, configuration, artifact I/O and error types shared by every tier
"""

from .logger import (
    WorkbenchLogger,
    LoggerFactory,
    find_logs_by_correlation_id,
    search_logs,
    output_dir
)
from .errors import (
    WorkbenchError,
    SchemaViolation,
    InvariantFailure,
    ObjectMismatch,
    IndexOutOfRange,
    UnknownObject,
    NotASubcomplex,
    SizeLimitExceeded,
    UnsupportedRing,
    SimplicialIdentityError,
    BoundaryNotZero,
    NonExactSequence,
    ExactnessFailure,
    ClassDoesNotSurvive
)
from .run_config import RunConfig, Subcommand, OutputFormat, InstanceKind
from .artifact_io import dumps, loads, digest, write_artifact, read_artifact

__all__ = [
    'WorkbenchLogger',
    'LoggerFactory',
    'find_logs_by_correlation_id',
    'search_logs',
    'output_dir',
    'WorkbenchError',
    'SchemaViolation',
    'InvariantFailure',
    'ObjectMismatch',
    'IndexOutOfRange',
    'UnknownObject',
    'NotASubcomplex',
    'SizeLimitExceeded',
    'UnsupportedRing',
    'SimplicialIdentityError',
    'BoundaryNotZero',
    'NonExactSequence',
    'ExactnessFailure',
    'ClassDoesNotSurvive',
    'RunConfig',
    'Subcommand',
    'OutputFormat',
    'InstanceKind',
    'dumps',
    'loads',
    'digest',
    'write_artifact',
    'read_artifact',
]

__version__ = "1.0.0"
