"""
Manager module for the Spiral Workbench
Contains the suite graph runner and the subcommand implementations
"""

from .suite_runner import (
    SuiteRunner,
    SuiteRegistry,
    BaseSuite,
    SuiteResult,
    SuiteStatus,
    SuiteRunnerState
)
from .commands import (
    cmd_gen_dk,
    cmd_perm,
    cmd_homology,
    cmd_spiral,
    cmd_totss,
    cmd_random,
    cmd_verify
)

__all__ = [
    'SuiteRunner',
    'SuiteRegistry',
    'BaseSuite',
    'SuiteResult',
    'SuiteStatus',
    'SuiteRunnerState',
    'cmd_gen_dk',
    'cmd_perm',
    'cmd_homology',
    'cmd_spiral',
    'cmd_totss',
    'cmd_random',
    'cmd_verify',
]

__version__ = "1.0.0"
