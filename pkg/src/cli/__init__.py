"""
Command Line Module
click entry point, run configuration and the invariant suite.
"""

from .config import RunConfig, load_run_config
from .verify import CheckResult, InvariantSuite, SuiteReport, VerifyConfig

__all__ = [
    "CheckResult",
    "InvariantSuite",
    "RunConfig",
    "SuiteReport",
    "VerifyConfig",
    "load_run_config",
]
