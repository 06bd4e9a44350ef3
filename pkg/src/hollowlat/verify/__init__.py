from .checks import REGISTRY, Check, evaluate_check, resolve_checks
from .context import Context
from .suite import (StaleWitnessError, SuiteReport, load_allowlist, parse_machine_line, replay,
                    run_lattice, run_suite)

__all__ = ["REGISTRY", "Check", "Context", "evaluate_check", "resolve_checks", "StaleWitnessError",
           "SuiteReport", "load_allowlist", "parse_machine_line", "replay", "run_lattice",
           "run_suite"]
