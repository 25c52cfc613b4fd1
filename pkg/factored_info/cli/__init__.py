"""Command-line surface: JSON documents in, reports and scenario verdicts out"""

from .commands import (
    CommandResult,
    cmd_atlas,
    cmd_codes,
    cmd_measure,
    cmd_optimize,
    cmd_polytope,
    measure_report,
    search_result_to_dict,
)
from .main import build_parser, main, run
from .scenarios import ScenarioCatalog, ScenarioOutcome, load_catalog, run_scenario
from .verify import cmd_verify

__all__ = [
    "CommandResult",
    "ScenarioCatalog",
    "ScenarioOutcome",
    "build_parser",
    "cmd_atlas",
    "cmd_codes",
    "cmd_measure",
    "cmd_optimize",
    "cmd_polytope",
    "cmd_verify",
    "load_catalog",
    "main",
    "measure_report",
    "run",
    "run_scenario",
    "search_result_to_dict",
]
