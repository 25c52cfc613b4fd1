"""The verify command: runs built-in scenarios and checks operation coverage"""

import logging
from typing import Any, Dict, List, Optional

from ..registry import OPERATIONS, OperationModule, operation
from .commands import EXIT_OK, EXIT_VERIFICATION_FAILED, CommandResult
from .scenarios import ScenarioOutcome, load_catalog, run_scenario

logger = logging.getLogger(__name__)


def outcome_to_dict(outcome: ScenarioOutcome) -> Dict[str, Any]:
    return {
        "name": outcome.name,
        "passed": outcome.passed,
        "error": outcome.error,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in outcome.checks],
    }


@operation("cmd_verify", OperationModule.CLI)
def cmd_verify(scenario: Optional[str] = None, run_all: bool = False) -> CommandResult:
    """Run one named scenario or all of them.

    With ``run_all`` the operations called during the run are recorded, and
    any declared operation left uncalled fails the verification.
    """
    catalog = load_catalog()
    if run_all:
        selected = list(catalog.scenarios)
    elif scenario is None:
        raise ValueError("Name a scenario or ask for all of them")
    elif scenario not in catalog.names:
        raise ValueError(f"Unknown scenario '{scenario}', expected one of {catalog.names}")
    else:
        selected = [catalog.get(scenario)]

    with OPERATIONS.recording() as calls:
        outcomes: List[ScenarioOutcome] = [run_scenario(s) for s in selected]
        called = set(calls)

    payload: Dict[str, Any] = {"scenarios": [outcome_to_dict(o) for o in outcomes]}
    passed = all(o.passed for o in outcomes)
    if run_all:
        uncovered = sorted(OPERATIONS.declared_names() - called - {"cmd_verify"})
        payload["uncoveredOperations"] = uncovered
        if uncovered:
            logger.error(f"Operations not exercised by any scenario: {uncovered}")
            passed = False
    payload["passed"] = passed
    rows = [
        {"scenario": o.name, "passed": o.passed, "checks": len(o.checks),
         "failed": [c.name for c in o.checks if not c.passed] or (o.error or "")}
        for o in outcomes
    ]
    exit_code = EXIT_OK if passed else EXIT_VERIFICATION_FAILED
    return CommandResult(payload, rows, title="PASS" if passed else "FAIL", exit_code=exit_code)
