"""
Operation Registry

Every public operation of the library is declared here with the module it
belongs to. While recording is active, calls to decorated operations are
noted so a caller (the verification suite, the test-suite) can check which
operations a run actually exercised.

Example usage:
    with OPERATIONS.recording() as calls:
        run_all_scenarios()
    missing = OPERATIONS.declared_names() - calls
"""

import functools
import logging
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterator, Set, TypeVar

logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable)


class OperationModule(Enum):
    """Library modules that own operations"""
    CORE_DIST = "core_dist"
    FAMILY_MEASURES = "family_measures"
    CODES = "codes"
    EXACT_POLYTOPE = "exact_polytope"
    MAXIMIZER_ATLAS = "maximizer_atlas"
    NUMERIC_SEARCH = "numeric_search"
    CLI = "cli"


@dataclass(frozen=True)
class OperationDefinition:
    """Declared operation"""
    name: str
    module: OperationModule


class OperationRegistry:
    """Registry of declared operations with optional call recording"""

    def __init__(self):
        self._operations: Dict[str, OperationDefinition] = {}
        self._lock = threading.Lock()
        self._recorded: Set[str] = set()
        self._depth = 0

    def declare(self, name: str, module: OperationModule) -> None:
        if name in self._operations:
            raise ValueError(f"Operation already declared: {name}")
        self._operations[name] = OperationDefinition(name, module)

    def get(self, name: str) -> OperationDefinition:
        return self._operations[name]

    def declared_names(self) -> Set[str]:
        return set(self._operations)

    def by_module(self, module: OperationModule) -> Set[str]:
        return {d.name for d in self._operations.values() if d.module == module}

    def record(self, name: str) -> None:
        if self._depth == 0:
            return
        with self._lock:
            self._recorded.add(name)

    @contextmanager
    def recording(self) -> Iterator[Set[str]]:
        """Record operation calls for the duration of the block.

        Yields the live set of recorded names; nested blocks share one set.
        """
        with self._lock:
            if self._depth == 0:
                self._recorded = set()
            self._depth += 1
        try:
            yield self._recorded
        finally:
            with self._lock:
                self._depth -= 1

    def operation(self, name: str, module: OperationModule) -> Callable[[F], F]:
        """Decorator declaring a function as the named operation"""
        self.declare(name, module)

        def _decorator(fn: F) -> F:
            @functools.wraps(fn)
            def _wrapped(*args, **kwargs):
                self.record(name)
                return fn(*args, **kwargs)

            _wrapped.operation_name = name
            return _wrapped  # type: ignore[return-value]

        return _decorator


OPERATIONS = OperationRegistry()


def operation(name: str, module: OperationModule) -> Callable[[F], F]:
    return OPERATIONS.operation(name, module)
