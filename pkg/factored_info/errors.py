"""Exception types raised by factored-info"""


class FactoredInfoError(Exception):
    """Base class for factored-info errors"""


class CapExceededError(FactoredInfoError, ValueError):
    """An enumeration would exceed a configured cap"""

    def __init__(self, cap_name: str, limit: int, required: int):
        self.cap_name = cap_name
        self.limit = limit
        self.required = required
        super().__init__(
            f"Cap '{cap_name}' exceeded: {required} required, limit is {limit}. "
            f"Raise it with FACTORED_INFO_{cap_name.upper()} or the matching keyword argument."
        )


class ExactnessRequiredError(FactoredInfoError, ValueError):
    """A floating-point distribution was passed where exact weights are required"""


class InvariantViolation(FactoredInfoError, AssertionError):
    """An internal consistency check failed"""


def check_cap(cap_name: str, limit: int, required: int) -> None:
    if required > limit:
        raise CapExceededError(cap_name, limit, required)
