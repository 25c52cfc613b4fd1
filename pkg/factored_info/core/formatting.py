"""Text forms of numbers, states and distributions used by every report"""

import math
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Union

from .distribution import Distribution
from .state_space import format_state

SIGNIFICANT_DIGITS = 12


def format_rational(value: Fraction) -> str:
    """Exact "a/b" form; integers print without a denominator"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_float(value: float, base: str = "e") -> Union[float, str]:
    """Round to 12 significant digits, converting nats to bits when base is "2" """
    if math.isinf(value):
        return "inf"
    if base == "2":
        value = value / math.log(2)
    return float(f"{value:.{SIGNIFICANT_DIGITS}g}")


def format_weight(value: Union[Fraction, float]) -> Union[str, float]:
    if isinstance(value, Fraction):
        return format_rational(value)
    return format_float(value)


def format_vector(values: Sequence[Union[Fraction, float]]) -> List[Union[str, float]]:
    return [format_weight(v) for v in values]


def distribution_to_dict(p: Distribution) -> Dict[str, Any]:
    """Document form {"cardinalities": [...], "entries": [{"state": [...], "prob": ...}]}"""
    return {
        "cardinalities": list(p.space.cardinalities),
        "entries": [
            {"state": list(state), "prob": format_weight(w)} for state, w in p.items() if w > 0
        ],
    }


def distribution_label(p: Distribution) -> str:
    """Compact form such as "1/2*d_0000 + 1/2*d_1111" """
    return " + ".join(f"{format_weight(w)}*d_{format_state(s)}" for s, w in p.items() if w > 0)
