"""Numeric maximization of the information measures"""

from .objectives import Measure, MeasureKind, Objective, ObjectiveTerm, multi_information_gradient
from .optimizer import (
    MaximizerMatch,
    RestartSummary,
    SearchConfig,
    SearchResult,
    ascend,
    interior_start,
    maximize_measure,
    prod_exp_normalize,
    sfmi_margin_distance,
    tangent_norm,
)
from .theorem import FmiTheoremReport, verify_theorem_fmi

__all__ = [
    "FmiTheoremReport",
    "MaximizerMatch",
    "Measure",
    "MeasureKind",
    "Objective",
    "ObjectiveTerm",
    "RestartSummary",
    "SearchConfig",
    "SearchResult",
    "ascend",
    "interior_start",
    "maximize_measure",
    "multi_information_gradient",
    "prod_exp_normalize",
    "sfmi_margin_distance",
    "tangent_norm",
    "verify_theorem_fmi",
]
