"""Maximizers of I, block MI and SFMI, and the SFMI polytope atlas"""

from .maximizers import (
    MaximizerKind,
    MaximizerSet,
    count_blockMI_maximizers,
    count_I_maximizers,
    enumerate_blockMI_maximizers,
    enumerate_I_maximizers,
    is_blockMI_maximizer,
    is_I_maximizer,
    matching_maximizer,
)
from .sfmi import (
    MarginChoiceResult,
    PairingOverlapReport,
    SfmiAtlas,
    SfmiPolytope,
    build_sfmi_atlas,
    build_sfmi_polytope,
    centroid_is_blockMI_maximizer,
    enumerate_sfmi_polytopes,
    margin_choices,
    max_entropy_point,
    pairing_centroid_overlaps,
    sfmi_support,
    solve_maximizer_margin_specifications,
    uniform_point,
)

__all__ = [
    "MarginChoiceResult",
    "MaximizerKind",
    "MaximizerSet",
    "PairingOverlapReport",
    "SfmiAtlas",
    "SfmiPolytope",
    "build_sfmi_atlas",
    "build_sfmi_polytope",
    "centroid_is_blockMI_maximizer",
    "count_I_maximizers",
    "count_blockMI_maximizers",
    "enumerate_I_maximizers",
    "enumerate_blockMI_maximizers",
    "enumerate_sfmi_polytopes",
    "is_I_maximizer",
    "is_blockMI_maximizer",
    "margin_choices",
    "matching_maximizer",
    "max_entropy_point",
    "pairing_centroid_overlaps",
    "sfmi_support",
    "solve_maximizer_margin_specifications",
    "uniform_point",
]
