"""Margin families and the factorized measures I_Lambda, FMI and SFMI"""

from .family import (
    CoveringCertificate,
    MarginFamily,
    Pairing,
    is_connected_covering,
    ordering_satisfies_definition,
)
from .measures import (
    all_index_subsets,
    fmi,
    generic_fiber_dimension,
    i_lambda,
    i_lambda_terms,
    margin_row_labels,
    margin_statistics_matrix,
    marginal_polytope_dimension,
    maximum_i_lambda,
    sfmi,
)

__all__ = [
    "CoveringCertificate",
    "MarginFamily",
    "Pairing",
    "all_index_subsets",
    "fmi",
    "generic_fiber_dimension",
    "i_lambda",
    "i_lambda_terms",
    "is_connected_covering",
    "margin_row_labels",
    "margin_statistics_matrix",
    "marginal_polytope_dimension",
    "maximum_i_lambda",
    "ordering_satisfies_definition",
    "sfmi",
]
