"""State spaces, distributions and base information measures"""

from .distribution import Distribution, group_variables
from .measures import (
    block_mutual_information,
    chain_rule_terms,
    conditional_entropy,
    entropy,
    is_independent,
    kl_divergence,
    marginal,
    multi_information,
    product_of_marginals,
    total_variation,
)
from .state_space import BlockSplit, State, StateSpace, all_strings, format_state, parse_state

__all__ = [
    "BlockSplit",
    "Distribution",
    "State",
    "StateSpace",
    "all_strings",
    "block_mutual_information",
    "chain_rule_terms",
    "conditional_entropy",
    "entropy",
    "format_state",
    "group_variables",
    "is_independent",
    "kl_divergence",
    "marginal",
    "multi_information",
    "parse_state",
    "product_of_marginals",
    "total_variation",
]
