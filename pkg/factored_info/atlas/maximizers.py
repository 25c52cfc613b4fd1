"""Maximizers of the multi-information and of the block mutual information.

The multi-information of n N-ary variables is maximized exactly by the
uniform distributions on codes of length n, minimum distance n and N words.
The mutual information between two N-ary blocks of length n is maximized
by the uniform distributions on graphs {(x, rho(x))} of permutations rho of
the N^n block states.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterator, Optional, Set, Tuple

from ..codes.codes import count_max_distance_codes, enumerate_max_distance_codes, hamming_distance
from ..core.distribution import Distribution
from ..core.measures import total_variation
from ..core.state_space import State, StateSpace, all_strings
from ..errors import CapExceededError, ExactnessRequiredError
from ..registry import OperationModule, operation
from ..settings import get_global_settings

logger = logging.getLogger(__name__)

_MODULE = OperationModule.MAXIMIZER_ATLAS


class MaximizerKind(Enum):
    MULTI_INFORMATION = "multi_information"
    BLOCK_MI = "block_MI"


@dataclass(frozen=True)
class MaximizerSet:
    """Exact maximizers of one measure on n N-ary variables (n counts all variables)"""
    kind: MaximizerKind
    N: int
    n: int
    distributions: Tuple[Distribution, ...]

    def __len__(self) -> int:
        return len(self.distributions)

    def __iter__(self) -> Iterator[Distribution]:
        return iter(self.distributions)

    @property
    def maximum_value(self) -> float:
        """(n-1) log N for the multi-information, (n/2) log N for the block MI"""
        if self.kind is MaximizerKind.MULTI_INFORMATION:
            return (self.n - 1) * math.log(self.N)
        return (self.n // 2) * math.log(self.N)

    def supports(self) -> Set[FrozenSet[State]]:
        return {frozenset(p.support()) for p in self.distributions}

    def contains(self, p: Distribution) -> bool:
        """Exact membership"""
        return any(p == q for q in self.distributions)


def _capped_factorial(k: int, cap_name: str, limit: int) -> int:
    value = 1
    for i in range(2, k + 1):
        value *= i
        if value > limit:
            raise CapExceededError(cap_name, limit, value)
    return value


@operation("enumerate_I_maximizers", _MODULE)
def enumerate_I_maximizers(N: int, n: int, cap: Optional[int] = None) -> MaximizerSet:
    """The N!^(n-1) uniform distributions on maximal-distance codes of length n"""
    if n < 2:
        raise ValueError(f"Multi-information maximizers need n >= 2, got {n}")
    codes = enumerate_max_distance_codes(N, n, cap)
    distributions = tuple(code.to_distribution() for code in codes)
    logger.info(f"Enumerated {len(distributions)} multi-information maximizers for N={N}, n={n}")
    return MaximizerSet(MaximizerKind.MULTI_INFORMATION, N, n, distributions)


@operation("enumerate_blockMI_maximizers", _MODULE)
def enumerate_blockMI_maximizers(N: int, n: int, cap: Optional[int] = None) -> MaximizerSet:
    """The (N^n)! uniform distributions on {(x, rho(x))} over 2n variables (X block first)"""
    if N < 2 or n < 1:
        raise ValueError(f"Need N >= 2 and n >= 1, got N={N}, n={n}")
    limit = get_global_settings().block_mi_cap if cap is None else cap
    _capped_factorial(N ** n, "block_mi_cap", limit)
    blocks = all_strings(N, n)
    space = StateSpace.homogeneous(2 * n, N)
    distributions = tuple(
        Distribution.uniform(space, [x + blocks[j] for x, j in zip(blocks, rho)])
        for rho in itertools.permutations(range(len(blocks)))
    )
    logger.info(f"Enumerated {len(distributions)} block-MI maximizers for N={N}, n={n}")
    return MaximizerSet(MaximizerKind.BLOCK_MI, N, 2 * n, distributions)


@operation("is_I_maximizer", _MODULE)
def is_I_maximizer(p: Distribution) -> bool:
    """Whether p is uniform on N states that differ pairwise in every coordinate"""
    if not p.exact:
        raise ExactnessRequiredError("Maximizer membership is decided on exact distributions only")
    N = p.space.N
    support = p.support()
    if len(support) != N:
        return False
    if any(p.prob(s) != p.prob(support[0]) for s in support):
        return False
    return all(hamming_distance(a, b) == p.space.n for a, b in itertools.combinations(support, 2))


def is_blockMI_maximizer(p: Distribution, n_pairs: int) -> bool:
    """Uniform on N^n states whose X halves are all distinct and whose Y halves are all distinct"""
    if not p.exact:
        raise ExactnessRequiredError("Maximizer membership is decided on exact distributions only")
    if p.space.n != 2 * n_pairs:
        raise ValueError(f"Expected {2 * n_pairs} variables, got {p.space.n}")
    support = p.support()
    if len(support) != p.space.N ** n_pairs:
        return False
    if any(p.prob(s) != p.prob(support[0]) for s in support):
        return False
    x_halves = {s[:n_pairs] for s in support}
    y_halves = {s[n_pairs:] for s in support}
    return len(x_halves) == len(support) and len(y_halves) == len(support)


def count_I_maximizers(N: int, n: int) -> int:
    return count_max_distance_codes(N, n)


def count_blockMI_maximizers(N: int, n: int) -> int:
    return math.factorial(N ** n)


def matching_maximizer(p: Distribution, maximizers: MaximizerSet) -> Tuple[int, float]:
    """Index of the maximizer nearest to p in total variation, and that distance"""
    best_index, best_distance = -1, math.inf
    for k, q in enumerate(maximizers.distributions):
        distance = total_variation(p.to_float(), q.to_float())
        if distance < best_distance:
            best_index, best_distance = k, distance
    return best_index, best_distance
