"""Factorized information measures over margin families.

I_Lambda averages the multi-information of the margins p(X_lambda) over the
sets of a family; FMI uses all pairs and SFMI a perfect matching between an
X block and a Y block.
"""

import itertools
import logging
import math
from typing import List, Tuple

import numpy as np

from ..core.distribution import Distribution
from ..core.measures import marginal, multi_information
from ..core.state_space import State, StateSpace
from ..registry import OperationModule, operation
from .family import IndexSet, MarginFamily, Pairing

logger = logging.getLogger(__name__)

_MODULE = OperationModule.FAMILY_MEASURES


def i_lambda_terms(p: Distribution, fam: MarginFamily) -> List[Tuple[IndexSet, float]]:
    """Per-set multi-information values I(X_lambda), in family order"""
    if len(fam) == 0:
        raise ValueError("Margin family must contain at least one set")
    if fam.n != p.space.n:
        raise ValueError(f"Family is over {fam.n} variables but the distribution has {p.space.n}")
    terms = []
    for members in fam.sets:
        value = 0.0 if len(members) == 1 else multi_information(marginal(p, members))
        terms.append((members, value))
    return terms


@operation("i_lambda", _MODULE)
def i_lambda(p: Distribution, fam: MarginFamily) -> float:
    """(1/|Lambda|) sum over lambda of I(X_lambda)"""
    terms = i_lambda_terms(p, fam)
    return math.fsum(value for _, value in terms) / len(terms)


@operation("fmi", _MODULE)
def fmi(p: Distribution) -> float:
    """Average mutual information over all unordered pairs of variables"""
    if p.space.n < 2:
        raise ValueError(f"FMI needs at least 2 variables, got {p.space.n}")
    return i_lambda(p, MarginFamily.all_pairs(p.space.n))


def _check_sfmi_space(space: StateSpace) -> int:
    if space.n % 2 != 0:
        raise ValueError(f"SFMI needs an even number of variables, got {space.n}")
    if not space.is_homogeneous:
        raise ValueError(f"SFMI needs equal cardinalities, got {space.cardinalities}")
    return space.n // 2


@operation("sfmi", _MODULE)
def sfmi(p: Distribution, pairing: Pairing) -> float:
    """(1/n) sum_i MI(X_i, Y_pi(i)) on the 2n variables (X_1..X_n, Y_1..Y_n)"""
    n_pairs = _check_sfmi_space(p.space)
    if pairing.n != n_pairs:
        raise ValueError(f"Pairing over {pairing.n} pairs does not fit {p.space.n} variables")
    return i_lambda(p, MarginFamily.sfmi(pairing))


def margin_row_labels(fam: MarginFamily, space: StateSpace) -> List[Tuple[IndexSet, State]]:
    """(lambda, x_lambda) for every row of the margin statistics matrix"""
    labels = []
    for members in fam.sets:
        for sub_state in space.sub_space(members).states():
            labels.append((members, sub_state))
    return labels


@operation("margin_statistics_matrix", _MODULE)
def margin_statistics_matrix(fam: MarginFamily, space: StateSpace) -> np.ndarray:
    """0/1 matrix with one column per joint state and one row per (lambda, x_lambda).

    Column x has a 1 in row (lambda, x_lambda) exactly when x restricted to
    lambda equals x_lambda. Row blocks follow the family order, rows within a
    block follow the mixed-radix order of the margin states.
    """
    if fam.n != space.n:
        raise ValueError(f"Family is over {fam.n} variables but the state space has {space.n}")
    offsets = []
    rows = 0
    for members in fam.sets:
        offsets.append(rows)
        rows += space.sub_space(members).total
    matrix = np.zeros((rows, space.total), dtype=np.int64)
    sub_spaces = [space.sub_space(members) for members in fam.sets]
    for column, state in enumerate(space.states()):
        for offset, members, sub in zip(offsets, fam.sets, sub_spaces):
            matrix[offset + sub.encode(tuple(state[i] for i in members)), column] = 1
    return matrix


@operation("marginal_polytope_dimension", _MODULE)
def marginal_polytope_dimension(n: int, N: int, q: int) -> int:
    """Dimension sum_{i=1..q} C(n, i) (N-1)^i of the q-th order marginal polytope"""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    if not 1 <= q <= n:
        raise ValueError(f"Margin order q must satisfy 1 <= q <= n={n}, got {q}")
    return sum(math.comb(n, i) * (N - 1) ** i for i in range(1, q + 1))


def generic_fiber_dimension(n: int, N: int, q: int) -> int:
    """Dimension of the set of joint distributions sharing generic q-th order margins"""
    return N ** n - 1 - marginal_polytope_dimension(n, N, q)


def maximum_i_lambda(fam: MarginFamily, N: int) -> float:
    """Value of I_Lambda at any multi-information maximizer: mean of (|lambda| - 1) log N"""
    if len(fam) == 0:
        raise ValueError("Margin family must contain at least one set")
    return math.fsum((len(s) - 1) * math.log(N) for s in fam.sets) / len(fam)


def all_index_subsets(n: int, min_size: int = 1) -> List[IndexSet]:
    """Every subset of {0..n-1} with at least min_size elements, by size then lexicographically"""
    return [s for k in range(min_size, n + 1) for s in itertools.combinations(range(n), k)]
