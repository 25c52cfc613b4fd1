"""Entropies, divergences, marginals and the base information measures.

All measures are reported in nats. ``0 * log 0`` is taken as 0 and the
Kullback-Leibler divergence returns ``math.inf`` when p puts mass where q
has none.
"""

import logging
import math
from fractions import Fraction
from typing import Iterable, List

from ..errors import InvariantViolation
from ..registry import OperationModule, operation
from ..settings import get_global_settings
from .distribution import Distribution, Weight, group_variables
from .state_space import BlockSplit

logger = logging.getLogger(__name__)

_MODULE = OperationModule.CORE_DIST


def log_weight(w: Weight) -> float:
    """Natural log of a positive weight; rationals below the float range stay finite"""
    value = float(w)
    if value == 0.0 and isinstance(w, Fraction):
        return math.log(w.numerator) - math.log(w.denominator)
    return math.log(value)


@operation("entropy", _MODULE)
def entropy(p: Distribution) -> float:
    """Shannon entropy -sum p(x) log p(x) in nats"""
    value = -math.fsum(float(w) * log_weight(w) for w in p.weights if w > 0)
    return max(value, 0.0)


@operation("kl_divergence", _MODULE)
def kl_divergence(p: Distribution, q: Distribution) -> float:
    """D(p || q); ``math.inf`` if p is not absolutely continuous w.r.t. q"""
    if p.space != q.space:
        raise ValueError(
            f"State spaces differ: {p.space.cardinalities} vs {q.space.cardinalities}"
        )
    terms = []
    for pw, qw in zip(p.weights, q.weights):
        if pw == 0:
            continue
        if qw == 0:
            return math.inf
        terms.append(float(pw) * (log_weight(pw) - log_weight(qw)))
    return max(math.fsum(terms), 0.0)


def _divergence_from_product(p: Distribution) -> float:
    """D(p || p(X_1)...p(X_n)) with the product taken in log space.

    A marginal is positive wherever p is, so no log argument is zero, and a
    product weight too small for a float never turns the sum infinite.
    """
    marginals = [marginal(p, [i]).weights for i in range(p.space.n)]
    terms = []
    for state, w in p.items():
        if w == 0:
            continue
        log_product = math.fsum(log_weight(m[x]) for m, x in zip(marginals, state))
        terms.append(float(w) * (log_weight(w) - log_product))
    return max(math.fsum(terms), 0.0)


@operation("marginal", _MODULE)
def marginal(p: Distribution, subset: Iterable[int]) -> Distribution:
    """Marginal of p on the variables in subset (kept in increasing index order)"""
    indices = p.space.check_subset(subset)
    return group_variables(p, [[i] for i in indices])


@operation("product_of_marginals", _MODULE)
def product_of_marginals(p: Distribution) -> Distribution:
    """p(X_1) ... p(X_n), the closest fully factorized distribution to p"""
    return Distribution.product([marginal(p, [i]) for i in range(p.space.n)])


def is_independent(p: Distribution) -> bool:
    """Whether p equals the product of its marginals (exactly in rational mode)"""
    q = product_of_marginals(p)
    if p.exact:
        return p.weights == q.weights
    tolerance = get_global_settings().float_tolerance
    return all(abs(a - b) <= tolerance for a, b in zip(p.weights, q.weights))


@operation("multi_information", _MODULE)
def multi_information(p: Distribution) -> float:
    """Multi-information sum_i H(X_i) - H(X_1, ..., X_n).

    The divergence form D(p || p(X_1)...p(X_n)) is evaluated as well and must
    agree within the configured tolerance.
    """
    if p.space.n == 1:
        return 0.0
    if p.exact and p.weights == product_of_marginals(p).weights:
        return 0.0
    entropy_form = math.fsum(entropy(marginal(p, [i])) for i in range(p.space.n)) - entropy(p)
    divergence_form = _divergence_from_product(p)
    tolerance = get_global_settings().agreement_tolerance
    if abs(entropy_form - divergence_form) >= tolerance:
        raise InvariantViolation(
            f"Multi-information forms disagree: {entropy_form!r} vs {divergence_form!r}"
        )
    return max(entropy_form, 0.0)


@operation("block_mutual_information", _MODULE)
def block_mutual_information(p: Distribution, split: BlockSplit) -> float:
    """Mutual information between the X block and the Y block as composite variables"""
    split.check(p.space)
    return multi_information(group_variables(p, [split.x_block, split.y_block]))


@operation("conditional_entropy", _MODULE)
def conditional_entropy(p: Distribution, target: Iterable[int], given: Iterable[int]) -> float:
    """H(target | given) = H(target, given) - H(given); an empty ``given`` yields H(target)"""
    target_set = p.space.check_subset(target, "target")
    given_set = tuple(sorted(set(given)))
    if set(target_set) & set(given_set):
        raise ValueError(f"target {target_set} and given {given_set} overlap")
    joint = entropy(marginal(p, target_set + given_set))
    if not given_set:
        return joint
    return max(joint - entropy(marginal(p, given_set)), 0.0)


def chain_rule_terms(p: Distribution) -> List[float]:
    """H(X_i | X_1, ..., X_{i-1}) for i = 1..n; their sum is H(X_1, ..., X_n)"""
    return [conditional_entropy(p, [i], range(i)) for i in range(p.space.n)]


def total_variation(p: Distribution, q: Distribution) -> float:
    """Half the L1 distance between p and q"""
    if p.space != q.space:
        raise ValueError(
            f"State spaces differ: {p.space.cardinalities} vs {q.space.cardinalities}"
        )
    if p.exact and q.exact:
        return float(sum(abs(a - b) for a, b in zip(p.weights, q.weights)) / 2)
    return 0.5 * math.fsum(abs(float(a) - float(b)) for a, b in zip(p.weights, q.weights))

