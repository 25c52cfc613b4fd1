"""Tests for entropies, divergences, marginals and the base measures

Usage:
    # Method 1: Run directly (from project root)
    python tests/core/test_measures.py

    # Method 2: Run with pytest
    pytest tests/core/test_measures.py

    # Method 3: Run a specific test with pytest
    pytest tests/core/test_measures.py::test_multi_information_forms_agree -v
"""

import itertools
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add project root to Python path for imports
project_root = Path(__file__).parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from factored_info.core import (
    BlockSplit,
    Distribution,
    StateSpace,
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


# Test configuration
LOG2 = math.log(2)
TOLERANCE = 1e-10
RANDOM_SAMPLES = 1000
SEED = 20240611


def _random_distribution(rng: np.random.Generator, space: StateSpace) -> Distribution:
    return Distribution.from_array(space, rng.dirichlet(np.ones(space.total)))


def _exact_distributions(space: StateSpace):
    """Hypothesis strategy for exact distributions from integer counts"""
    counts = st.lists(st.integers(min_value=0, max_value=12), min_size=space.total,
                      max_size=space.total).filter(any)
    return counts.map(
        lambda c: Distribution(space, tuple(Fraction(v, sum(c)) for v in c))
    )


def test_entropy_of_uniform():
    space = StateSpace((2, 3, 4))
    assert math.isclose(entropy(Distribution.uniform(space)), math.log(24))
    assert entropy(Distribution.point_mass(space, (1, 2, 3))) == 0.0


def test_kl_divergence():
    space = StateSpace.homogeneous(1, 2)
    p = Distribution(space, (Fraction(1, 2), Fraction(1, 2)))
    q = Distribution(space, (Fraction(1, 4), Fraction(3, 4)))
    expected = 0.5 * math.log(2) + 0.5 * math.log(2 / 3)
    assert math.isclose(kl_divergence(p, q), expected)
    assert kl_divergence(p, p) == 0.0
    assert kl_divergence(p, Distribution.point_mass(space, (0,))) == math.inf
    with pytest.raises(ValueError):
        kl_divergence(p, Distribution.uniform(StateSpace.homogeneous(1, 3)))


def test_marginals_of_copies():
    p = Distribution.uniform_on_strings(["0000", "1111"], 2)
    m = marginal(p, [2, 0])
    assert m.space.cardinalities == (2, 2)
    assert m.to_dict() == {"00": Fraction(1, 2), "11": Fraction(1, 2)}
    with pytest.raises(ValueError):
        marginal(p, [])
    with pytest.raises(ValueError):
        marginal(p, [4])


def test_multi_information_of_copies():
    """I of n perfect copies of a uniform variable is (n - 1) log N"""
    for n in (2, 3, 4):
        p = Distribution.uniform_on_strings(["0" * n, "1" * n], 2)
        assert math.isclose(multi_information(p), (n - 1) * LOG2)
    ternary = Distribution.uniform_on_strings(["000", "111", "222"], 3)
    assert math.isclose(multi_information(ternary), 2 * math.log(3))


def test_product_distributions_are_independent():
    coin = Distribution(StateSpace.homogeneous(1, 2), (Fraction(1, 3), Fraction(2, 3)))
    die = Distribution.uniform(StateSpace.homogeneous(1, 3))
    p = Distribution.product([coin, die, coin])
    assert is_independent(p)
    assert multi_information(p) == 0.0
    assert product_of_marginals(p) == p
    assert not is_independent(Distribution.uniform_on_strings(["00", "11"], 2))


def test_block_mutual_information():
    p = Distribution.uniform_on_strings(["0000", "0101", "1010", "1111"], 2)
    assert math.isclose(block_mutual_information(p, BlockSplit.halves(2)), 2 * LOG2)
    assert math.isclose(block_mutual_information(p, BlockSplit((0, 2), (1, 3))), 0.0, abs_tol=1e-12)
    with pytest.raises(ValueError):
        block_mutual_information(p, BlockSplit((0,), (1,)))


def test_conditional_entropy():
    p = Distribution.uniform_on_strings(["000", "011", "101", "110"], 2)
    assert math.isclose(conditional_entropy(p, [2], [0, 1]), 0.0, abs_tol=1e-12)
    assert math.isclose(conditional_entropy(p, [2], [0]), LOG2)
    assert math.isclose(conditional_entropy(p, [0, 1], []), 2 * LOG2)
    with pytest.raises(ValueError):
        conditional_entropy(p, [0], [0])


def test_total_variation():
    p = Distribution.uniform_on_strings(["00", "11"], 2)
    q = Distribution.uniform_on_strings(["00", "01"], 2)
    assert total_variation(p, q) == 0.5
    assert math.isclose(total_variation(p.to_float(), q), 0.5)


def test_multi_information_forms_agree():
    """Entropy and divergence forms agree on random float distributions"""
    rng = np.random.default_rng(SEED)
    spaces = [StateSpace((2, 2, 2)), StateSpace((3, 2)), StateSpace((2, 3, 2, 2))]
    print("\n" + "=" * 70)
    print(f"Checking {RANDOM_SAMPLES} random distributions")
    print("=" * 70)
    for k in range(RANDOM_SAMPLES):
        space = spaces[k % len(spaces)]
        p = _random_distribution(rng, space)
        value = multi_information(p)
        divergence = kl_divergence(p, product_of_marginals(p))
        assert value >= 0.0
        assert abs(value - divergence) < TOLERANCE


def test_chain_rule_on_random_distributions():
    rng = np.random.default_rng(SEED + 1)
    space = StateSpace((2, 3, 2))
    for _ in range(100):
        p = _random_distribution(rng, space)
        assert math.isclose(math.fsum(chain_rule_terms(p)), entropy(p), abs_tol=TOLERANCE)


@settings(max_examples=60, deadline=None)
@given(_exact_distributions(StateSpace((2, 2, 3))))
def test_exact_multi_information_bounds(p):
    """0 <= I <= sum of marginal entropies minus the largest one"""
    value = multi_information(p)
    marginal_entropies = [entropy(marginal(p, [i])) for i in range(3)]
    assert value >= 0.0
    assert value <= math.fsum(marginal_entropies) - max(marginal_entropies) + TOLERANCE


@settings(max_examples=60, deadline=None)
@given(_exact_distributions(StateSpace((2, 2, 2, 2))))
def test_block_mutual_information_bounds(p):
    """MI between the halves never exceeds I of all four variables"""
    assert block_mutual_information(p, BlockSplit.halves(2)) <= multi_information(p) + TOLERANCE


TINY = Fraction(1, 10**400)


def test_weights_below_float_range():
    """Exact weights too small for a float keep every measure finite"""
    space = StateSpace.homogeneous(2, 2)
    p = Distribution.from_mapping(space, {(0, 0): 1 - TINY, (1, 1): TINY})
    assert math.isfinite(entropy(p)) and entropy(p) >= 0.0
    assert math.isfinite(multi_information(p))
    assert abs(multi_information(p)) < TOLERANCE
    assert math.isclose(kl_divergence(p, Distribution.uniform(space)), math.log(4))
    q = Distribution.uniform_on_strings(["00", "11"], 2)
    assert math.isclose(kl_divergence(q, p), 200 * math.log(10) - LOG2)


def test_float_product_underflow():
    """A product of marginals below the float range does not break the divergence form"""
    space = StateSpace.homogeneous(2, 2)
    p = Distribution(space, (1 - 1e-200, 0.0, 0.0, 1e-200), exact=False)
    value = multi_information(p)
    assert math.isfinite(value)
    assert 0.0 <= value < 1e-190


@settings(max_examples=40, deadline=None)
@given(_exact_distributions(StateSpace((2, 3, 2))))
def test_marginal_of_marginal(p):
    """Marginalizing in two steps gives the direct marginal"""
    for size in (1, 2, 3):
        for outer in itertools.combinations(range(3), size):
            outer_marginal = marginal(p, outer)
            for k in range(1, size + 1):
                for inner in itertools.combinations(range(size), k):
                    direct = marginal(p, [outer[j] for j in inner])
                    assert marginal(outer_marginal, inner) == direct


@settings(max_examples=60, deadline=None)
@given(st.one_of(_exact_distributions(StateSpace((2, 2, 2))), _exact_distributions(StateSpace((3, 3)))))
def test_multi_information_upper_bound(p):
    """I(p) <= (n - 1) log N"""
    n, N = p.space.n, p.space.N
    assert multi_information(p) <= (n - 1) * math.log(N) + TOLERANCE


def test_multi_information_upper_bound_on_samples():
    rng = np.random.default_rng(SEED + 2)
    for space in (StateSpace.homogeneous(3, 2), StateSpace.homogeneous(2, 3), StateSpace.homogeneous(4, 2)):
        bound = (space.n - 1) * math.log(space.N)
        for _ in range(200):
            assert multi_information(_random_distribution(rng, space)) <= bound + TOLERANCE


@settings(max_examples=60, deadline=None)
@given(_exact_distributions(StateSpace((2, 2, 3))))
def test_block_mutual_information_below_smaller_block(p):
    """MI between blocks never exceeds the log of the smaller block alphabet"""
    assert block_mutual_information(p, BlockSplit((0,), (1, 2))) <= math.log(2) + TOLERANCE
    assert block_mutual_information(p, BlockSplit((2,), (0, 1))) <= math.log(3) + TOLERANCE
    assert block_mutual_information(p, BlockSplit((0, 1), (2,))) <= math.log(3) + TOLERANCE


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
