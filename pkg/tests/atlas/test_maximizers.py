"""Test script for multi-information and block mutual information maximizers

Usage:
    # Method 1: Run directly (from project root)
    python tests/atlas/test_maximizers.py

    # Method 2: Run with pytest
    pytest tests/atlas/test_maximizers.py

    # Method 3: Run a specific test with pytest
    pytest tests/atlas/test_maximizers.py::test_example_four_maximizers -v
"""

import itertools
import math
import sys
from pathlib import Path

import pytest

# Add project root to Python path for imports
project_root = Path(__file__).parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from factored_info.atlas import (
    MaximizerKind,
    count_blockMI_maximizers,
    count_I_maximizers,
    enumerate_blockMI_maximizers,
    enumerate_I_maximizers,
    is_blockMI_maximizer,
    is_I_maximizer,
    matching_maximizer,
)
from factored_info.core import (
    BlockSplit,
    Distribution,
    StateSpace,
    block_mutual_information,
    marginal,
    multi_information,
    parse_state,
)
from factored_info.errors import CapExceededError, ExactnessRequiredError


# Test configuration
LOG2 = math.log(2)
TOLERANCE = 1e-10
EXAMPLE_FOUR_I = [
    ["0000", "1111"], ["0101", "1010"], ["0001", "1110"], ["0100", "1011"],
    ["0010", "1101"], ["0111", "1000"], ["0011", "1100"], ["0110", "1001"],
]
EXAMPLE_FOUR_BLOCK = [
    ["0010", "0100", "1001", "1111"], ["0000", "0110", "1001", "1111"],
    ["0001", "0100", "1010", "1111"], ["0010", "0100", "1011", "1101"],
    ["0001", "0110", "1000", "1111"], ["0011", "0101", "1010", "1100"],
    ["0000", "0101", "1011", "1110"], ["0001", "0111", "1000", "1110"],
    ["0000", "0111", "1001", "1110"], ["0000", "0101", "1010", "1111"],
    ["0011", "0110", "1000", "1101"], ["0010", "0111", "1000", "1101"],
    ["0000", "0110", "1011", "1101"], ["0011", "0110", "1001", "1100"],
    ["0000", "0111", "1010", "1101"], ["0001", "0100", "1011", "1110"],
    ["0011", "0101", "1000", "1110"], ["0010", "0101", "1000", "1111"],
    ["0001", "0110", "1011", "1100"], ["0010", "0101", "1011", "1100"],
    ["0001", "0111", "1010", "1100"], ["0011", "0100", "1010", "1101"],
    ["0010", "0111", "1001", "1100"], ["0011", "0100", "1001", "1110"],
]


def _supports(groups):
    return {frozenset(parse_state(s) for s in group) for group in groups}


def test_example_four_maximizers():
    print("\n" + "=" * 70)
    print("Maximizers for four binary variables")
    print("=" * 70)
    i_max = enumerate_I_maximizers(2, 4)
    assert i_max.kind is MaximizerKind.MULTI_INFORMATION
    assert i_max.supports() == _supports(EXAMPLE_FOUR_I)
    assert math.isclose(i_max.maximum_value, 3 * LOG2)

    block = enumerate_blockMI_maximizers(2, 2)
    assert block.kind is MaximizerKind.BLOCK_MI
    assert block.n == 4
    assert block.supports() == _supports(EXAMPLE_FOUR_BLOCK)
    assert math.isclose(block.maximum_value, 2 * LOG2)
    print(f"I maximizers: {len(i_max)}, block MI maximizers: {len(block)}")


def test_maximizers_attain_their_values():
    for N, n in [(2, 3), (3, 2), (3, 3)]:
        maximizers = enumerate_I_maximizers(N, n)
        assert len(maximizers) == count_I_maximizers(N, n)
        for p in maximizers:
            assert is_I_maximizer(p)
            assert abs(multi_information(p) - maximizers.maximum_value) < TOLERANCE

    block = enumerate_blockMI_maximizers(2, 2)
    assert len(block) == count_blockMI_maximizers(2, 2) == 24
    for p in block:
        assert is_blockMI_maximizer(p, 2)
        assert abs(block_mutual_information(p, BlockSplit.halves(2)) - block.maximum_value) < TOLERANCE


def test_membership():
    i_max = enumerate_I_maximizers(2, 4)
    copies = Distribution.uniform_on_strings(["0000", "1111"], 2)
    centroid = Distribution.uniform_on_strings(["0000", "0101", "1010", "1111"], 2)
    assert i_max.contains(copies)
    assert not i_max.contains(centroid)
    assert not is_I_maximizer(centroid)
    assert not is_I_maximizer(Distribution.uniform_on_strings(["0000", "1110"], 2))
    assert is_blockMI_maximizer(centroid, 2)
    assert not is_blockMI_maximizer(copies, 2)
    with pytest.raises(ExactnessRequiredError):
        is_I_maximizer(copies.to_float())
    with pytest.raises(ValueError):
        is_blockMI_maximizer(copies, 3)


def test_enumeration_limits():
    with pytest.raises(ValueError):
        enumerate_I_maximizers(2, 1)
    with pytest.raises(CapExceededError):
        enumerate_blockMI_maximizers(2, 3, cap=100)
    with pytest.raises(CapExceededError):
        enumerate_I_maximizers(3, 4, cap=100)


def test_matching_maximizer():
    i_max = enumerate_I_maximizers(2, 3)
    weights = [0.0] * 8
    weights[0], weights[7], weights[1] = 0.49, 0.49, 0.02
    near = Distribution.from_array(StateSpace.homogeneous(3, 2), weights)
    index, distance = matching_maximizer(near, i_max)
    assert i_max.distributions[index].support() == [(0, 0, 0), (1, 1, 1)]
    assert math.isclose(distance, 0.02)


@pytest.mark.parametrize("N,n", [(2, 3), (2, 4), (3, 2)])
def test_marginals_of_maximizers_are_maximizers(N, n):
    """Every marginal on two or more variables of an I maximizer maximizes I there"""
    maximizers = enumerate_I_maximizers(N, n)
    assert len(maximizers) == count_I_maximizers(N, n)
    for p in maximizers:
        for size in range(2, n + 1):
            for subset in itertools.combinations(range(n), size):
                m = marginal(p, subset)
                assert is_I_maximizer(m), (p, subset)
                assert math.isclose(multi_information(m), (size - 1) * math.log(N))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
