"""Array kernels for the information measures and their gradients.

A measure is a weighted sum of terms. Each term is the multi-information
among composite variables, the groups, marginalized from a joint array of
shape ``space.cardinalities``:

    T(p) = sum_g H(M_g) - H(M)

where M is the marginal on the union of the groups and M_g the marginal on
group g. With H(m) = -sum m log m the kernels are valid for unnormalized
arrays too, which lets finite differences move one entry at a time.

    dT/dp(x) = log M(x_U) - sum_g log M_g(x_g) - (G - 1)
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from ..core.distribution import Distribution
from ..core.measures import block_mutual_information, multi_information
from ..core.state_space import BlockSplit, StateSpace
from ..family.family import MarginFamily, Pairing
from ..family.measures import fmi, i_lambda, maximum_i_lambda, sfmi
from ..registry import OperationModule, operation

logger = logging.getLogger(__name__)


def _entropy(m: np.ndarray) -> float:
    positive = m[m > 0]
    return float(-np.sum(positive * np.log(positive)))


def _sum_except(p: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    axes = tuple(a for a in range(p.ndim) if a not in keep)
    return p.sum(axis=axes, keepdims=True)


@dataclass(frozen=True)
class ObjectiveTerm:
    """weight * (multi-information among the composite variables ``groups``)"""
    groups: Tuple[Tuple[int, ...], ...]
    weight: float = 1.0

    @property
    def axes(self) -> Tuple[int, ...]:
        return tuple(sorted(i for g in self.groups for i in g))

    def value(self, p: np.ndarray) -> float:
        joint = _sum_except(p, self.axes)
        return self.weight * (sum(_entropy(_sum_except(p, g)) for g in self.groups) - _entropy(joint))

    def gradient(self, p: np.ndarray) -> np.ndarray:
        log_ratio = np.log(_sum_except(p, self.axes))
        for g in self.groups:
            log_ratio = log_ratio - np.log(_sum_except(p, g))
        grad = np.broadcast_to(log_ratio - (len(self.groups) - 1), p.shape)
        return self.weight * grad


@dataclass(frozen=True)
class Objective:
    """Weighted sum of terms over one state space"""
    space: StateSpace
    terms: Tuple[ObjectiveTerm, ...]

    def value(self, p: np.ndarray) -> float:
        p = p.reshape(self.space.cardinalities)
        return math.fsum(term.value(p) for term in self.terms)

    def gradient(self, p: np.ndarray) -> np.ndarray:
        p = p.reshape(self.space.cardinalities)
        grad = np.zeros(p.shape)
        for term in self.terms:
            grad = grad + term.gradient(p)
        return grad.reshape(-1)


class MeasureKind(Enum):
    I = "I"
    I_LAMBDA = "I_lambda"
    FMI = "FMI"
    SFMI = "SFMI"
    MI = "MI"


@dataclass(frozen=True)
class Measure:
    """A measure to maximize, with the family, pairing or split it needs"""
    kind: MeasureKind
    family: Optional[MarginFamily] = None
    pairing: Optional[Pairing] = None
    split: Optional[BlockSplit] = None

    def margin_family(self, space: StateSpace) -> Optional[MarginFamily]:
        if self.kind is MeasureKind.I_LAMBDA:
            if self.family is None:
                raise ValueError("I_lambda needs a margin family")
            return self.family
        if self.kind is MeasureKind.FMI:
            return MarginFamily.all_pairs(space.n)
        if self.kind is MeasureKind.SFMI:
            if space.n % 2:
                raise ValueError(f"SFMI needs an even number of variables, got {space.n}")
            return MarginFamily.sfmi(self.pairing or Pairing.identity(space.n // 2))
        return None

    def block_split(self, space: StateSpace) -> BlockSplit:
        if self.split is not None:
            return self.split
        if space.n % 2:
            raise ValueError(f"MI without an explicit split needs an even number of variables, got {space.n}")
        return BlockSplit.halves(space.n // 2)

    def objective(self, space: StateSpace) -> Objective:
        if self.kind is MeasureKind.I:
            return Objective(space, (ObjectiveTerm(tuple((i,) for i in range(space.n))),))
        if self.kind is MeasureKind.MI:
            split = self.block_split(space)
            split.check(space)
            return Objective(space, (ObjectiveTerm((split.x_block, split.y_block)),))
        fam = self.margin_family(space)
        if fam.n != space.n:
            raise ValueError(f"Family is over {fam.n} variables but the space has {space.n}")
        weight = 1.0 / len(fam)
        terms = tuple(
            ObjectiveTerm(tuple((i,) for i in members), weight) for members in fam.sets if len(members) > 1
        )
        return Objective(space, terms)

    def evaluate(self, p: Distribution) -> float:
        """The measure through the library functions on distributions"""
        if self.kind is MeasureKind.I:
            return multi_information(p)
        if self.kind is MeasureKind.MI:
            return block_mutual_information(p, self.block_split(p.space))
        if self.kind is MeasureKind.FMI:
            return fmi(p)
        if self.kind is MeasureKind.SFMI:
            return sfmi(p, self.pairing or Pairing.identity(p.space.n // 2))
        return i_lambda(p, self.margin_family(p.space))

    def known_maximum(self, space: StateSpace) -> float:
        """Largest value of the measure on homogeneous N-ary variables"""
        N = space.N
        if self.kind is MeasureKind.I:
            return (space.n - 1) * math.log(N)
        if self.kind is MeasureKind.MI:
            split = self.block_split(space)
            return min(len(split.x_block), len(split.y_block)) * math.log(N)
        return maximum_i_lambda(self.margin_family(space), N)

    def label(self) -> str:
        if self.kind is MeasureKind.I_LAMBDA and self.family is not None:
            return f"I_lambda{self.family.one_based()}"
        if self.kind is MeasureKind.SFMI and self.pairing is not None:
            return f"SFMI{self.pairing.one_based()}"
        return self.kind.value


@operation("multi_information_gradient", OperationModule.NUMERIC_SEARCH)
def multi_information_gradient(p: Distribution) -> np.ndarray:
    """Gradient log(p(x) / prod_i p_i(x_i)) - (n - 1) at an interior point, in index order"""
    arr = p.as_array()
    if np.any(arr <= 0):
        raise ValueError("Gradient is only defined at strictly positive distributions")
    return Measure(MeasureKind.I).objective(p.space).gradient(arr.reshape(-1))

