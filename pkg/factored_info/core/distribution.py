"""Probability distributions over a StateSpace.

A Distribution is backed either by exact rationals (``fractions.Fraction``)
or by floats. The mode is fixed at construction and conversions are explicit
(``to_float`` / ``to_exact``); arithmetic never mixes the two.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..settings import get_global_settings
from .state_space import State, StateSpace, format_state, parse_state

logger = logging.getLogger(__name__)

Weight = Union[Fraction, float]


@dataclass(frozen=True)
class Distribution:
    """Probability vector over the states of a StateSpace, in index order"""
    space: StateSpace
    weights: Tuple[Weight, ...]
    exact: bool = True

    def __post_init__(self):
        if len(self.weights) != self.space.total:
            raise ValueError(
                f"Expected {self.space.total} weights for cardinalities {self.space.cardinalities}, "
                f"got {len(self.weights)}"
            )
        if self.exact:
            weights = []
            for w in self.weights:
                if isinstance(w, float) or not isinstance(w, Rational):
                    raise ValueError(f"Exact distributions need rational weights, got {w!r}")
                weights.append(Fraction(w))
            if any(w < 0 for w in weights):
                raise ValueError("Probabilities must be nonnegative")
            if sum(weights) != 1:
                raise ValueError(f"Probabilities must sum to exactly 1, got {sum(weights)}")
        else:
            weights = [float(w) for w in self.weights]
            if any(math.isnan(w) for w in weights):
                raise ValueError("Probabilities must not be NaN")
            if any(w < 0 for w in weights):
                raise ValueError("Probabilities must be nonnegative")
            tolerance = get_global_settings().float_tolerance
            total = math.fsum(weights)
            if abs(total - 1.0) > tolerance:
                raise ValueError(f"Probabilities must sum to 1 within {tolerance}, got {total!r}")
        object.__setattr__(self, "weights", tuple(weights))

    # ----------------- Constructors -----------------

    @classmethod
    def from_mapping(cls, space: StateSpace, mapping: Mapping[State, Weight],
                     exact: Optional[bool] = None) -> "Distribution":
        """Distribution from a state -> probability mapping; omitted states get 0.

        The mode is inferred from the values unless given.
        """
        if exact is None:
            exact = all(isinstance(v, Rational) for v in mapping.values())
        zero: Weight = Fraction(0) if exact else 0.0
        weights: List[Weight] = [zero] * space.total
        for state, value in mapping.items():
            weights[space.encode(state)] = value
        return cls(space, tuple(weights), exact)

    @classmethod
    def uniform(cls, space: StateSpace, states: Optional[Iterable[State]] = None,
                exact: bool = True) -> "Distribution":
        """Uniform distribution on the given states (all states by default)"""
        chosen = list(space.states()) if states is None else list(dict.fromkeys(tuple(s) for s in states))
        if not chosen:
            raise ValueError("Uniform distribution needs at least one state")
        mass: Weight = Fraction(1, len(chosen)) if exact else 1.0 / len(chosen)
        return cls.from_mapping(space, {s: mass for s in chosen}, exact)

    @classmethod
    def point_mass(cls, space: StateSpace, state: State, exact: bool = True) -> "Distribution":
        return cls.uniform(space, [state], exact)

    @classmethod
    def uniform_on_strings(cls, strings: Sequence[str], N: int) -> "Distribution":
        """Exact uniform distribution on digit strings, e.g. (["0000", "1111"], 2)"""
        states = [parse_state(s) for s in strings]
        lengths = {len(s) for s in states}
        if len(lengths) != 1:
            raise ValueError(f"Strings have different lengths: {list(strings)}")
        return cls.uniform(StateSpace.homogeneous(lengths.pop(), N), states)

    @classmethod
    def product(cls, factors: Sequence["Distribution"]) -> "Distribution":
        """Product distribution of independent factors, in the given order"""
        if not factors:
            raise ValueError("Product needs at least one factor")
        exact = all(f.exact for f in factors)
        if not exact and any(f.exact for f in factors):
            raise ValueError("Cannot mix exact and float factors; convert explicitly first")
        cards = sum((f.space.cardinalities for f in factors), ())
        space = StateSpace(cards)
        weights = []
        for state in space.states():
            w: Weight = Fraction(1) if exact else 1.0
            offset = 0
            for f in factors:
                width = f.space.n
                w *= f.weights[f.space.encode(state[offset:offset + width])]
                offset += width
            weights.append(w)
        return cls(space, tuple(weights), exact)

    @classmethod
    def from_array(cls, space: StateSpace, values: np.ndarray) -> "Distribution":
        """Float distribution from an array holding the weights in index order"""
        flat = np.asarray(values, dtype=float).reshape(-1)
        return cls(space, tuple(float(v) for v in flat), exact=False)

    # ----------------- Accessors -----------------

    def prob(self, state: State) -> Weight:
        return self.weights[self.space.encode(state)]

    def support(self) -> List[State]:
        """States with positive probability, in index order"""
        return [s for s, w in zip(self.space.states(), self.weights) if w > 0]

    def items(self) -> Iterable[Tuple[State, Weight]]:
        return zip(self.space.states(), self.weights)

    def as_array(self) -> np.ndarray:
        """Float weights as an array of shape ``space.cardinalities``"""
        return np.array([float(w) for w in self.weights], dtype=float).reshape(self.space.cardinalities)

    def to_float(self) -> "Distribution":
        if not self.exact:
            return self
        return Distribution(self.space, tuple(float(w) for w in self.weights), exact=False)

    def to_exact(self, max_denominator: int = 10**6) -> "Distribution":
        """Round each weight to the nearest fraction with bounded denominator.

        Raises ValueError when the rounded weights do not sum to exactly 1.
        """
        if self.exact:
            return self
        weights = tuple(Fraction(w).limit_denominator(max_denominator) for w in self.weights)
        if sum(weights) != 1:
            raise ValueError(
                f"Rounded weights sum to {sum(weights)}, not 1; "
                f"try a different max_denominator than {max_denominator}"
            )
        return Distribution(self.space, weights, exact=True)

    def to_dict(self) -> Dict[str, Weight]:
        """Support as {"state string": probability}"""
        return {format_state(s): w for s, w in self.items() if w > 0}

    def __str__(self) -> str:
        terms = [f"{w}*d_{format_state(s)}" for s, w in self.items() if w > 0]
        return " + ".join(terms)


def group_variables(p: Distribution, groups: Sequence[Sequence[int]]) -> Distribution:
    """Marginal of p onto the union of groups, each group merged into one composite variable.

    A composite variable's states follow the mixed-radix order of its members.
    """
    if not groups:
        raise ValueError("At least one group is required")
    members = [p.space.check_subset(g, "group") for g in groups]
    flat = [i for g in members for i in g]
    if len(flat) != len(set(flat)):
        raise ValueError(f"Groups overlap: {[list(g) for g in members]}")
    sub_spaces = [p.space.sub_space(g) for g in members]
    space = StateSpace(tuple(s.total for s in sub_spaces))
    zero: Weight = Fraction(0) if p.exact else 0.0
    weights: List[Weight] = [zero] * space.total
    for state, w in p.items():
        if w == 0:
            continue
        composite = tuple(
            sub.encode(tuple(state[i] for i in g)) for g, sub in zip(members, sub_spaces)
        )
        weights[space.encode(composite)] += w
    return Distribution(space, tuple(weights), p.exact)
