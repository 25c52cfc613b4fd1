"""Joint state spaces of finitely many discrete variables.

States are tuples ``(x_1, ..., x_n)`` with ``0 <= x_i < cardinalities[i]``.
Indices follow a row-major mixed-radix scheme: the first variable is the
most significant digit, so for binary variables the state ``(0, 1, 0, 1)``
has index ``0b0101 = 5`` and string form ``"0101"``.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple

State = Tuple[int, ...]


@dataclass(frozen=True)
class StateSpace:
    """Mixed-radix index scheme for joint states of n variables"""
    cardinalities: Tuple[int, ...]

    def __post_init__(self):
        cards = tuple(int(c) for c in self.cardinalities)
        if not cards:
            raise ValueError("StateSpace needs at least one variable")
        if any(c < 1 for c in cards):
            raise ValueError(f"Every cardinality must be >= 1, got {cards}")
        object.__setattr__(self, "cardinalities", cards)

    @classmethod
    def homogeneous(cls, n: int, N: int) -> "StateSpace":
        """Space of n variables with N states each"""
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        return cls((N,) * n)

    @property
    def n(self) -> int:
        return len(self.cardinalities)

    @property
    def total(self) -> int:
        return math.prod(self.cardinalities)

    @property
    def is_homogeneous(self) -> bool:
        return len(set(self.cardinalities)) == 1

    @property
    def N(self) -> int:
        """Common cardinality of a homogeneous space"""
        if not self.is_homogeneous:
            raise ValueError(f"State space {self.cardinalities} is not homogeneous")
        return self.cardinalities[0]

    def encode(self, state: Sequence[int]) -> int:
        if len(state) != self.n:
            raise ValueError(f"State {tuple(state)} has length {len(state)}, expected {self.n}")
        index = 0
        for value, card in zip(state, self.cardinalities):
            if not 0 <= value < card:
                raise ValueError(f"State {tuple(state)} out of range for cardinalities {self.cardinalities}")
            index = index * card + value
        return index

    def decode(self, index: int) -> State:
        if not 0 <= index < self.total:
            raise ValueError(f"Index {index} out of range 0..{self.total - 1}")
        digits = []
        for card in reversed(self.cardinalities):
            index, digit = divmod(index, card)
            digits.append(digit)
        return tuple(reversed(digits))

    def states(self) -> Iterator[State]:
        """All states in index order"""
        return itertools.product(*(range(c) for c in self.cardinalities))

    def check_subset(self, subset: Iterable[int], name: str = "subset") -> Tuple[int, ...]:
        """Validate an index subset and return it sorted"""
        indices = tuple(sorted(set(subset)))
        if not indices:
            raise ValueError(f"{name} must be nonempty")
        for i in indices:
            if not 0 <= i < self.n:
                raise ValueError(f"{name} index {i} out of range 0..{self.n - 1}")
        return indices

    def sub_space(self, subset: Iterable[int]) -> "StateSpace":
        indices = self.check_subset(subset)
        return StateSpace(tuple(self.cardinalities[i] for i in indices))


@dataclass(frozen=True)
class BlockSplit:
    """Partition of the variables into an X block and a Y block"""
    x_block: Tuple[int, ...]
    y_block: Tuple[int, ...]

    def __post_init__(self):
        x = tuple(sorted(set(self.x_block)))
        y = tuple(sorted(set(self.y_block)))
        if not x or not y:
            raise ValueError("Both blocks of a split must be nonempty")
        if set(x) & set(y):
            raise ValueError(f"Blocks overlap: {x} and {y}")
        object.__setattr__(self, "x_block", x)
        object.__setattr__(self, "y_block", y)

    @classmethod
    def halves(cls, n_pairs: int) -> "BlockSplit":
        """X = first n_pairs variables, Y = the rest, for 2n-variable spaces"""
        return cls(tuple(range(n_pairs)), tuple(range(n_pairs, 2 * n_pairs)))

    def check(self, space: StateSpace) -> None:
        covered = set(self.x_block) | set(self.y_block)
        if covered != set(range(space.n)):
            raise ValueError(
                f"Split {self.x_block} | {self.y_block} does not partition the {space.n} variables"
            )


def parse_state(text: str) -> State:
    """Parse a digit string such as "0101" into a state tuple"""
    if not text or not text.isdigit():
        raise ValueError(f"Invalid state string: {text!r}")
    return tuple(int(c) for c in text)


def format_state(state: Sequence[int]) -> str:
    if any(v > 9 for v in state):
        return ",".join(str(v) for v in state)
    return "".join(str(v) for v in state)


def all_strings(N: int, length: int) -> List[State]:
    return list(itertools.product(range(N), repeat=length))
