"""N-ary codes of maximal minimum distance and partitions of the string set into them.

A code of length n over {0..N-1} with N words and minimum Hamming distance n
has words that differ in every coordinate, so each coordinate of the code is
a permutation of the alphabet. Codes are stored with their words sorted,
which for these codes means sorted by first coordinate.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple, Union

from ..core.distribution import Distribution
from ..core.state_space import State, StateSpace, all_strings, format_state, parse_state
from ..errors import check_cap
from ..registry import OperationModule, operation
from ..settings import get_global_settings

logger = logging.getLogger(__name__)

_MODULE = OperationModule.CODES

Word = Union[str, Sequence[int]]
Edge = Tuple[int, int]


def _as_state(word: Word) -> State:
    return parse_state(word) if isinstance(word, str) else tuple(int(v) for v in word)


@operation("hamming_distance", _MODULE)
def hamming_distance(a: Word, b: Word) -> int:
    """Number of coordinates where a and b differ"""
    a, b = _as_state(a), _as_state(b)
    if len(a) != len(b):
        raise ValueError(f"Words have different lengths: {format_state(a)} and {format_state(b)}")
    return sum(1 for x, y in zip(a, b) if x != y)


@dataclass(frozen=True)
class Code:
    """A set of distinct words of one length over the alphabet {0..N-1}"""
    N: int
    length: int
    words: Tuple[State, ...]

    def __post_init__(self):
        if self.N < 1 or self.length < 1:
            raise ValueError(f"Code needs N >= 1 and length >= 1, got N={self.N}, length={self.length}")
        words = tuple(sorted(_as_state(w) for w in self.words))
        if not words:
            raise ValueError("Code needs at least one word")
        if len(set(words)) != len(words):
            raise ValueError(f"Code words must be distinct: {[format_state(w) for w in words]}")
        for w in words:
            if len(w) != self.length or any(not 0 <= v < self.N for v in w):
                raise ValueError(f"Word {format_state(w)} is not a length-{self.length} string over {self.N} symbols")
        object.__setattr__(self, "words", words)

    @classmethod
    def from_strings(cls, strings: Sequence[str], N: int) -> "Code":
        states = [parse_state(s) for s in strings]
        return cls(N, len(states[0]) if states else 0, tuple(states))

    @property
    def minimum_distance(self) -> int:
        """Smallest pairwise Hamming distance; the length for single-word codes"""
        if len(self.words) < 2:
            return self.length
        return min(hamming_distance(a, b) for a, b in itertools.combinations(self.words, 2))

    @property
    def is_max_distance(self) -> bool:
        """N words at pairwise distance equal to the length"""
        return len(self.words) == self.N and self.minimum_distance == self.length

    def coordinate_permutation(self, i: int) -> Tuple[int, ...]:
        """For a max-distance code, the map first coordinate -> coordinate i"""
        if not self.is_max_distance:
            raise ValueError(f"Code {self.to_strings()} does not have maximal minimum distance")
        return tuple(w[i] for w in self.words)

    def to_strings(self) -> List[str]:
        return [format_state(w) for w in self.words]

    def to_distribution(self) -> Distribution:
        """Exact uniform distribution on the words"""
        return Distribution.uniform(StateSpace.homogeneous(self.length, self.N), self.words)

    def __contains__(self, word: Word) -> bool:
        return _as_state(word) in self.words


@dataclass(frozen=True)
class CodePartition:
    """Partition of all N^length strings into max-distance codes"""
    parts: Tuple[Code, ...]

    def __post_init__(self):
        parts = tuple(sorted(self.parts, key=lambda c: c.words[0]))
        if not parts:
            raise ValueError("Partition needs at least one part")
        N, length = parts[0].N, parts[0].length
        seen: Set[State] = set()
        for part in parts:
            if (part.N, part.length) != (N, length):
                raise ValueError("Partition parts must share alphabet and length")
            if not part.is_max_distance:
                raise ValueError(f"Part {part.to_strings()} does not have maximal minimum distance")
            overlap = seen.intersection(part.words)
            if overlap:
                raise ValueError(f"Parts overlap in {sorted(format_state(w) for w in overlap)}")
            seen.update(part.words)
        if len(seen) != N ** length:
            raise ValueError(f"Parts cover {len(seen)} of {N ** length} strings")
        object.__setattr__(self, "parts", parts)

    @property
    def N(self) -> int:
        return self.parts[0].N

    @property
    def length(self) -> int:
        return self.parts[0].length

    def to_strings(self) -> List[List[str]]:
        return [part.to_strings() for part in self.parts]


def _check_alphabet(N: int, n: int) -> None:
    if N < 2:
        raise ValueError(f"Alphabet size N must be >= 2, got {N}")
    if n < 1:
        raise ValueError(f"Length n must be >= 1, got {n}")


def count_max_distance_codes(N: int, n: int) -> int:
    return math.factorial(N) ** (n - 1)


def count_partitions(N: int, n: int) -> int:
    return math.factorial(N - 1) ** (n - 1)


@operation("enumerate_max_distance_codes", _MODULE)
def enumerate_max_distance_codes(N: int, n: int, cap: Optional[int] = None) -> Iterator[Code]:
    """Every length-n code with N words and minimum distance n, each exactly once.

    Words are (k, pi_2(k), ..., pi_n(k)) with (pi_2, ..., pi_n) running over
    tuples of permutations in lexicographic order.
    """
    _check_alphabet(N, n)
    limit = get_global_settings().code_cap if cap is None else cap
    check_cap("code_cap", limit, count_max_distance_codes(N, n))
    return _generate_codes(N, n)


def _generate_codes(N: int, n: int) -> Iterator[Code]:
    perms = list(itertools.permutations(range(N)))
    for columns in itertools.product(perms, repeat=n - 1):
        words = tuple((k,) + tuple(col[k] for col in columns) for k in range(N))
        yield Code(N, n, words)


@operation("partition_into_codes", _MODULE)
def partition_into_codes(N: int, n: int) -> CodePartition:
    """Circular-shift partition: codes {(u, u+t_2, ..., u+t_n) mod N} for every shift vector t"""
    _check_alphabet(N, n)
    return _shift_partition(N, n, [tuple(range(N))] * (n - 1))


def _shift_partition(N: int, n: int, relabelings: Sequence[Sequence[int]]) -> CodePartition:
    parts = []
    for shifts in itertools.product(range(N), repeat=n - 1):
        words = tuple(
            (u,) + tuple(sigma[(u + t) % N] for sigma, t in zip(relabelings, shifts))
            for u in range(N)
        )
        parts.append(Code(N, n, words))
    return CodePartition(tuple(parts))


@operation("enumerate_all_partitions", _MODULE)
def enumerate_all_partitions(N: int, n: int, cap: Optional[int] = None) -> Iterator[CodePartition]:
    """All partitions obtained from cosets of the circular-shift group, one per coset.

    Coset representatives are the permutations fixing 0, one per coordinate
    2..n, so there are (N-1)!^(n-1) partitions.
    """
    _check_alphabet(N, n)
    limit = get_global_settings().partition_cap if cap is None else cap
    check_cap("partition_cap", limit, count_partitions(N, n))
    representatives = [p for p in itertools.permutations(range(N)) if p[0] == 0]
    return (
        _shift_partition(N, n, relabelings)
        for relabelings in itertools.product(representatives, repeat=n - 1)
    )


@operation("bipartite_matchings_partition", _MODULE)
def bipartite_matchings_partition(N: int) -> List[Tuple[Edge, ...]]:
    """Edges of K_{N,N} split into N perfect matchings {(u, u+t mod N)}, t = 1..N"""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return [tuple((u, (u + t) % N) for u in range(N)) for t in range(1, N + 1)]


def exhaustive_partitions(N: int, n: int, cap: Optional[int] = None) -> List[CodePartition]:
    """Every partition of the N^n strings into max-distance codes, by exact-cover search.

    Includes partitions outside the coset family; only meant for small (N, n).
    """
    codes = list(enumerate_max_distance_codes(N, n, cap))
    by_word: Dict[State, List[Code]] = {}
    for code in codes:
        for word in code.words:
            by_word.setdefault(word, []).append(code)
    strings = all_strings(N, n)
    found: List[CodePartition] = []

    def _search(covered: Set[State], chosen: List[Code]) -> None:
        first = next((s for s in strings if s not in covered), None)
        if first is None:
            found.append(CodePartition(tuple(chosen)))
            return
        for code in by_word[first]:
            if covered.isdisjoint(code.words):
                chosen.append(code)
                _search(covered | set(code.words), chosen)
                chosen.pop()

    _search(set(), [])
    logger.info(f"Exhaustive search found {len(found)} code partitions for N={N}, n={n}")
    return found
