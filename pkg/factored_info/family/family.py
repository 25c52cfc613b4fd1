"""Margin families, pairings and the connected-covering test.

Sets are stored canonically: each set sorted, and the sets sorted
lexicographically. Indices are 0-based here; JSON documents and reports
use 1-based indices.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..registry import OperationModule, operation

logger = logging.getLogger(__name__)

IndexSet = Tuple[int, ...]


@dataclass(frozen=True)
class MarginFamily:
    """A family Lambda of nonempty subsets of {0, ..., n-1}"""
    n: int
    sets: Tuple[IndexSet, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        canonical = []
        for raw in self.sets:
            raw = tuple(raw)
            members = tuple(sorted(set(raw)))
            if not members:
                raise ValueError("Margin sets must be nonempty")
            if len(members) != len(raw):
                raise ValueError(f"Margin set {raw} repeats an index")
            for i in members:
                if not 0 <= i < self.n:
                    raise ValueError(f"Margin set {raw} has index {i} outside 0..{self.n - 1}")
            canonical.append(members)
        if len(set(canonical)) != len(canonical):
            raise ValueError(f"Duplicate margin sets in {[list(s) for s in self.sets]}")
        object.__setattr__(self, "sets", tuple(sorted(canonical)))

    @classmethod
    def of(cls, n: int, sets: Iterable[Iterable[int]]) -> "MarginFamily":
        return cls(n, tuple(tuple(s) for s in sets))

    @classmethod
    def from_one_based(cls, n: int, sets: Iterable[Iterable[int]]) -> "MarginFamily":
        """Family from 1-based index sets, as written in documents"""
        return cls(n, tuple(tuple(i - 1 for i in s) for s in sets))

    @classmethod
    def all_pairs(cls, n: int) -> "MarginFamily":
        return cls(n, tuple(itertools.combinations(range(n), 2)))

    @classmethod
    def full(cls, n: int) -> "MarginFamily":
        return cls(n, (tuple(range(n)),))

    @classmethod
    def sfmi(cls, pairing: "Pairing") -> "MarginFamily":
        """Pair margins {X_i, Y_pi(i)} on the 2n variables (X_1..X_n, Y_1..Y_n)"""
        return cls(2 * pairing.n, tuple((i, pairing.n + j) for i, j in enumerate(pairing.match)))

    def __len__(self) -> int:
        return len(self.sets)

    def one_based(self) -> List[List[int]]:
        return [[i + 1 for i in s] for s in self.sets]


@dataclass(frozen=True)
class Pairing:
    """Perfect matching pairing X_i with Y_match[i]"""
    n: int
    match: Tuple[int, ...]

    def __post_init__(self):
        match = tuple(int(j) for j in self.match)
        if len(match) != self.n or sorted(match) != list(range(self.n)):
            raise ValueError(f"Pairing {match} is not a permutation of 0..{self.n - 1}")
        object.__setattr__(self, "match", match)

    @classmethod
    def identity(cls, n: int) -> "Pairing":
        return cls(n, tuple(range(n)))

    @classmethod
    def from_one_based(cls, match: Sequence[int]) -> "Pairing":
        return cls(len(match), tuple(j - 1 for j in match))

    @classmethod
    def all_pairings(cls, n: int) -> List["Pairing"]:
        return [cls(n, perm) for perm in itertools.permutations(range(n))]

    def one_based(self) -> List[int]:
        return [j + 1 for j in self.match]


@dataclass(frozen=True)
class CoveringCertificate:
    """Outcome of the connected-covering test.

    On success ``ordering`` lists the sets so that each one meets the union
    of its predecessors. On failure ``uncovered`` holds the indices missed by
    every set and ``components`` the groups of sets that never intersect
    across groups.
    """
    is_connected_covering: bool
    ordering: Tuple[IndexSet, ...] = ()
    uncovered: Tuple[int, ...] = ()
    components: Tuple[Tuple[IndexSet, ...], ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.is_connected_covering


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@operation("is_connected_covering", OperationModule.FAMILY_MEASURES)
def is_connected_covering(fam: MarginFamily) -> CoveringCertificate:
    """Whether the sets cover {0..n-1} and their intersection graph is connected"""
    sets = fam.sets
    covered = set(itertools.chain.from_iterable(sets))
    uncovered = tuple(i for i in range(fam.n) if i not in covered)

    uf = UnionFind(len(sets))
    owner: Dict[int, int] = {}
    for k, members in enumerate(sets):
        for i in members:
            if i in owner:
                uf.union(owner[i], k)
            else:
                owner[i] = k
    groups: Dict[int, List[IndexSet]] = {}
    for k, members in enumerate(sets):
        groups.setdefault(uf.find(k), []).append(members)
    components = tuple(tuple(g) for _, g in sorted(groups.items()))

    if uncovered or len(components) != 1:
        logger.debug(f"Family {fam.one_based()} is not a connected covering: "
                     f"uncovered={uncovered}, components={len(components)}")
        return CoveringCertificate(False, uncovered=uncovered, components=components)

    return CoveringCertificate(True, ordering=_greedy_ordering(sets))


def _greedy_ordering(sets: Sequence[IndexSet]) -> Tuple[IndexSet, ...]:
    ordering = [sets[0]]
    union = set(sets[0])
    remaining = list(sets[1:])
    while remaining:
        nxt: Optional[int] = next((k for k, s in enumerate(remaining) if union & set(s)), None)
        if nxt is None:
            raise AssertionError("Connected family produced no accretion step")
        chosen = remaining.pop(nxt)
        ordering.append(chosen)
        union.update(chosen)
    return tuple(ordering)


def ordering_satisfies_definition(ordering: Sequence[IndexSet], n: int) -> bool:
    """Replay an ordering against the connected-covering definition"""
    union: set = set()
    for t, members in enumerate(ordering):
        if t > 0 and not union & set(members):
            return False
        union.update(members)
    return union == set(range(n))
