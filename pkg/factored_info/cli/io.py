"""JSON documents read by the command line: distributions, families, pairings,
splits, margin specifications and search configurations.

Indices in documents are 1-based; the library works with 0-based indices.
"""

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from ..core.distribution import Distribution
from ..core.state_space import BlockSplit, StateSpace
from ..family.family import MarginFamily, Pairing

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)


class DistributionEntry(BaseModel):
    state: List[int] = Field(..., description="One value per variable")
    prob: Union[str, float] = Field(..., description='"a/b" for exact mode or a float')

    @field_validator("prob")
    @classmethod
    def _check_rational(cls, value: Union[str, float]) -> Union[str, float]:
        if isinstance(value, str):
            try:
                Fraction(value)
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"'{value}' is not a rational of the form a/b")
        return value


class DistributionDocument(BaseModel):
    """{"cardinalities": [...], "entries": [{"state": [...], "prob": ...}]}"""
    cardinalities: List[int] = Field(..., min_length=1)
    entries: List[DistributionEntry]

    @model_validator(mode="after")
    def _check_entries(self) -> "DistributionDocument":
        kinds = {isinstance(e.prob, str) for e in self.entries}
        if len(kinds) > 1:
            raise ValueError("entries mix rational strings and floats")
        seen = set()
        for k, entry in enumerate(self.entries):
            if len(entry.state) != len(self.cardinalities):
                raise ValueError(f"entries[{k}].state has {len(entry.state)} values for "
                                 f"{len(self.cardinalities)} variables")
            key = tuple(entry.state)
            if key in seen:
                raise ValueError(f"entries[{k}].state {entry.state} is listed twice")
            seen.add(key)
        return self

    def to_distribution(self) -> Distribution:
        space = StateSpace(tuple(self.cardinalities))
        exact = all(isinstance(e.prob, str) for e in self.entries)
        mapping = {
            tuple(e.state): Fraction(e.prob) if exact else float(e.prob) for e in self.entries
        }
        return Distribution.from_mapping(space, mapping, exact=exact)


class FamilyDocument(BaseModel):
    """{"n": 4, "sets": [[1, 2], [2, 3]]}"""
    n: int = Field(..., ge=1)
    sets: List[List[int]] = Field(..., min_length=1)

    def to_family(self) -> MarginFamily:
        return MarginFamily.from_one_based(self.n, self.sets)


class PairingDocument(BaseModel):
    """{"n": 2, "match": [2, 1]}"""
    n: int = Field(..., ge=1)
    match: List[int]

    @model_validator(mode="after")
    def _check_length(self) -> "PairingDocument":
        if len(self.match) != self.n:
            raise ValueError(f"match has {len(self.match)} entries, expected n = {self.n}")
        return self

    def to_pairing(self) -> Pairing:
        return Pairing.from_one_based(self.match)


class SplitDocument(BaseModel):
    """{"x": [1, 2], "y": [3, 4]}"""
    x: List[int] = Field(..., min_length=1)
    y: List[int] = Field(..., min_length=1)

    def to_split(self) -> BlockSplit:
        return BlockSplit(tuple(i - 1 for i in self.x), tuple(i - 1 for i in self.y))


class MarginsDocument(BaseModel):
    """A margin specification problem: joint cardinalities, a family and one margin per set"""
    cardinalities: List[int] = Field(..., min_length=1)
    family: FamilyDocument
    margins: List[DistributionDocument]

    @model_validator(mode="after")
    def _check_counts(self) -> "MarginsDocument":
        if self.family.n != len(self.cardinalities):
            raise ValueError(f"family.n = {self.family.n} but there are {len(self.cardinalities)} variables")
        if len(self.margins) != len(self.family.sets):
            raise ValueError(f"{len(self.margins)} margins for {len(self.family.sets)} sets")
        return self

    def to_problem(self) -> Tuple[StateSpace, MarginFamily, List[Distribution]]:
        """(space, family, margins) with margins reordered to the family's sorted order"""
        space = StateSpace(tuple(self.cardinalities))
        family = self.family.to_family()
        by_set = {
            tuple(sorted(i - 1 for i in members)): doc.to_distribution()
            for members, doc in zip(self.family.sets, self.margins)
        }
        return space, family, [by_set[members] for members in family.sets]


def load_document(path: Union[str, Path], model: Type[M]) -> M:
    """Parse and validate a JSON file; ValidationError names the offending field"""
    text = Path(path).read_text(encoding="utf-8")
    logger.debug(f"Loading {model.__name__} from {path}")
    return model.model_validate_json(text)


def write_json(payload: Dict[str, Any], path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def describe_validation_error(error: ValidationError) -> str:
    """One line per problem, as "field.path: message" """
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<document>"
        lines.append(f"{location}: {item['msg']}")
    return "; ".join(lines)
