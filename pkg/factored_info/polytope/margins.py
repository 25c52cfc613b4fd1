"""Joint distributions expressing a prescribed tuple of margins"""

import logging
from typing import List, Optional, Sequence

from ..core.distribution import Distribution
from ..core.measures import marginal
from ..core.state_space import StateSpace
from ..errors import ExactnessRequiredError
from ..family.family import MarginFamily
from ..family.measures import margin_row_labels, margin_statistics_matrix
from ..registry import OperationModule, operation
from .vertices import ConstraintSystem, PolytopeReport, analyze_system

logger = logging.getLogger(__name__)


def _check_margins(space: StateSpace, fam: MarginFamily, margins: Sequence[Distribution]) -> None:
    if len(fam) == 0:
        raise ValueError("Margin family must contain at least one set")
    if fam.n != space.n:
        raise ValueError(f"Family is over {fam.n} variables but the state space has {space.n}")
    if len(margins) != len(fam):
        raise ValueError(f"Expected {len(fam)} margins, one per set, got {len(margins)}")
    for members, margin in zip(fam.sets, margins):
        expected = space.sub_space(members)
        if margin.space != expected:
            raise ValueError(
                f"Margin for set {[i + 1 for i in members]} has cardinalities "
                f"{margin.space.cardinalities}, expected {expected.cardinalities}"
            )
        if not margin.exact:
            raise ExactnessRequiredError("Margin specifications need exact rational margins")


def margin_constraint_system(space: StateSpace, fam: MarginFamily,
                             margins: Sequence[Distribution]) -> ConstraintSystem:
    """Margin equalities on the joint states not forced to zero.

    A joint state is forced to zero when some prescribed margin gives its
    restriction probability 0. Rows with margin value 0 vanish on the
    surviving states and are dropped.
    """
    _check_margins(space, fam, margins)
    surviving = []
    for state in space.states():
        if all(m.prob(tuple(state[i] for i in members)) > 0 for members, m in zip(fam.sets, margins)):
            surviving.append(state)
    matrix = margin_statistics_matrix(fam, space)
    labels = margin_row_labels(fam, space)
    values = []
    for members, sub_state in labels:
        margin = margins[fam.sets.index(members)]
        values.append(margin.prob(sub_state))
    columns = [space.encode(s) for s in surviving]
    rows = [i for i, value in enumerate(values) if value > 0]
    logger.debug(f"{len(surviving)} of {space.total} joint states survive zero-forcing")
    return ConstraintSystem(
        tuple(tuple(int(matrix[i, j]) for j in columns) for i in rows),
        tuple(values[i] for i in rows),
        tuple(surviving),
        tuple(labels[i] for i in rows),
    )


@operation("margin_specified_polytope", OperationModule.EXACT_POLYTOPE)
def margin_specified_polytope(space: StateSpace, fam: MarginFamily, margins: Sequence[Distribution],
                              cap: Optional[int] = None) -> PolytopeReport:
    """All joint distributions whose lambda-margins equal the given ones.

    ``margins`` lists one exact distribution per set, in the family's
    canonical (sorted) order. Incompatible margins give an empty report.
    """
    system = margin_constraint_system(space, fam, margins)
    report = analyze_system(system, cap)
    if report.is_empty:
        logger.info(f"Margins for {fam.one_based()} are not jointly realizable")
    return report


def margins_of(p: Distribution, fam: MarginFamily) -> List[Distribution]:
    """The margins of p on each set of the family, in family order"""
    return [marginal(p, members) for members in fam.sets]
