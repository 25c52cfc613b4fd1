"""Exponentiated-gradient ascent over the probability simplex with random restarts"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..atlas.maximizers import MaximizerSet, enumerate_I_maximizers, matching_maximizer
from ..core.distribution import Distribution
from ..core.measures import marginal, total_variation
from ..core.state_space import StateSpace
from ..family.family import Pairing
from ..registry import OperationModule, operation
from ..settings import get_global_settings
from .objectives import Measure, Objective

logger = logging.getLogger(__name__)

# Smallest weight an iterate may hold; keeps every log finite
PROBABILITY_FLOOR = 1e-300
MAX_HALVINGS = 30
# Share of the start point drawn from the Dirichlet sample, the rest is uniform
DIRICHLET_SHARE = 0.9


class SearchConfig(BaseModel):
    """Restart and step settings for maximize_measure"""
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    restarts: int = Field(50, gt=0, description="Number of random starts")
    max_iterations: int = Field(5000, gt=0, alias="maxIterations", description="Iteration cap per restart")
    step_size: float = Field(0.5, gt=0, alias="stepSize", description="Initial step of every iteration")
    convergence_tol: float = Field(1e-9, gt=0, alias="convergenceTol",
                                   description="Threshold on the simplex-tangent gradient norm")
    seed: int = Field(0, ge=0, description="Seed of the restart generators")


@dataclass
class RestartSummary:
    """Outcome of one restart"""
    restart: int
    start_value: float
    final_value: float
    iterations: int
    halvings: int
    converged: bool
    gradient_norm: float
    point: np.ndarray = field(repr=False)
    values: List[float] = field(default_factory=list, repr=False)


@dataclass(frozen=True)
class MaximizerMatch:
    index: int
    distance: float
    distribution: Distribution


@dataclass
class SearchResult:
    measure: str
    space: StateSpace
    best_value: float
    best_point: Distribution
    restarts: List[RestartSummary]
    known_maximum: Optional[float] = None
    matched_maximizer: Optional[MaximizerMatch] = None

    @property
    def per_restart_values(self) -> List[float]:
        return [r.final_value for r in self.restarts]

    @property
    def converged_restarts(self) -> int:
        return sum(1 for r in self.restarts if r.converged)


def prod_exp_normalize(p: np.ndarray, step: np.ndarray) -> np.ndarray:
    """p * exp(step), shifted by the max for stability, floored and renormalized"""
    u = p * np.exp(step - step.max())
    u = np.maximum(u / u.sum(), PROBABILITY_FLOOR)
    return u / u.sum()


def tangent_norm(p: np.ndarray, grad: np.ndarray) -> float:
    """Norm of the gradient projected on the simplex, in the metric of p"""
    centered = grad - float(p @ grad)
    return math.sqrt(float(p @ (centered * centered)))


def interior_start(total: int, rng: np.random.Generator) -> np.ndarray:
    """Symmetric Dirichlet draw mixed with the uniform distribution"""
    sample = rng.dirichlet(np.ones(total))
    start = DIRICHLET_SHARE * sample + (1.0 - DIRICHLET_SHARE) / total
    return start / start.sum()


def ascend(objective: Objective, start: np.ndarray, cfg: SearchConfig, restart: int = 0) -> RestartSummary:
    """Multiplicative updates with step halving until the tangent gradient vanishes"""
    p = start
    value = objective.value(p)
    values = [value]
    halvings_total = 0
    converged = False
    norm = math.inf
    iteration = 0
    for iteration in range(1, cfg.max_iterations + 1):
        grad = objective.gradient(p)
        norm = tangent_norm(p, grad)
        if norm < cfg.convergence_tol:
            converged = True
            break
        step = cfg.step_size
        for _ in range(MAX_HALVINGS + 1):
            candidate = prod_exp_normalize(p, step * grad)
            candidate_value = objective.value(candidate)
            if candidate_value >= value:
                break
            step /= 2
            halvings_total += 1
        else:
            # No step of any size increases the value
            logger.debug(f"Restart {restart} stalled at iteration {iteration}, tangent norm {norm:.3e}")
            break
        p, value = candidate, candidate_value
        values.append(value)
    if not converged:
        logger.warning(
            f"Restart {restart} stopped after {iteration} iterations with tangent norm {norm:.3e}"
        )
    return RestartSummary(
        restart=restart,
        start_value=values[0],
        final_value=value,
        iterations=iteration,
        halvings=halvings_total,
        converged=converged,
        gradient_norm=norm,
        point=p,
        values=values,
    )


@operation("maximize_measure", OperationModule.NUMERIC_SEARCH)
def maximize_measure(measure: Measure, space: StateSpace, cfg: Optional[SearchConfig] = None,
                     maximizers: Optional[MaximizerSet] = None) -> SearchResult:
    """Best of cfg.restarts exponentiated-gradient runs from random interior points.

    Restarts draw from independent generators spawned from cfg.seed and run
    on a thread pool; their order in the result is the restart order. When
    a maximizer set is given the best point is matched to its nearest member
    in total variation.
    """
    cfg = cfg or SearchConfig()
    objective = measure.objective(space)
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)

    def _run(k: int) -> RestartSummary:
        rng = np.random.default_rng(seeds[k])
        return ascend(objective, interior_start(space.total, rng), cfg, restart=k)

    with ThreadPoolExecutor(max_workers=get_global_settings().threads) as pool:
        summaries = list(pool.map(_run, range(cfg.restarts)))

    best = max(summaries, key=lambda r: r.final_value)
    best_point = Distribution.from_array(space, best.point)
    result = SearchResult(
        measure=measure.label(),
        space=space,
        best_value=measure.evaluate(best_point),
        best_point=best_point,
        restarts=summaries,
    )
    if space.is_homogeneous:
        result.known_maximum = measure.known_maximum(space)
    if maximizers is not None:
        index, distance = matching_maximizer(best_point, maximizers)
        result.matched_maximizer = MaximizerMatch(index, distance, maximizers.distributions[index])
    logger.info(
        f"{measure.label()} on {space.cardinalities}: best {result.best_value:.12g} "
        f"({result.converged_restarts}/{cfg.restarts} restarts converged)"
    )
    return result


def sfmi_margin_distance(p: Distribution, pairing: Pairing) -> Tuple[float, ...]:
    """Per pair (X_i, Y_pi(i)), total variation from its margin to the nearest MI maximizer"""
    n = p.space.n // 2
    codes = enumerate_I_maximizers(p.space.N, 2)
    distances = []
    for i in range(n):
        margin = marginal(p.to_float(), (i, n + pairing.match[i]))
        distances.append(min(total_variation(margin, q.to_float()) for q in codes))
    return tuple(distances)
