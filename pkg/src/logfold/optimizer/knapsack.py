"""Deviation-budgeted 0/1 knapsack over fold candidates."""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from logfold.models.gspn import FoldCandidate
from logfold.utils.exceptions import InvalidArgumentError
from logfold.utils.logging import get_logger

logger = get_logger(__name__)

EXACT_SEARCH_LIMIT = 20
MU_TOLERANCE = 1e-9


class PointDeviation(BaseModel):
    """Before/after MAE of one candidate's fold at one prediction point."""

    model_config = ConfigDict(frozen=True)

    original_mae: float = Field(..., ge=0)
    folded_mae: float = Field(..., ge=0)

    @property
    def deviation(self) -> float:
        return abs(self.folded_mae - self.original_mae)


class CandidateAssessment(BaseModel):
    """A candidate with its activity count k_i, deviation mu_i and selection flag x_i."""

    model_config = ConfigDict(frozen=True)

    candidate: FoldCandidate
    k_i: int = Field(..., ge=1)
    mu_i: float = Field(..., ge=0)
    x_i: Optional[bool] = None
    per_point: dict[str, PointDeviation] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_count(self) -> "CandidateAssessment":
        if self.k_i != self.candidate.activity_count:
            raise ValueError(
                f"k_i={self.k_i} does not match activity_count={self.candidate.activity_count} "
                f"of {self.candidate.name}"
            )
        return self

    @classmethod
    def of(cls, candidate: FoldCandidate, mu: float, **kwargs: object) -> "CandidateAssessment":
        return cls(candidate=candidate, k_i=candidate.activity_count, mu_i=mu, **kwargs)

    @property
    def name(self) -> str:
        return self.candidate.name

    def selected(self, flag: bool) -> "CandidateAssessment":
        return self.model_copy(update={"x_i": flag})


class Budget(BaseModel):
    """Deviation budget: expected deviation Gamma (seconds) times slack g."""

    model_config = ConfigDict(frozen=True)

    gamma: float = Field(..., ge=0)
    g: float = Field(default=1.0, ge=0)

    @property
    def limit(self) -> float:
        return self.g * self.gamma


@dataclass(frozen=True)
class _Choice:
    total_k: int
    total_mu: float
    names: tuple[str, ...]
    indices: frozenset[int]

    def better_than(self, other: Optional["_Choice"]) -> bool:
        """More activities, then less deviation, then the lexicographically smaller name list."""
        if other is None:
            return True
        if self.total_k != other.total_k:
            return self.total_k > other.total_k
        if abs(self.total_mu - other.total_mu) > MU_TOLERANCE:
            return self.total_mu < other.total_mu
        return self.names < other.names

    def plus(self, index: int, k: int, mu: float, name: str) -> "_Choice":
        return _Choice(
            total_k=self.total_k + k,
            total_mu=self.total_mu + mu,
            names=tuple(sorted(self.names + (name,))),
            indices=self.indices | {index},
        )


EMPTY = _Choice(total_k=0, total_mu=0.0, names=(), indices=frozenset())


def _branch_and_bound(items: list[tuple[int, int, float, str]], limit: float) -> _Choice:
    """Exact depth-first search; prunes branches that cannot reach the best k."""
    items = sorted(items, key=lambda it: (-it[1], it[2], it[3]))
    suffix_k = [0] * (len(items) + 1)
    for i in range(len(items) - 1, -1, -1):
        suffix_k[i] = suffix_k[i + 1] + items[i][1]

    best: list[_Choice] = [EMPTY]

    def search(level: int, current: _Choice) -> None:
        if current.better_than(best[0]):
            best[0] = current
        if level == len(items) or current.total_k + suffix_k[level] < best[0].total_k:
            return
        index, k, mu, name = items[level]
        if current.total_mu + mu <= limit + MU_TOLERANCE:
            search(level + 1, current.plus(index, k, mu, name))
        search(level + 1, current)

    search(0, EMPTY)
    return best[0]


def _dynamic_programming(items: list[tuple[int, int, float, str]], limit: float) -> _Choice:
    """Exact over deviations rounded up to whole seconds, so the real budget always holds."""
    capacity = math.floor(limit + MU_TOLERANCE)
    table: dict[int, _Choice] = {0: EMPTY}
    for index, k, mu, name in items:
        cost = math.ceil(mu - MU_TOLERANCE)
        if cost > capacity:
            continue
        updates: dict[int, _Choice] = {}
        for used, choice in table.items():
            if used + cost > capacity:
                continue
            candidate = choice.plus(index, k, mu, name)
            slot = used + cost
            incumbent = updates.get(slot, table.get(slot))
            if candidate.better_than(incumbent):
                updates[slot] = candidate
        table.update(updates)
    best = EMPTY
    for choice in table.values():
        if choice.better_than(best):
            best = choice
    return best


def solve_knapsack(assessments: Sequence[CandidateAssessment], budget: Budget) -> list[CandidateAssessment]:
    """
    Choose x_i to maximise sum(k_i x_i) subject to sum(mu_i x_i) <= g * Gamma.

    Zero-deviation candidates are always taken. The rest are solved exactly
    by branch and bound up to 20 candidates, and by dynamic programming over
    whole-second deviations beyond that. Ties prefer less total deviation,
    then the lexicographically smaller list of candidate names.

    Returns:
        The assessments in input order with ``x_i`` set

    Raises:
        InvalidArgumentError: If a deviation is negative
    """
    for a in assessments:
        if a.mu_i < 0:
            raise InvalidArgumentError(f"Negative deviation {a.mu_i} for {a.name}")

    free = {i for i, a in enumerate(assessments) if a.mu_i == 0}
    items = [(i, a.k_i, a.mu_i, a.name) for i, a in enumerate(assessments) if i not in free]
    if len(items) <= EXACT_SEARCH_LIMIT:
        choice = _branch_and_bound(items, budget.limit)
        method = "branch-and-bound"
    else:
        choice = _dynamic_programming(items, budget.limit)
        method = "dynamic-programming"

    chosen = choice.indices | free
    result = [a.selected(i in chosen) for i, a in enumerate(assessments)]
    logger.info(
        f"Knapsack ({method}): selected {len(chosen)}/{len(assessments)} candidates, "
        f"sum k = {sum(a.k_i for a in result if a.x_i)}, "
        f"sum mu = {choice.total_mu:.3f} <= limit {budget.limit:.3f}"
    )
    return result


def spent(assessments: Sequence[CandidateAssessment]) -> float:
    """Sum of mu_i over selected assessments."""
    return sum(a.mu_i for a in assessments if a.x_i)
