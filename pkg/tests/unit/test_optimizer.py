"""Unit tests for candidate assessment, budgets and the knapsack selection."""

import numpy as np
import pytest
from pydantic import ValidationError

from logfold.config.settings import AppConfig, BudgetConfig
from logfold.eventlog.timing import temporal_split
from logfold.models.eventlog import EventLog
from logfold.models.gspn import FoldCandidate, FoldKind, Gspn
from logfold.optimizer.assessment import aggregate_deviation, assess_candidate, assess_candidates
from logfold.optimizer.knapsack import (
    EXACT_SEARCH_LIMIT,
    Budget,
    CandidateAssessment,
    PointDeviation,
    _branch_and_bound,
    _dynamic_programming,
    solve_knapsack,
    spent,
)
from logfold.optimizer.optimize import percent_change, resolve_budget
from logfold.utils.exceptions import InvalidArgumentError, ProtectionViolationError


def make_candidate(tag: str, k: int) -> FoldCandidate:
    """A Sequence of ``k`` fresh activities, or a SelfLoop when ``k`` is 1."""
    if k == 1:
        return FoldCandidate.build(FoldKind.SELF_LOOP, [tag], entry=f"p_{tag}", exit=f"p_{tag}")
    members = [f"{tag}{j}" for j in range(k)]
    return FoldCandidate.build(FoldKind.SEQUENCE, members, entry=f"in_{tag}", exit=f"out_{tag}")


def make_assessments(ks: list[int], mus: list[float]) -> list[CandidateAssessment]:
    return [
        CandidateAssessment.of(make_candidate(f"x{i:02d}_", k), mu) for i, (k, mu) in enumerate(zip(ks, mus))
    ]


def exhaustive_best(ks: np.ndarray, mus: np.ndarray, limit: float) -> int:
    """Largest feasible sum of k over all subsets."""
    n = len(ks)
    masks = (np.arange(2**n)[:, None] >> np.arange(n)) & 1
    feasible = masks @ mus <= limit + 1e-9
    return int((masks @ ks)[feasible].max())


@pytest.fixture
def empty_net() -> Gspn:
    return Gspn(places=("start", "end"), transitions=(), arcs=(), initial_place="start", final_place="end")


class TestModels:
    """Test cases for assessment and budget models."""

    def test_point_deviation_is_absolute(self) -> None:
        """Test that the deviation ignores the direction of change."""
        assert PointDeviation(original_mae=100.0, folded_mae=80.0).deviation == pytest.approx(20.0)
        assert PointDeviation(original_mae=80.0, folded_mae=100.0).deviation == pytest.approx(20.0)

    def test_count_must_match_candidate(self) -> None:
        """Test that k_i is tied to the candidate's activity count."""
        cand = make_candidate("a", 3)
        with pytest.raises(ValidationError):
            CandidateAssessment(candidate=cand, k_i=2, mu_i=1.0)

    def test_negative_deviation_rejected(self) -> None:
        """Test that mu_i cannot be negative."""
        with pytest.raises(ValidationError):
            CandidateAssessment.of(make_candidate("a", 2), -1.0)

    def test_budget_limit(self) -> None:
        """Test the limit g * Gamma."""
        assert Budget(gamma=120.0, g=0.5).limit == pytest.approx(60.0)
        assert Budget(gamma=120.0).limit == pytest.approx(120.0)

    def test_budget_rejects_negative_values(self) -> None:
        """Test that Gamma and g cannot be negative."""
        with pytest.raises(ValidationError):
            Budget(gamma=-1.0)
        with pytest.raises(ValidationError):
            Budget(gamma=1.0, g=-0.1)


class TestSolveKnapsack:
    """Test cases for the 0/1 knapsack over candidates."""

    def test_picks_larger_candidate_when_only_one_fits(self) -> None:
        """Test k = [3, 2], mu = [10, 10] with a budget of 10."""
        result = solve_knapsack(make_assessments([3, 2], [10.0, 10.0]), Budget(gamma=10.0, g=1.0))
        assert [a.x_i for a in result] == [True, False]

    def test_takes_all_when_budget_allows(self) -> None:
        """Test that a generous budget takes every candidate."""
        result = solve_knapsack(make_assessments([3, 2, 1], [10.0, 10.0, 5.0]), Budget(gamma=100.0))
        assert all(a.x_i for a in result)

    def test_zero_deviation_candidates_always_taken(self) -> None:
        """Test that mu = 0 candidates are selected even with no budget."""
        result = solve_knapsack(make_assessments([2, 3, 2], [0.0, 0.0, 0.0]), Budget(gamma=0.0))
        assert all(a.x_i for a in result)

    def test_nothing_fits(self) -> None:
        """Test that every candidate is rejected when each exceeds the budget."""
        result = solve_knapsack(make_assessments([2, 3], [50.0, 60.0]), Budget(gamma=10.0))
        assert not any(a.x_i for a in result)
        assert spent(result) == 0.0

    def test_keeps_input_order_and_sets_every_flag(self) -> None:
        """Test that the result mirrors the input order with x_i decided."""
        assessments = make_assessments([2, 4, 3], [5.0, 30.0, 4.0])
        result = solve_knapsack(assessments, Budget(gamma=10.0))
        assert [a.name for a in result] == [a.name for a in assessments]
        assert all(a.x_i is not None for a in result)
        assert [a.x_i for a in result] == [True, False, True]

    def test_tie_prefers_smaller_deviation(self) -> None:
        """Test that equal activity counts prefer less deviation."""
        result = solve_knapsack(make_assessments([2, 2], [8.0, 3.0]), Budget(gamma=8.0))
        assert [a.x_i for a in result] == [False, True]

    def test_full_tie_prefers_smaller_name(self) -> None:
        """Test that identical k and mu fall back to the candidate names."""
        result = solve_knapsack(make_assessments([2, 2], [5.0, 5.0]), Budget(gamma=5.0))
        assert [a.x_i for a in result] == [True, False]

    def test_limit_is_inclusive(self) -> None:
        """Test that a total deviation equal to the limit is allowed."""
        result = solve_knapsack(make_assessments([2, 2], [4.0, 6.0]), Budget(gamma=10.0))
        assert all(a.x_i for a in result)

    def test_matches_exhaustive_enumeration(self) -> None:
        """Test optimality against brute force on random instances."""
        rng = np.random.default_rng(2024)
        for _ in range(500):
            n = int(rng.integers(1, 16))
            ks = rng.integers(1, 5, size=n)
            mus = np.round(rng.uniform(0, 50, size=n), 2)
            mus[rng.random(n) < 0.1] = 0.0
            limit = float(np.round(rng.uniform(0, 120), 2))

            result = solve_knapsack(make_assessments(ks.tolist(), mus.tolist()), Budget(gamma=limit))
            chosen = np.array([bool(a.x_i) for a in result])
            assert float(mus[chosen].sum()) <= limit + 1e-9
            assert int(ks[chosen].sum()) == exhaustive_best(ks, mus, limit)

    def test_budget_monotonicity(self) -> None:
        """Test that a larger budget never folds fewer activities."""
        rng = np.random.default_rng(7)
        for _ in range(50):
            n = int(rng.integers(2, 12))
            assessments = make_assessments(
                rng.integers(1, 5, size=n).tolist(), np.round(rng.uniform(0, 40, size=n), 1).tolist()
            )
            totals = []
            for limit in (0.0, 10.0, 25.0, 60.0, 200.0):
                result = solve_knapsack(assessments, Budget(gamma=limit))
                totals.append(sum(a.k_i for a in result if a.x_i))
            assert totals == sorted(totals)

    def test_large_instance_stays_within_budget(self) -> None:
        """Test the dynamic-programming path beyond the exact-search size."""
        rng = np.random.default_rng(11)
        n = EXACT_SEARCH_LIMIT + 10
        mus = rng.integers(1, 30, size=n).astype(float)
        result = solve_knapsack(make_assessments([2] * n, mus.tolist()), Budget(gamma=100.0))
        chosen = [a for a in result if a.x_i]
        assert spent(result) <= 100.0
        # Equal k everywhere: the cheapest candidates fill the budget
        cheapest = np.sort(mus)
        assert len(chosen) == int(np.searchsorted(np.cumsum(cheapest), 100.0, side="right"))

    def test_dynamic_programming_matches_search_on_whole_seconds(self) -> None:
        """Test that both exact solvers agree when deviations are whole seconds."""
        rng = np.random.default_rng(3)
        for _ in range(100):
            n = int(rng.integers(1, 13))
            items = [
                (i, int(rng.integers(1, 5)), float(rng.integers(1, 40)), f"c{i:02d}") for i in range(n)
            ]
            limit = float(rng.integers(0, 100))
            dp = _dynamic_programming(items, limit)
            bb = _branch_and_bound(items, limit)
            assert dp.total_k == bb.total_k
            assert dp.total_mu == pytest.approx(bb.total_mu)


class TestBudgetResolution:
    """Test cases for resolving the budget from configuration."""

    def test_original_mae_mode_uses_mean(self) -> None:
        """Test that Gamma defaults to the mean original MAE."""
        budget = resolve_budget(BudgetConfig(g=2.0), {"a": 100.0, "b": 300.0})
        assert budget.gamma == pytest.approx(200.0)
        assert budget.limit == pytest.approx(400.0)

    def test_fixed_mode(self) -> None:
        """Test a fixed Gamma in seconds."""
        budget = resolve_budget(BudgetConfig(gamma_mode="fixed", gamma_value=50.0), {})
        assert budget.gamma == pytest.approx(50.0)

    def test_relative_mode(self) -> None:
        """Test Gamma as a multiple of the mean original MAE."""
        budget = resolve_budget(BudgetConfig(gamma_mode="relative", gamma_value=0.1), {"a": 1000.0})
        assert budget.gamma == pytest.approx(100.0)

    def test_mae_mode_needs_maes(self) -> None:
        """Test that MAE-derived modes fail without MAEs."""
        with pytest.raises(InvalidArgumentError):
            resolve_budget(BudgetConfig(), {})

    def test_fixed_mode_requires_value(self) -> None:
        """Test configuration validation of the fixed mode."""
        with pytest.raises(ValidationError):
            BudgetConfig(gamma_mode="fixed")

    def test_percent_change(self) -> None:
        """Test the relative decrease helper."""
        assert percent_change(200.0, 150.0) == pytest.approx(25.0)
        assert percent_change(200.0, 250.0) == pytest.approx(-25.0)
        assert percent_change(0.0, 10.0) == 0.0


class TestAggregation:
    """Test cases for combining per-point deviations."""

    @pytest.fixture
    def per_point(self) -> dict[str, PointDeviation]:
        return {
            "A": PointDeviation(original_mae=100.0, folded_mae=110.0),
            "B": PointDeviation(original_mae=50.0, folded_mae=20.0),
        }

    def test_worst_case(self, per_point: dict[str, PointDeviation]) -> None:
        """Test the default worst-case aggregation."""
        assert aggregate_deviation(per_point) == pytest.approx(30.0)

    def test_named_point(self, per_point: dict[str, PointDeviation]) -> None:
        """Test aggregation at a single named point."""
        assert aggregate_deviation(per_point, "A") == pytest.approx(10.0)

    def test_unknown_point(self, per_point: dict[str, PointDeviation]) -> None:
        """Test that an unassessed named point is an error."""
        with pytest.raises(InvalidArgumentError):
            aggregate_deviation(per_point, "Z")

    def test_empty(self) -> None:
        """Test that no points means no deviation."""
        assert aggregate_deviation({}) == 0.0


class TestAssessment:
    """Test cases for measuring one candidate's deviation."""

    def test_candidate_matching_nothing_has_zero_deviation(self, synthetic_log: EventLog, empty_net: Gspn) -> None:
        """Test that a fold that changes no trace costs nothing."""
        train, test = temporal_split(synthetic_log, 0.8)
        cand = FoldCandidate.build(FoldKind.SEQUENCE, ["ghost 1", "ghost 2"], entry="p1", exit="p2")
        assessment = assess_candidate(train, test, empty_net, cand, "IV Antibiotics")
        assert assessment.mu_i == 0.0
        assert assessment.x_i is None
        assert assessment.k_i == 2

    def test_protected_point_rejected(self, synthetic_log: EventLog, empty_net: Gspn) -> None:
        """Test that a candidate holding the prediction point is refused."""
        train, test = temporal_split(synthetic_log, 0.8)
        cand = FoldCandidate.build(FoldKind.SEQUENCE, ["IV Antibiotics", "Admission NC"], entry="p1", exit="p2")
        with pytest.raises(ProtectionViolationError):
            assess_candidate(train, test, empty_net, cand, "IV Antibiotics")

    def test_self_loop_fold_is_measured(self, synthetic_log: EventLog, empty_net: Gspn) -> None:
        """Test that a fold touching traces yields per-point MAEs and mu_i = |difference|."""
        train, test = temporal_split(synthetic_log, 0.8)
        cand = FoldCandidate.build(FoldKind.SELF_LOOP, ["Leucocytes"], entry="p1", exit="p1")
        assessment = assess_candidate(train, test, empty_net, cand, "Admission NC")
        deviation = assessment.per_point["Admission NC"]
        assert assessment.mu_i == pytest.approx(abs(deviation.folded_mae - deviation.original_mae))

    def test_threads_keep_candidate_order(self, synthetic_log: EventLog, empty_net: Gspn) -> None:
        """Test that threaded assessment matches the sequential result."""
        train, test = temporal_split(synthetic_log, 0.8)
        candidates = [
            FoldCandidate.build(FoldKind.SELF_LOOP, ["Leucocytes"], entry="p1", exit="p1"),
            FoldCandidate.build(FoldKind.SELF_LOOP, ["CRP"], entry="p2", exit="p2"),
            FoldCandidate.build(FoldKind.SEQUENCE, ["ghost 1", "ghost 2"], entry="p3", exit="p4"),
        ]
        points = ["IV Antibiotics"]
        sequential = assess_candidates(train, test, empty_net, candidates, points, AppConfig())
        threaded = assess_candidates(
            train, test, empty_net, candidates, points, AppConfig(processing={"workers": 3})
        )
        assert [a.name for a in threaded] == [c.name for c in candidates]
        assert [a.mu_i for a in threaded] == pytest.approx([a.mu_i for a in sequential])
