"""Unit tests for the synthetic generator, filter baselines and log scoring."""

import statistics

import pytest

from logfold.config.settings import AppConfig
from logfold.harness.baselines import (
    baseline_attribute_filter,
    baseline_endpoints_filter,
    baseline_value_filter,
    carries_values,
)
from logfold.harness.experiment import load_log, score_log
from logfold.harness.synthetic import DelaySpec, SyntheticSpec, generate_synthetic
from logfold.models.eventlog import EventLog
from logfold.utils.exceptions import InvalidArgumentError, SpecError


class TestSyntheticGenerator:
    """Test cases for the synthetic sepsis-like generator."""

    def test_default_volume(self) -> None:
        """Test about fifteen events per case over the default thousand cases."""
        log = generate_synthetic()
        assert len(log) == 1000
        assert 13_500 <= log.event_count <= 16_500

    def test_control_flow(self, synthetic_log: EventLog) -> None:
        """Test the fixed block order of every trace."""
        spec = SyntheticSpec()
        for trace in synthetic_log.traces:
            activities = trace.activities
            assert activities[:3] == spec.registration
            assert activities[-3] == spec.treatment
            assert activities[-2] in spec.admissions
            assert activities[-1] in spec.releases
            labs = activities[3:-3]
            assert [a for i, a in enumerate(labs) if i == 0 or labs[i - 1] != a] == list(spec.lab_tests)

    def test_same_seed_same_log(self) -> None:
        """Test that generation is deterministic per seed."""
        spec = SyntheticSpec(cases=20)
        assert generate_synthetic(spec, seed=3) == generate_synthetic(spec, seed=3)
        assert generate_synthetic(spec, seed=3) != generate_synthetic(spec, seed=4)

    def test_noise_activity(self) -> None:
        """Test that the noise activity follows the registration block."""
        log = generate_synthetic(SyntheticSpec(cases=10, noise_activity="Noise"), seed=1)
        assert all(trace.activities[3] == "Noise" for trace in log.traces)

    def test_handovers_only_across_roles(self, synthetic_log: EventLog) -> None:
        """Test one performer per role within a case."""
        for trace in synthetic_log.traces:
            assert trace.events[1].resource == trace.events[2].resource

    def test_case_ids(self) -> None:
        """Test zero-padded case ids."""
        log = generate_synthetic(SyntheticSpec(cases=3))
        assert [t.case_id for t in log.traces] == ["case-0001", "case-0002", "case-0003"]

    def test_marker_values(self, synthetic_log: EventLog) -> None:
        """Test that every CRP event reports a positive value and no other event does."""
        for trace in synthetic_log.traces:
            for event in trace.events:
                if event.activity == "CRP":
                    assert float(event.attributes["value"]) > 0
                else:
                    assert event.attributes == {}

    def test_mild_cases(self, synthetic_log: EventLog) -> None:
        """Test that cases with normal CRP values form a minority with shorter ward stays."""
        spec = SyntheticSpec()
        stays: dict[bool, list[float]] = {True: [], False: []}
        for trace in synthetic_log.traces:
            crp = [float(e.attributes["value"]) for e in trace.events if e.activity == "CRP"]
            if trace.activities[-1] in spec.release_stay:
                continue
            gap = (trace.events[-1].timestamp - trace.events[-2].timestamp).total_seconds()
            stays[max(crp) <= 10.0].append(gap)
        share = len(stays[True]) / (len(stays[True]) + len(stays[False]))
        assert 0.2 < share < 0.5
        assert statistics.median(stays[True]) < 0.85 * statistics.median(stays[False])

    def test_early_discharge(self, synthetic_log: EventLog) -> None:
        """Test that Release E follows the admission sooner than the ward releases."""
        gaps: dict[bool, list[float]] = {True: [], False: []}
        for trace in synthetic_log.traces:
            gap = (trace.events[-1].timestamp - trace.events[-2].timestamp).total_seconds()
            gaps[trace.activities[-1] == "Release E"].append(gap)
        assert gaps[True]
        assert statistics.median(gaps[True]) < statistics.median(gaps[False])

    def test_levels_leave_control_flow_alone(self) -> None:
        """Test that changing the mild share keeps every trace's activities."""
        plain = generate_synthetic(SyntheticSpec(cases=30), seed=2)
        shifted = generate_synthetic(SyntheticSpec(cases=30, mild_share=0.9), seed=2)
        assert [t.activities for t in plain.traces] == [t.activities for t in shifted.traces]

    def test_no_marker(self) -> None:
        """Test that a spec without a marker test emits no attributes."""
        log = generate_synthetic(SyntheticSpec(cases=5, marker_test=None), seed=1)
        assert all(e.attributes == {} for t in log.traces for e in t.events)

    @pytest.mark.parametrize(
        "spec",
        [
            SyntheticSpec(cases=0),
            SyntheticSpec(releases={"Release A": 0.5}),
            SyntheticSpec(intensive_admission="Admission X"),
            SyntheticSpec(lab_tests={"CRP": -1.0}),
            SyntheticSpec(noise_activity="CRP"),
            SyntheticSpec(mild_share=1.5),
            SyntheticSpec(marker_test="Ferritin"),
            SyntheticSpec(release_stay={"Release Z": DelaySpec(median_minutes=60)}),
        ],
        ids=[
            "no-cases",
            "probabilities",
            "intensive",
            "negative-rate",
            "repeated-label",
            "mild-share",
            "unknown-marker",
            "unknown-release",
        ],
    )
    def test_inconsistent_spec(self, spec: SyntheticSpec) -> None:
        """Test that inconsistent specs are refused."""
        with pytest.raises(SpecError):
            generate_synthetic(spec)


class TestBaselines:
    """Test cases for the comparison filters."""

    def test_drop_all(self, synthetic_log: EventLog) -> None:
        """Test that fraction 1 removes every event of the activity."""
        filtered = baseline_attribute_filter(synthetic_log, "CRP", 1.0)
        crp = synthetic_log.activity_counts()["CRP"]
        assert "CRP" not in filtered.activities
        assert filtered.event_count == synthetic_log.event_count - crp
        assert len(filtered) == len(synthetic_log)

    def test_drop_nothing(self, synthetic_log: EventLog) -> None:
        """Test that fraction 0 is the identity."""
        assert baseline_attribute_filter(synthetic_log, "CRP", 0.0) == synthetic_log

    def test_drop_half(self, synthetic_log: EventLog) -> None:
        """Test that fraction 0.5 keeps about half the events."""
        before = synthetic_log.activity_counts()["CRP"]
        after = baseline_attribute_filter(synthetic_log, "CRP", 0.5, seed=9).activity_counts()["CRP"]
        assert abs(after - before / 2) <= 1

    def test_seeded(self, synthetic_log: EventLog) -> None:
        """Test that the same seed drops the same events."""
        first = baseline_attribute_filter(synthetic_log, "Leucocytes", 0.3, seed=5)
        assert first == baseline_attribute_filter(synthetic_log, "Leucocytes", 0.3, seed=5)

    def test_absent_activity(self, example_log: EventLog) -> None:
        """Test that filtering an unknown activity leaves the log unchanged."""
        assert baseline_attribute_filter(example_log, "Z") is example_log

    def test_emptied_trace_dropped(self, build_log) -> None:
        """Test that traces left without events disappear."""
        log = build_log({"c1": [("a", 0)], "c2": [("a", 0), ("b", 5)]})
        filtered = baseline_attribute_filter(log, "a")
        assert [t.case_id for t in filtered.traces] == ["c2"]

    @pytest.mark.parametrize("fraction", [-0.1, 1.1])
    def test_invalid_fraction(self, example_log: EventLog, fraction: float) -> None:
        """Test fractions outside [0, 1]."""
        with pytest.raises(InvalidArgumentError):
            baseline_attribute_filter(example_log, "A", fraction)

    def test_protected_first_occurrence(self, synthetic_log: EventLog) -> None:
        """Test that a protected activity keeps its first event in every trace."""
        filtered = baseline_attribute_filter(synthetic_log, "CRP", 1.0, protected=["CRP"])
        assert len(filtered) == len(synthetic_log)
        assert all(t.activities.count("CRP") == 1 for t in filtered.traces)
        for before, after in zip(synthetic_log.traces, filtered.traces):
            first = before.activities.index("CRP")
            assert after.events[after.activities.index("CRP")] == before.events[first]

    def test_value_filter(self, build_log) -> None:
        """Test that only cases whose values are all normal are dropped."""
        log = build_log(
            {"c1": [("a", 0), ("CRP", 5)], "c2": [("a", 0), ("CRP", 5), ("CRP", 9)], "c3": [("a", 0)]}
        )
        values = {"c1": ["4.0"], "c2": ["3.0", "55.0"]}
        traces = []
        for trace in log.traces:
            readings = iter(values.get(trace.case_id, []))
            events = tuple(
                e.model_copy(update={"attributes": {"value": next(readings)}}) if e.activity == "CRP" else e
                for e in trace.events
            )
            traces.append(trace.model_copy(update={"events": events}))
        log = log.with_traces(traces)
        assert carries_values(log, "CRP")
        filtered = baseline_value_filter(log, "CRP", "value", 10.0)
        assert [t.case_id for t in filtered.traces] == ["c2", "c3"]
        assert baseline_value_filter(log, "CRP", "value", 100.0).traces == (log.traces[2],)

    def test_value_filter_on_synthetic(self, synthetic_log: EventLog) -> None:
        """Test that the value filter keeps CRP reachable in every remaining trace."""
        filtered = baseline_value_filter(synthetic_log)
        assert 0 < len(filtered) < len(synthetic_log)
        assert all("CRP" in t.activities for t in filtered.traces)

    def test_without_values(self, example_log: EventLog) -> None:
        """Test that a log without readings is not a value log."""
        assert not carries_values(example_log, "A")
        assert baseline_value_filter(example_log, "A") == example_log

    def test_endpoints(self, example_log: EventLog) -> None:
        """Test keeping traces by first and last activity."""
        assert len(baseline_endpoints_filter(example_log, ["A"], ["D"])) == 5
        assert len(baseline_endpoints_filter(example_log, ["B"], [])) == 0
        assert baseline_endpoints_filter(example_log, [], []) == example_log

    def test_endpoints_on_synthetic(self, synthetic_log: EventLog) -> None:
        """Test that dropping a release drops exactly its traces."""
        ends = ["Release A", "Release B", "Release C", "Release D"]
        filtered = baseline_endpoints_filter(synthetic_log, ["ER Registration"], ends)
        expected = sum(1 for t in synthetic_log.traces if t.activities[-1] != "Release E")
        assert len(filtered) == expected


class TestScoreLog:
    """Test cases for scoring a reduced log against original MAEs."""

    @pytest.fixture
    def config(self) -> AppConfig:
        return AppConfig(predictor={"n_rounds": 20})

    def test_scores_each_point(self, synthetic_log: EventLog, config: AppConfig) -> None:
        """Test MAE, deviation and reduction for a reachable and an unreachable point."""
        half = synthetic_log.with_traces(synthetic_log.traces[:75])
        scores = score_log(
            "half",
            half,
            ["IV Antibiotics", "Nowhere"],
            {"IV Antibiotics": 0.0, "Nowhere": 10.0},
            synthetic_log.event_count,
            config,
        )
        reached, missing = scores
        assert reached.mae is not None
        assert reached.deviation == pytest.approx(reached.mae)
        assert missing.mae is None and missing.deviation is None
        assert reached.events == half.event_count
        assert 0 < reached.reduction_pct < 100

    def test_empty_log(self, config: AppConfig) -> None:
        """Test that an emptied log scores no MAE and full reduction."""
        (score,) = score_log("empty", EventLog(), ["A"], {"A": 1.0}, 10, config)
        assert score.mae is None
        assert score.reduction_pct == 100.0

    def test_load_synthetic_when_no_path(self) -> None:
        """Test that a config without an input path generates a log."""
        log = load_log(AppConfig(input={"synthetic_cases": 12}))
        assert len(log) == 12
