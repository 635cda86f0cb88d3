"""Tests for error-distance metrics, CDF export, baselines and prediction files."""

import json
import math
import random

import numpy as np
import pytest

from conftest import ORIGIN
from navsynth.exceptions import (
    DatasetFormatError,
    EmptyEvaluationError,
    UnmatchedPredictionError,
)
from navsynth.geo.geodesy import haversine_distance, offset_point
from navsynth.metrics import (
    Prediction,
    auc_score,
    cdf_export,
    evaluate,
    join_predictions,
    landmark_baseline,
    read_predictions,
    write_cdf_csv,
    write_predictions,
    write_report,
)
from navsynth.models import EvalPair, GenerationMode, InstructionRecord, MetricsConfig


H_MAX = 20_037_000.0
EPSILON = 1e-5


def pairs_with_errors(errors: list[float]) -> list[EvalPair]:
    return [
        EvalPair(gold=ORIGIN, pred=offset_point(ORIGIN, e, 0.0), id=f"p{i}")
        for i, e in enumerate(errors)
    ]


def dataset_record(record_id: str, goal: list[float]) -> InstructionRecord:
    return InstructionRecord(
        id=record_id,
        mode=GenerationMode.DUMMY,
        instruction="Meet me here.",
        start=goal,
        goal=goal,
        seed=0,
    )


@pytest.mark.unit
class TestAuc:
    @pytest.mark.parametrize("c", [1.0, 776.0, H_MAX])
    def test_constant_error_closed_form(self, c):
        errors = np.full(10, c)
        expected = math.log(c + EPSILON) / math.log(H_MAX)
        assert auc_score(errors, EPSILON, H_MAX) == pytest.approx(expected, rel=1e-12)

    def test_known_value(self):
        assert auc_score(np.full(5, 776.0), EPSILON, H_MAX) == pytest.approx(0.396, abs=1e-3)

    def test_perfect_and_worst(self):
        assert auc_score(np.zeros(4), EPSILON, H_MAX) < 0
        assert auc_score(np.full(4, H_MAX), EPSILON, H_MAX) == pytest.approx(1.0, abs=1e-9)

    def test_needs_two_errors(self):
        assert auc_score(np.array([5.0]), EPSILON, H_MAX) is None

    def test_trapezoid_by_hand(self):
        errors = np.array([300.0, 10.0, 40.0])
        logs = [math.log(e + EPSILON) for e in sorted(errors)]
        trapezoid = (logs[0] + logs[1]) / 2 + (logs[1] + logs[2]) / 2
        expected = trapezoid / (math.log(H_MAX) * 2)
        assert auc_score(errors, EPSILON, H_MAX) == pytest.approx(expected, rel=1e-12)


@pytest.mark.unit
class TestEvaluate:
    def test_error_statistics(self):
        report = evaluate(pairs_with_errors([40.0, 10.0, 30.0, 20.0]))
        assert report.n == 4
        assert report.medae == pytest.approx(30.0, abs=1e-6)
        assert report.mae == pytest.approx(25.0, abs=1e-6)
        assert report.maxae == pytest.approx(40.0, abs=1e-6)
        assert report.acc100 == 100.0

    def test_accuracy(self):
        cfg = MetricsConfig(radii=[100.0, 250.0, 300.0])
        report = evaluate(pairs_with_errors([50.0, 150.0, 299.0]), cfg)
        assert report.acc100 == pytest.approx(100 / 3)
        assert report.acc250 == pytest.approx(200 / 3)
        assert report.accuracy == {
            "acc@100": pytest.approx(100 / 3),
            "acc@250": pytest.approx(200 / 3),
            "acc@300": 100.0,
        }

    def test_radius_is_inclusive(self):
        pairs = [EvalPair(gold=ORIGIN, pred=ORIGIN)] * 3
        report = evaluate(pairs, MetricsConfig(radii=[0.0]))
        assert report.accuracy["acc@0"] == 100.0
        assert report.mae == 0.0

    def test_single_pair_omits_auc(self):
        report = evaluate(pairs_with_errors([12.0]))
        assert report.auc is None
        assert dict(report.as_rows())["auc"] == "n/a"

    def test_empty(self):
        with pytest.raises(EmptyEvaluationError):
            evaluate([])

    def test_negative_radius_rejected(self):
        with pytest.raises(ValueError):
            MetricsConfig(radii=[-1.0])

    def test_matches_brute_force(self):
        rng = random.Random(8)
        pairs = [
            EvalPair(
                gold=offset_point(ORIGIN, rng.uniform(-3e3, 3e3), rng.uniform(-3e3, 3e3)),
                pred=offset_point(ORIGIN, rng.uniform(-3e3, 3e3), rng.uniform(-3e3, 3e3)),
            )
            for _ in range(200)
        ]
        errors = sorted(haversine_distance(p.gold, p.pred) for p in pairs)
        report = evaluate(pairs)
        assert report.mae == pytest.approx(sum(errors) / len(errors))
        assert report.medae == errors[len(errors) // 2]
        assert report.acc250 == pytest.approx(100 * sum(e <= 250 for e in errors) / 200)


@pytest.mark.unit
class TestCdf:
    def test_grid_and_counts(self):
        points = cdf_export(pairs_with_errors([0.0, 40.0, 90.0, 140.0]), 200.0, 5)
        assert [p.distance_m for p in points] == [0.0, 50.0, 100.0, 150.0, 200.0]
        assert [p.cumulative_pct for p in points] == pytest.approx(
            [25.0, 50.0, 75.0, 100.0, 100.0], abs=1e-6
        )

    def test_matches_brute_force(self):
        rng = random.Random(2)
        errors = [rng.uniform(0, 500) for _ in range(100)]
        points = cdf_export(pairs_with_errors(errors), 400.0, 41)
        actual = [haversine_distance(ORIGIN, offset_point(ORIGIN, e, 0.0)) for e in errors]
        for point in points:
            below = sum(e <= point.distance_m for e in actual)
            assert point.cumulative_pct == pytest.approx(100.0 * below / 100)

    @pytest.mark.parametrize("max_distance,steps", [(100.0, 1), (0.0, 10)])
    def test_bad_grid(self, max_distance, steps):
        with pytest.raises(ValueError):
            cdf_export(pairs_with_errors([1.0]), max_distance, steps)

    def test_empty(self):
        with pytest.raises(EmptyEvaluationError):
            cdf_export([], 100.0, 10)

    def test_csv(self, tmp_path):
        path = tmp_path / "cdf.csv"
        write_cdf_csv(cdf_export(pairs_with_errors([5.0, 30.0]), 20.0, 3), path)
        assert path.read_text().splitlines() == [
            "distance_m,cumulative_pct",
            "0.000,0.0000",
            "10.000,50.0000",
            "20.000,50.0000",
        ]


@pytest.mark.unit
class TestBaseline:
    def test_prefers_prominence(self, toy_bundle):
        prediction = landmark_baseline(toy_bundle, ORIGIN, 1000.0)
        assert prediction.entity_id == "tower-1"
        assert prediction.point == toy_bundle.entities["tower-1"].centroid
        assert not prediction.fallback

    def test_ties_go_to_closer_entity(self, toy_bundle):
        start = toy_bundle.entities["bakery-2"].centroid
        prediction = landmark_baseline(toy_bundle, start, 30.0)
        assert prediction.entity_id == "bakery-2"

    def test_fallback(self, toy_bundle):
        far = offset_point(ORIGIN, 5000.0, 0.0)
        prediction = landmark_baseline(toy_bundle, far, 100.0)
        assert prediction.fallback
        assert prediction.point == far
        assert prediction.entity_id is None

    def test_matches_brute_force(self, grid_bundle):
        rng = random.Random(17)
        entities = list(grid_bundle.entities.values())
        for _ in range(30):
            start = offset_point(ORIGIN, rng.uniform(0, 1000), rng.uniform(0, 1000))
            in_range = [
                e for e in entities if haversine_distance(start, e.centroid) <= 300.0
            ]
            prediction = landmark_baseline(grid_bundle, start, 300.0)
            if not in_range:
                assert prediction.fallback
                continue
            best = min(
                in_range,
                key=lambda e: (
                    -grid_bundle.prominence_of(e).rank,
                    haversine_distance(start, e.centroid),
                    e.id,
                ),
            )
            assert prediction.entity_id == best.id


@pytest.mark.unit
class TestPredictionFiles:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "pred.jsonl"
        write_predictions([Prediction(id="a", pred=ORIGIN)], path)
        assert json.loads(path.read_text()) == {"id": "a", "pred": [ORIGIN.lon, ORIGIN.lat]}
        assert read_predictions(path) == {"a": ORIGIN}

    @pytest.mark.parametrize(
        "lines,line_no",
        [
            (['{"id": "a", "pred": [1, 2]}', "{oops"], 2),
            (['{"id": "a", "pred": [1]}'], 1),
            (['{"id": "a", "pred": [1, 2]}', "", '{"id": "a", "pred": [3, 4]}'], 3),
            (['{"pred": [1, 2]}'], 1),
        ],
    )
    def test_malformed(self, tmp_path, lines, line_no):
        path = tmp_path / "pred.jsonl"
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(DatasetFormatError) as exc:
            read_predictions(path)
        assert exc.value.line == line_no

    def test_invalid_utf8_line(self, tmp_path):
        path = tmp_path / "pred.jsonl"
        path.write_bytes(b'{"id": "a", "pred": [1, 2]}\n{"id": "\xff", "pred": [3, 4]}\n')
        with pytest.raises(DatasetFormatError) as exc:
            read_predictions(path)
        assert exc.value.line == 2
        assert str(exc.value).startswith(f"{path}:2: invalid UTF-8")

    def test_join_follows_dataset_order(self):
        records = [dataset_record(rid, [-73.98, 40.75]) for rid in ("r2", "r0", "r1")]
        predictions = {"r0": ORIGIN, "r2": offset_point(ORIGIN, 10.0, 0.0)}
        pairs = join_predictions(records, predictions)
        assert [p.id for p in pairs] == ["r2", "r0"]
        assert pairs[0].gold == records[0].goal

    def test_join_rejects_unknown_ids(self):
        records = [dataset_record("r0", [-73.98, 40.75])]
        with pytest.raises(UnmatchedPredictionError) as exc:
            join_predictions(records, {"r0": ORIGIN, "zz": ORIGIN, "aa": ORIGIN})
        assert exc.value.ids == ["aa", "zz"]

    def test_report_json(self, tmp_path):
        path = tmp_path / "report.json"
        write_report(evaluate(pairs_with_errors([10.0, 20.0])), path)
        data = json.loads(path.read_text())
        assert data["n"] == 2
        assert data["acc100"] == 100.0
        assert set(data["accuracy"]) == {"acc@100", "acc@250"}
