"""
Predictions, report and CDF files.
"""

import csv
import json
from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, ValidationError, field_serializer, field_validator

from navsynth.exceptions import DatasetFormatError, UnmatchedPredictionError
from navsynth.logging import get_logger
from navsynth.models.geo import GeoPoint
from navsynth.models.metrics import CdfPoint, EvalPair, MetricsReport
from navsynth.models.records import InstructionRecord


logger = get_logger(__name__)


class Prediction(BaseModel):
    """One line of a predictions file: `{"id": str, "pred": [lon, lat]}`."""

    model_config = {"frozen": True}

    id: str = Field(..., min_length=1)
    pred: GeoPoint

    @field_validator("pred", mode="before")
    @classmethod
    def parse_point(cls, v: Any) -> Any:
        return GeoPoint.lonlat_to_dict(v)

    @field_serializer("pred")
    def dump_point(self, p: GeoPoint) -> list[float]:
        return p.to_lonlat()


def read_predictions(path: str | Path) -> dict[str, GeoPoint]:
    """
    Load a predictions file keyed by record id.

    Raises:
        DatasetFormatError: a line is malformed or an id repeats
    """
    source = str(path)
    predictions: dict[str, GeoPoint] = {}
    with open(path, "rb") as f:
        for line_no, data in enumerate(f, start=1):
            try:
                line = data.decode("utf-8")
            except UnicodeDecodeError as e:
                raise DatasetFormatError(
                    f"invalid UTF-8 at byte {e.start}: {e.reason}", line_no, source
                ) from e
            if not line.strip():
                continue
            try:
                item = Prediction.model_validate(json.loads(line))
            except json.JSONDecodeError as e:
                raise DatasetFormatError(f"invalid JSON: {e.msg}", line_no, source) from e
            except ValidationError as e:
                first = e.errors()[0]
                field = ".".join(str(p) for p in first["loc"])
                raise DatasetFormatError(
                    f"invalid prediction field {field!r}: {first['msg']}", line_no, source
                ) from e
            if item.id in predictions:
                raise DatasetFormatError(f"duplicate prediction id {item.id!r}", line_no, source)
            predictions[item.id] = item.pred
    return predictions


def write_predictions(predictions: Iterable[Prediction], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for item in predictions:
            f.write(item.model_dump_json() + "\n")


def join_predictions(
    records: Iterable[InstructionRecord], predictions: Mapping[str, GeoPoint]
) -> list[EvalPair]:
    """
    Pair every prediction with the goal of the record sharing its id.

    Pairs follow dataset order. Records without a prediction are skipped.

    Raises:
        UnmatchedPredictionError: some prediction ids are not in the dataset
    """
    pairs: list[EvalPair] = []
    seen: set[str] = set()
    skipped = 0
    for record in records:
        pred = predictions.get(record.id)
        if pred is None:
            skipped += 1
            continue
        seen.add(record.id)
        pairs.append(EvalPair(gold=record.goal, pred=pred, id=record.id))

    unmatched = sorted(set(predictions) - seen)
    if unmatched:
        raise UnmatchedPredictionError(unmatched)
    if skipped:
        logger.warning("Records without prediction skipped", skipped=skipped, joined=len(pairs))
    return pairs


def write_report(report: MetricsReport, path: str | Path) -> None:
    Path(path).write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")


def write_cdf_csv(points: Iterable[CdfPoint], path: str | Path) -> None:
    """Write `distance_m,cumulative_pct` rows."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["distance_m", "cumulative_pct"])
        for point in points:
            writer.writerow([f"{point.distance_m:.3f}", f"{point.cumulative_pct:.4f}"])
