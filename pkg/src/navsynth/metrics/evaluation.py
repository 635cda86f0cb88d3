"""
Error-distance evaluation of goal predictions.

Errors are haversine distances between gold and predicted points. The AUC
integrates the log error over the ascending error sequence with the
trapezoidal rule and normalizes it by the log of `h_max`, so a perfect
predictor scores near 0 and a predictor missing by half the globe scores 1.
"""

from collections.abc import Sequence

import numpy as np

from navsynth.exceptions import EmptyEvaluationError
from navsynth.geo.geodesy import haversine_distance
from navsynth.logging import get_logger
from navsynth.models.metrics import CdfPoint, EvalPair, MetricsConfig, MetricsReport


logger = get_logger(__name__)


def error_distances(pairs: Sequence[EvalPair]) -> np.ndarray:
    """Haversine error of every pair, in input order."""
    return np.array([haversine_distance(p.gold, p.pred) for p in pairs], dtype=float)


def radius_key(radius: float) -> str:
    return f"acc@{radius:g}"


def accuracy_within(errors: np.ndarray, radius: float) -> float:
    """Percent of errors at most `radius` meters."""
    return 100.0 * float(np.count_nonzero(errors <= radius)) / len(errors)


def auc_score(errors: np.ndarray, epsilon: float, h_max: float) -> float | None:
    n = len(errors)
    if n < 2:
        return None
    log_errors = np.log(np.sort(errors) + epsilon)
    return float(np.trapezoid(log_errors) / (np.log(h_max) * (n - 1)))


def evaluate(pairs: Sequence[EvalPair], cfg: MetricsConfig | None = None) -> MetricsReport:
    """
    Compute accuracy, error statistics and AUC over prediction pairs.

    The median is the element at index n // 2 of the ascending errors, i.e.
    the upper median for even sizes. AUC needs at least two pairs and is
    left out otherwise.

    Raises:
        EmptyEvaluationError: no pairs given
    """
    cfg = cfg or MetricsConfig()
    if not pairs:
        raise EmptyEvaluationError("cannot evaluate zero predictions")

    errors = error_distances(pairs)
    ordered = np.sort(errors)
    n = len(ordered)

    auc = auc_score(ordered, cfg.epsilon, cfg.h_max)
    if auc is None:
        logger.warning("AUC omitted", n=n, reason="needs at least two predictions")

    accuracy = {radius_key(r): accuracy_within(ordered, r) for r in cfg.radii}
    report = MetricsReport(
        n=n,
        acc100=accuracy_within(ordered, 100.0),
        acc250=accuracy_within(ordered, 250.0),
        mae=float(ordered.mean()),
        medae=float(ordered[n // 2]),
        maxae=float(ordered[-1]),
        auc=auc,
        accuracy=accuracy,
    )
    logger.info("Evaluation complete", n=n, mae=round(report.mae, 2), auc=report.auc)
    return report


def cdf_export(
    pairs: Sequence[EvalPair], max_distance: float, steps: int
) -> list[CdfPoint]:
    """
    Cumulative percentage of errors at or below evenly spaced distances.

    The grid runs from 0 to `max_distance` inclusive with `steps` points.
    """
    if not pairs:
        raise EmptyEvaluationError("cannot build a CDF from zero predictions")
    if steps < 2:
        raise ValueError(f"steps must be at least 2, got {steps}")
    if max_distance <= 0:
        raise ValueError(f"max_distance must be positive, got {max_distance}")

    ordered = np.sort(error_distances(pairs))
    grid = np.linspace(0.0, max_distance, steps)
    counts = np.searchsorted(ordered, grid, side="right")
    pct = 100.0 * counts / len(ordered)
    return [
        CdfPoint(distance_m=float(d), cumulative_pct=float(c)) for d, c in zip(grid, pct)
    ]
