"""
Goal-prediction metrics, baselines and evaluation file I/O.
"""

from navsynth.metrics.baselines import DEFAULT_BASELINE_RADIUS_M, landmark_baseline
from navsynth.metrics.evaluation import (
    accuracy_within,
    auc_score,
    cdf_export,
    error_distances,
    evaluate,
    radius_key,
)
from navsynth.metrics.io import (
    Prediction,
    join_predictions,
    read_predictions,
    write_cdf_csv,
    write_predictions,
    write_report,
)

__all__ = [
    "evaluate",
    "cdf_export",
    "error_distances",
    "accuracy_within",
    "auc_score",
    "radius_key",
    "landmark_baseline",
    "DEFAULT_BASELINE_RADIUS_M",
    "Prediction",
    "read_predictions",
    "write_predictions",
    "join_predictions",
    "write_report",
    "write_cdf_csv",
]
