"""
Heuristic goal predictors.
"""

from navsynth.geo.geodesy import haversine_distance
from navsynth.logging import get_logger
from navsynth.mapgraph.bundle import MapBundle
from navsynth.models.geo import GeoPoint
from navsynth.models.metrics import BaselinePrediction


logger = get_logger(__name__)

DEFAULT_BASELINE_RADIUS_M = 1000.0


def landmark_baseline(
    bundle: MapBundle, start: GeoPoint, radius: float = DEFAULT_BASELINE_RADIUS_M
) -> BaselinePrediction:
    """
    Predict the centroid of the most prominent entity near the start.

    Ties on prominence go to the closer entity, then the smaller id. With no
    entity in range the start itself is returned and flagged.
    """
    best: tuple[int, float, str] | None = None
    best_point = start
    for entity in bundle.nearest_entities(start, radius):
        rank = bundle.prominence_of(entity).rank
        key = (-rank, haversine_distance(start, entity.centroid), entity.id)
        if best is None or key < best:
            best = key
            best_point = entity.centroid

    if best is None:
        logger.warning("No landmark in range, predicting start", start=str(start), radius=radius)
        return BaselinePrediction(point=start, fallback=True)
    return BaselinePrediction(point=best_point, entity_id=best[2])
