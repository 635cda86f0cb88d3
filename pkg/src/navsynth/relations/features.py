"""
Spatial features of a sampled path: cardinal directions, egocentric sides,
intersection and block counts, and the goal's position on its block.
"""

from collections.abc import Sequence

from navsynth.config import SamplingSettings
from navsynth.exceptions import DegenerateRouteError, UndefinedBearingError
from navsynth.geo.geodesy import (
    bearing,
    cardinal_of,
    egocentric_side,
    haversine_distance,
    locate_on_polyline,
    project_to_segment,
)
from navsynth.logging import get_logger
from navsynth.mapgraph.bundle import MapBundle
from navsynth.mapgraph.routing import blocks_on, intersections_on
from navsynth.models.features import SpatialFeatures
from navsynth.models.geo import CardinalDirection, EgocentricSide, GeoPoint
from navsynth.models.sampling import LandmarkSet, PathSample
from navsynth.relations.blocks import corner_label, goal_block


logger = get_logger(__name__)

# landmarks closer than this to the path have no side
ON_LINE_TOLERANCE_M = 0.5


def side_of_path(polyline: Sequence[GeoPoint], point: GeoPoint) -> EgocentricSide | None:
    """
    Side of the path a point lies on.

    The path direction is the bearing of the nearest segment; the landmark
    direction is the bearing from the closest point on that segment towards
    the point. Returns None for points on the line.
    """
    located = locate_on_polyline(polyline, point)
    if located.distance < ON_LINE_TOLERANCE_M or len(polyline) < 2:
        return None
    a, b = polyline[located.segment_index], polyline[located.segment_index + 1]
    try:
        theta_path = bearing(a, b)
        theta_landmark = bearing(located.foot, point)
    except UndefinedBearingError:
        return None
    return egocentric_side(theta_path, theta_landmark)


def goal_side_of(polyline: Sequence[GeoPoint], goal: GeoPoint) -> EgocentricSide | None:
    """Side of the last non-degenerate route segment the goal lies on."""
    for a, b in reversed(list(zip(polyline, polyline[1:]))):
        if haversine_distance(a, b) == 0.0:
            continue
        foot = project_to_segment(goal, a, b)
        if foot.distance < ON_LINE_TOLERANCE_M:
            return None
        try:
            return egocentric_side(bearing(a, b), bearing(foot.foot, goal))
        except UndefinedBearingError:
            return None
    return None


def pivot_directions(landmarks: LandmarkSet, goal: GeoPoint) -> dict[str, CardinalDirection]:
    """Cardinal direction from each landmark to the goal, keyed by landmark key."""
    directions: dict[str, CardinalDirection] = {}
    for item in landmarks.all_landmarks():
        try:
            directions[item.key] = cardinal_of(bearing(item.centroid, goal))
        except UndefinedBearingError:
            logger.debug("No direction from landmark to goal", landmark=item.key)
    return directions


def compute_features(
    bundle: MapBundle,
    sample: PathSample,
    landmarks: LandmarkSet,
    settings: SamplingSettings | None = None,
) -> SpatialFeatures:
    """
    Compute all spatial relations of a path sample.

    Raises:
        DegenerateRouteError: the route is a single node or has zero length
    """
    route = sample.route
    if route.is_single_node or route.total_length <= 0.0:
        raise DegenerateRouteError(
            f"route from {sample.start.id} to {sample.goal.id} has zero length"
        )
    goal = sample.goal.centroid
    polyline = route.polyline

    ego_side: dict[str, EgocentricSide] = {}
    for item in landmarks.all_landmarks():
        side = side_of_path(polyline, item.centroid)
        if side is not None:
            ego_side[item.key] = side

    n_intersections = len(intersections_on(bundle, route))
    block = goal_block(bundle, route, goal, settings)

    features = SpatialFeatures(
        cardinal_start_to_goal=cardinal_of(bearing(sample.start.centroid, goal)),
        cardinal_pivot_to_goal=pivot_directions(landmarks, goal),
        ego_side=ego_side,
        goal_side=goal_side_of(polyline, goal),
        n_intersections=n_intersections,
        n_blocks=blocks_on(bundle, route),
        block_fraction=block.fraction,
        block_position_ego=block.position,
        block_position_allo=corner_label(block, goal),
    )
    logger.debug(
        "Features computed",
        cardinal=features.cardinal_start_to_goal.value,
        intersections=n_intersections,
        block_position=block.position.value,
    )
    return features
