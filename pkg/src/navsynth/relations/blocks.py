"""
Where the goal sits on its block.

The goal's block is the chain of street edges containing the final route
edge, extended through degree-2 nodes until an intersection or dead end is
reached on either side.
"""

from dataclasses import dataclass

from navsynth.config import SamplingSettings
from navsynth.exceptions import DegenerateRouteError, UndefinedBearingError
from navsynth.geo.geodesy import (
    bearing,
    cardinal_of,
    haversine_distance,
    locate_on_polyline,
    mean_bearing,
    polyline_length,
)
from navsynth.mapgraph.bundle import MapBundle
from navsynth.models.geo import Bearing, BlockPosition, CardinalDirection, GeoPoint
from navsynth.models.mapdata import Route


# directions between points closer than this are not trusted
MIN_DIRECTION_DISTANCE_M = 0.01


@dataclass(frozen=True)
class GoalBlock:
    """The goal's block, oriented in the direction of travel."""

    nodes: tuple[str, ...]
    polyline: tuple[GeoPoint, ...]
    length: float
    fraction: float
    foot: GeoPoint
    position: BlockPosition

    @property
    def near_end(self) -> GeoPoint:
        return self.polyline[0]

    @property
    def far_end(self) -> GeoPoint:
        return self.polyline[-1]


def _extend(bundle: MapBundle, prev: str, node: str, stop: set[str]) -> list[str]:
    """Follow degree-2 nodes away from `prev`; the returned chain excludes `node`."""
    chain: list[str] = []
    seen = set(stop)
    while bundle.degree(node) == 2:
        nxt = next(n for n in sorted(bundle.graph.neighbors(node)) if n != prev)
        if nxt in seen:
            break
        chain.append(nxt)
        seen.add(nxt)
        prev, node = node, nxt
    return chain


def block_nodes(bundle: MapBundle, route: Route) -> list[str]:
    """Nodes of the block holding the last route edge, in travel order."""
    if len(route.nodes) < 2:
        raise DegenerateRouteError("a single-node route has no final edge")
    u, v = route.nodes[-2], route.nodes[-1]
    backward = _extend(bundle, v, u, {u, v})
    forward = _extend(bundle, u, v, {u, v, *backward})
    return [*reversed(backward), u, v, *forward]


def classify_fraction(fraction: float, settings: SamplingSettings | None = None) -> BlockPosition:
    """Thresholds partition [0, 1]: below near is NEAR_CORNER, above far is FAR_CORNER."""
    settings = settings or SamplingSettings()
    if fraction < settings.block_near_fraction:
        return BlockPosition.NEAR_CORNER
    if fraction > settings.block_far_fraction:
        return BlockPosition.FAR_CORNER
    return BlockPosition.MIDDLE


def goal_block(
    bundle: MapBundle,
    route: Route,
    goal: GeoPoint,
    settings: SamplingSettings | None = None,
) -> GoalBlock:
    """
    Locate the goal on its block.

    Raises:
        DegenerateRouteError: the route has no edge or its block has no length
    """
    nodes = block_nodes(bundle, route)
    polyline = [bundle.node_point(n) for n in nodes]
    located = locate_on_polyline(polyline, goal)
    total = polyline_length(polyline)
    if total <= 0.0:
        raise DegenerateRouteError(f"block {nodes[0]}..{nodes[-1]} has zero length")
    fraction = min(1.0, max(0.0, located.along / total))
    return GoalBlock(
        nodes=tuple(nodes),
        polyline=tuple(polyline),
        length=total,
        fraction=fraction,
        foot=located.foot,
        position=classify_fraction(fraction, settings),
    )


def _block_bearing(block: GoalBlock, towards_far: bool) -> Bearing | None:
    first, last = block.polyline[0], block.polyline[-1]
    try:
        return bearing(first, last) if towards_far else bearing(last, first)
    except UndefinedBearingError:
        return None


def corner_label(block: GoalBlock, goal: GeoPoint) -> CardinalDirection | None:
    """
    Allocentric label of the corner the goal is at, or None mid-block.

    Combines the direction along the block towards the nearer end with the
    direction across the street towards the goal. When the two cancel or the
    goal is on the street line, the along-block direction alone is used.
    """
    if block.position is BlockPosition.MIDDLE:
        return None
    towards_far = block.position is BlockPosition.FAR_CORNER
    corner = block.far_end if towards_far else block.near_end
    along: Bearing | None
    if haversine_distance(block.foot, corner) >= MIN_DIRECTION_DISTANCE_M:
        along = bearing(block.foot, corner)
    else:
        along = _block_bearing(block, towards_far)
    if along is None:
        raise DegenerateRouteError("goal block has no direction")
    if haversine_distance(block.foot, goal) < MIN_DIRECTION_DISTANCE_M:
        return cardinal_of(along)
    across = bearing(block.foot, goal)
    combined = mean_bearing(along, across)
    return cardinal_of(combined if combined is not None else along)
