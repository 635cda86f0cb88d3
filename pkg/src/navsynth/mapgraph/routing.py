"""
Routing on the street graph: snapping, shortest paths, intersections and
blocks, and the continuation of a street past the end of a route.
"""

import networkx as nx

from navsynth.exceptions import DisconnectedError, NoSnapError, UndefinedBearingError
from navsynth.geo.geodesy import bearing, polyline_length
from navsynth.mapgraph.bundle import MapBundle
from navsynth.models.geo import GeoPoint
from navsynth.models.mapdata import Route


DEFAULT_SNAP_TOLERANCE_M = 500.0


def snap(bundle: MapBundle, p: GeoPoint, tolerance: float = DEFAULT_SNAP_TOLERANCE_M) -> str:
    """
    Nearest street node within `tolerance` meters of `p`.

    Raises:
        NoSnapError: no node is close enough
    """
    nearest = bundle.nearest_node(p)
    if nearest is None:
        raise NoSnapError(f"no street nodes to snap {p} to")
    node_id, distance = nearest
    if distance > tolerance:
        raise NoSnapError(
            f"nearest street node to {p} is {distance:.1f} m away (tolerance {tolerance:.0f} m)"
        )
    return node_id


def route_from_nodes(bundle: MapBundle, nodes: list[str]) -> Route:
    polyline = [bundle.node_point(n) for n in nodes]
    streets = [bundle.street_of(u, v) for u, v in zip(nodes, nodes[1:])]
    return Route(
        nodes=tuple(nodes),
        polyline=tuple(polyline),
        streets=tuple(streets),
        total_length=polyline_length(polyline),
        start_snap=polyline[0],
        end_snap=polyline[-1],
    )


def shortest_path(
    bundle: MapBundle,
    a: GeoPoint,
    b: GeoPoint,
    snap_tolerance: float = DEFAULT_SNAP_TOLERANCE_M,
) -> Route:
    """
    Shortest route by edge length between the nodes nearest to `a` and `b`.

    Raises:
        NoSnapError: either point is too far from the graph
        DisconnectedError: the snapped nodes are in different components
    """
    source = snap(bundle, a, snap_tolerance)
    target = snap(bundle, b, snap_tolerance)
    if source == target:
        return route_from_nodes(bundle, [source])
    try:
        nodes = nx.dijkstra_path(bundle.graph, source, target, weight="length")
    except nx.NetworkXNoPath as e:
        raise DisconnectedError(f"no path between nodes {source} and {target}") from e
    return route_from_nodes(bundle, list(nodes))


def intersections_on(bundle: MapBundle, route: Route) -> list[str]:
    """Interior route nodes of degree >= 3, in traversal order."""
    return [n for n in route.nodes[1:-1] if bundle.degree(n) >= 3]


def blocks_on(bundle: MapBundle, route: Route) -> int:
    """Route segments delimited by intersections; 0 for a single-node route."""
    if route.is_single_node:
        return 0
    return len(intersections_on(bundle, route)) + 1


def _turn(bundle: MapBundle, prev: str, node: str, nxt: str) -> float:
    try:
        incoming = bearing(bundle.node_point(prev), bundle.node_point(node)).degrees
        outgoing = bearing(bundle.node_point(node), bundle.node_point(nxt)).degrees
    except UndefinedBearingError:
        return 180.0
    diff = abs(outgoing - incoming) % 360.0
    return min(diff, 360.0 - diff)


def street_continuation(bundle: MapBundle, route: Route, max_distance: float) -> list[str]:
    """
    Walk on along the route's final street past its last node.

    At every node the walk takes the unvisited neighbor on the same street
    with the smallest turn, ties by node id, and stops once `max_distance`
    meters are covered. The returned node list starts at the route's last
    node; it has a single element when the street does not continue.
    """
    if len(route.nodes) < 2:
        return list(route.nodes)
    street = route.streets[-1] if route.streets else None
    if street is None:
        return [route.nodes[-1]]

    visited = set(route.nodes)
    path = [route.nodes[-1]]
    prev, node = route.nodes[-2], route.nodes[-1]
    covered = 0.0
    while covered < max_distance:
        options = [
            (_turn(bundle, prev, node, nbr), nbr)
            for nbr in bundle.graph.neighbors(node)
            if nbr not in visited and bundle.street_of(node, nbr) == street
        ]
        if not options:
            break
        _, nxt = min(options)
        covered += bundle.graph.edges[node, nxt]["length"]
        visited.add(nxt)
        path.append(nxt)
        prev, node = node, nxt
    return path
