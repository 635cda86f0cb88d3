"""
Map knowledge graph: bundle loading, spatial queries, routing and prominence.
"""

from navsynth.mapgraph.bundle import MapBundle, StreetSegment
from navsynth.mapgraph.loader import (
    BundleReport,
    build_bundle,
    load_bundle,
    validate_bundle,
)
from navsynth.mapgraph.prominence import prominence
from navsynth.mapgraph.routing import (
    blocks_on,
    intersections_on,
    route_from_nodes,
    shortest_path,
    snap,
    street_continuation,
)
from navsynth.mapgraph.synthetic import SyntheticCity, build_grid_city, write_bundle


__all__ = [
    "MapBundle",
    "StreetSegment",
    "BundleReport",
    "build_bundle",
    "load_bundle",
    "validate_bundle",
    "prominence",
    "blocks_on",
    "intersections_on",
    "route_from_nodes",
    "shortest_path",
    "snap",
    "street_continuation",
    "SyntheticCity",
    "build_grid_city",
    "write_bundle",
]
