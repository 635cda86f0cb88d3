"""
Geodesic math: distances, bearings, cardinal sectors and egocentric sides.
"""

from navsynth.geo.geodesy import (
    EARTH_RADIUS_M,
    PolylineLocation,
    SegmentProjection,
    bearing,
    cardinal_of,
    egocentric_side,
    haversine_distance,
    haversine_distances,
    interpolate,
    locate_on_polyline,
    mean_bearing,
    offset_point,
    polyline_distances,
    polyline_length,
    project_to_segment,
)


__all__ = [
    "EARTH_RADIUS_M",
    "PolylineLocation",
    "SegmentProjection",
    "bearing",
    "cardinal_of",
    "egocentric_side",
    "haversine_distance",
    "haversine_distances",
    "interpolate",
    "locate_on_polyline",
    "mean_bearing",
    "offset_point",
    "polyline_distances",
    "polyline_length",
    "project_to_segment",
]
