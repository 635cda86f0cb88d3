"""
Spherical geodesy on a mean-radius Earth.

All functions are pure. Distances are meters, angles are degrees.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from navsynth.exceptions import UndefinedBearingError
from navsynth.models.geo import (
    Bearing,
    CardinalDirection,
    EgocentricSide,
    GeoPoint,
)


EARTH_RADIUS_M = 6_371_000.0

# haversine term above which two points are treated as antipodal
_ANTIPODAL_HAV = 1.0 - 1e-15


def _haversine_term(a: GeoPoint, b: GeoPoint) -> float:
    lat1, lon1, lat2, lon2 = map(math.radians, (a.lat, a.lon, b.lat, b.lon))
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    h = math.sin(dlat / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2) ** 2
    return min(1.0, max(0.0, h))


def haversine_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance between two points in meters."""
    return 2.0 * EARTH_RADIUS_M * math.asin(math.sqrt(_haversine_term(a, b)))


def bearing(a: GeoPoint, b: GeoPoint) -> Bearing:
    """
    Initial great-circle bearing from `a` towards `b`.

    Raises:
        UndefinedBearingError: if the points coincide or are antipodal
    """
    h = _haversine_term(a, b)
    if h == 0.0:
        raise UndefinedBearingError(f"bearing undefined between coincident points {a}")
    if h >= _ANTIPODAL_HAV:
        raise UndefinedBearingError(f"bearing undefined between antipodal points {a}, {b}")

    lat1, lon1, lat2, lon2 = map(math.radians, (a.lat, a.lon, b.lat, b.lon))
    dlon = lon2 - lon1
    y = math.sin(dlon) * math.cos(lat2)
    x = math.cos(lat1) * math.sin(lat2) - math.sin(lat1) * math.cos(lat2) * math.cos(dlon)
    return Bearing(degrees=math.degrees(math.atan2(y, x)))


def _degrees(b: Bearing | float) -> float:
    return b.degrees if isinstance(b, Bearing) else Bearing(degrees=b).degrees


def cardinal_of(b: Bearing | float) -> CardinalDirection:
    """Bucket a bearing into one of eight 45-degree sectors centered on the compass points."""
    # boundaries belong to the clockwise-later sector
    sector = int(((_degrees(b) + 22.5) % 360.0) // 45.0)
    return CardinalDirection.from_sector(sector)


def egocentric_side(theta_path: Bearing | float, theta_landmark: Bearing | float) -> EgocentricSide:
    """RIGHT when the landmark bearing is less than 180 degrees clockwise of the path."""
    delta = (_degrees(theta_landmark) - _degrees(theta_path)) % 360.0
    return EgocentricSide.RIGHT if delta < 180.0 else EgocentricSide.LEFT


def mean_bearing(first: Bearing, second: Bearing) -> Bearing | None:
    """Direction of the sum of two unit vectors, or None when they cancel."""
    r1, r2 = math.radians(first.degrees), math.radians(second.degrees)
    east = math.sin(r1) + math.sin(r2)
    north = math.cos(r1) + math.cos(r2)
    if math.hypot(east, north) < 1e-9:
        return None
    return Bearing(degrees=math.degrees(math.atan2(east, north)))


@dataclass(frozen=True)
class SegmentProjection:
    """Closest point on a segment to a query point."""

    foot: GeoPoint
    fraction: float
    distance: float


def offset_point(origin: GeoPoint, north_m: float, east_m: float) -> GeoPoint:
    """Point displaced from `origin` in a local tangent plane."""
    dlat = math.degrees(north_m / EARTH_RADIUS_M)
    dlon = math.degrees(east_m / (EARTH_RADIUS_M * math.cos(math.radians(origin.lat))))
    return GeoPoint(lat=origin.lat + dlat, lon=origin.lon + dlon)


def _local_xy(origin: GeoPoint, p: GeoPoint) -> tuple[float, float]:
    # equirectangular frame; accurate to well under a meter over a few kilometers
    x = math.radians(p.lon - origin.lon) * EARTH_RADIUS_M * math.cos(math.radians(origin.lat))
    y = math.radians(p.lat - origin.lat) * EARTH_RADIUS_M
    return x, y


def interpolate(a: GeoPoint, b: GeoPoint, fraction: float) -> GeoPoint:
    # endpoints are returned as-is so clamped feet compare equal to them
    if fraction <= 0.0:
        return a
    if fraction >= 1.0:
        return b
    return GeoPoint(
        lat=a.lat + (b.lat - a.lat) * fraction,
        lon=a.lon + (b.lon - a.lon) * fraction,
    )


def project_to_segment(p: GeoPoint, a: GeoPoint, b: GeoPoint) -> SegmentProjection:
    """Project `p` onto segment a-b, clamping to the endpoints."""
    bx, by = _local_xy(a, b)
    px, py = _local_xy(a, p)
    length_sq = bx * bx + by * by
    if length_sq == 0.0:
        fraction = 0.0
    else:
        fraction = min(1.0, max(0.0, (px * bx + py * by) / length_sq))
    foot = interpolate(a, b, fraction)
    return SegmentProjection(foot=foot, fraction=fraction, distance=haversine_distance(p, foot))


def polyline_length(points: list[GeoPoint]) -> float:
    return math.fsum(haversine_distance(u, v) for u, v in zip(points, points[1:]))


@dataclass(frozen=True)
class PolylineLocation:
    """Where a point projects onto a polyline."""

    segment_index: int
    fraction: float
    foot: GeoPoint
    distance: float
    along: float


def locate_on_polyline(points: Sequence[GeoPoint], p: GeoPoint) -> PolylineLocation:
    """
    Closest position on a polyline to `p`.

    Zero-length segments are skipped; ties go to the earlier segment. A
    single-point polyline yields that point.
    """
    if not points:
        raise ValueError("empty polyline")
    best: PolylineLocation | None = None
    along = 0.0
    for i, (a, b) in enumerate(zip(points, points[1:])):
        seg_len = haversine_distance(a, b)
        if seg_len == 0.0:
            continue
        proj = project_to_segment(p, a, b)
        if best is None or proj.distance < best.distance:
            best = PolylineLocation(
                segment_index=i,
                fraction=proj.fraction,
                foot=proj.foot,
                distance=proj.distance,
                along=along + proj.fraction * seg_len,
            )
        along += seg_len
    if best is None:
        return PolylineLocation(
            segment_index=0,
            fraction=0.0,
            foot=points[0],
            distance=haversine_distance(p, points[0]),
            along=0.0,
        )
    return best


def _haversine_arrays(
    lat1: np.ndarray | float,
    lon1: np.ndarray | float,
    lat2: np.ndarray | float,
    lon2: np.ndarray | float,
) -> np.ndarray:
    lat1, lon1, lat2, lon2 = (np.radians(v) for v in (lat1, lon1, lat2, lon2))
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    h = np.sin(dlat / 2) ** 2 + np.cos(lat1) * np.cos(lat2) * np.sin(dlon / 2) ** 2
    return 2.0 * EARTH_RADIUS_M * np.arcsin(np.sqrt(np.clip(h, 0.0, 1.0)))


def haversine_distances(p: GeoPoint, lats: np.ndarray, lons: np.ndarray) -> np.ndarray:
    """`haversine_distance` from `p` to many points given as degree arrays."""
    return _haversine_arrays(p.lat, p.lon, np.asarray(lats, float), np.asarray(lons, float))


def _between(start: float, end: float, fraction: np.ndarray) -> np.ndarray:
    # same endpoint handling as `interpolate`
    inner = start + (end - start) * fraction
    return np.where(fraction >= 1.0, end, np.where(fraction <= 0.0, start, inner))


def polyline_distances(
    points: Sequence[GeoPoint], lats: np.ndarray, lons: np.ndarray
) -> np.ndarray:
    """
    Distance from many points to a polyline, computed the way
    `locate_on_polyline` computes it for one point.
    """
    if not points:
        raise ValueError("empty polyline")
    lats = np.asarray(lats, float)
    lons = np.asarray(lons, float)
    best = np.full(lats.shape, np.inf)
    used = False
    for a, b in zip(points, points[1:]):
        if haversine_distance(a, b) == 0.0:
            continue
        used = True
        bx, by = _local_xy(a, b)
        length_sq = bx * bx + by * by
        px = np.radians(lons - a.lon) * EARTH_RADIUS_M * math.cos(math.radians(a.lat))
        py = np.radians(lats - a.lat) * EARTH_RADIUS_M
        if length_sq == 0.0:
            fraction = np.zeros(lats.shape)
        else:
            fraction = np.clip((px * bx + py * by) / length_sq, 0.0, 1.0)
        foot_lat = _between(a.lat, b.lat, fraction)
        foot_lon = _between(a.lon, b.lon, fraction)
        best = np.minimum(best, _haversine_arrays(lats, lons, foot_lat, foot_lon))
    if not used:
        return _haversine_arrays(lats, lons, points[0].lat, points[0].lon)
    return best
