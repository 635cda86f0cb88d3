"""Tests for geodesy."""

import math
import random

import numpy as np
import pytest
from pydantic import ValidationError

from navsynth.exceptions import UndefinedBearingError
from navsynth.geo.geodesy import (
    EARTH_RADIUS_M,
    bearing,
    cardinal_of,
    egocentric_side,
    haversine_distance,
    haversine_distances,
    locate_on_polyline,
    mean_bearing,
    offset_point,
    polyline_distances,
    polyline_length,
    project_to_segment,
)
from navsynth.models import Bearing, CardinalDirection, EgocentricSide, GeoPoint


def _unit(p: GeoPoint) -> tuple[float, float, float]:
    lat, lon = math.radians(p.lat), math.radians(p.lon)
    return (math.cos(lat) * math.cos(lon), math.cos(lat) * math.sin(lon), math.sin(lat))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def oracle_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Central angle from the atan2 of cross and dot products."""
    u, v = _unit(a), _unit(b)
    return EARTH_RADIUS_M * math.atan2(math.sqrt(_dot(_cross(u, v), _cross(u, v))), _dot(u, v))


def oracle_bearing(a: GeoPoint, b: GeoPoint) -> float:
    """Bearing from the local north/east frame at `a`."""
    lat, lon = math.radians(a.lat), math.radians(a.lon)
    east = (-math.sin(lon), math.cos(lon), 0.0)
    north = (-math.sin(lat) * math.cos(lon), -math.sin(lat) * math.sin(lon), math.cos(lat))
    # direction of the great circle through a and b, at a
    u, v = _unit(a), _unit(b)
    tangent = _cross(_cross(u, v), u)
    return math.degrees(math.atan2(_dot(tangent, east), _dot(tangent, north))) % 360.0


def random_point(rng: random.Random) -> GeoPoint:
    return GeoPoint(lat=rng.uniform(-85.0, 85.0), lon=rng.uniform(-180.0, 180.0))


def angle_diff(a: float, b: float) -> float:
    d = abs(a - b) % 360.0
    return min(d, 360.0 - d)


@pytest.mark.unit
class TestGeoPoint:
    def test_rejects_out_of_range(self):
        with pytest.raises(ValidationError):
            GeoPoint(lat=91.0, lon=0.0)
        with pytest.raises(ValidationError):
            GeoPoint(lat=0.0, lon=-180.5)

    def test_lonlat_order(self):
        p = GeoPoint.from_lonlat([-73.9855, 40.7580])
        assert p.lat == 40.7580
        assert p.to_lonlat() == [-73.9855, 40.7580]

    @pytest.mark.parametrize(("raw", "expected"), [(-90.0, 270.0), (720.0, 0.0), (359.5, 359.5)])
    def test_bearing_normalized(self, raw, expected):
        assert Bearing(degrees=raw).degrees == pytest.approx(expected)


@pytest.mark.unit
class TestHaversine:
    def test_identity(self):
        p = GeoPoint(lat=10.0, lon=20.0)
        assert haversine_distance(p, p) == 0.0

    def test_quarter_circumference(self):
        d = haversine_distance(GeoPoint(lat=0, lon=0), GeoPoint(lat=0, lon=90))
        assert d == pytest.approx(math.pi / 2 * EARTH_RADIUS_M, rel=1e-12)

    def test_matches_oracle_in_manhattan(self):
        a = GeoPoint(lat=40.7580, lon=-73.9855)
        b = GeoPoint(lat=40.7484, lon=-73.9857)
        assert haversine_distance(a, b) == pytest.approx(oracle_distance(a, b), rel=1e-6)
        assert haversine_distance(a, b) == pytest.approx(1067.6, abs=1.0)

    def test_random_pairs_match_oracle_and_are_symmetric(self):
        rng = random.Random(11)
        for _ in range(1000):
            a, b = random_point(rng), random_point(rng)
            d = haversine_distance(a, b)
            assert d == pytest.approx(oracle_distance(a, b), rel=1e-6, abs=1e-6)
            assert d == pytest.approx(haversine_distance(b, a), rel=1e-12)

    def test_triangle_inequality(self):
        rng = random.Random(5)
        for _ in range(300):
            a, b, c = random_point(rng), random_point(rng), random_point(rng)
            lhs = haversine_distance(a, c)
            rhs = haversine_distance(a, b) + haversine_distance(b, c)
            assert lhs <= rhs * (1 + 1e-6) + 1e-6


@pytest.mark.unit
class TestBearing:
    def test_due_north(self):
        assert bearing(GeoPoint(lat=0, lon=0), GeoPoint(lat=1, lon=0)).degrees == pytest.approx(0.0)

    def test_due_east_on_equator(self):
        b = bearing(GeoPoint(lat=0, lon=0), GeoPoint(lat=0, lon=1))
        assert b.degrees == pytest.approx(90.0)

    def test_reverse_on_equator(self):
        a, b = GeoPoint(lat=0, lon=0), GeoPoint(lat=0, lon=5)
        assert angle_diff(bearing(a, b).degrees + 180.0, bearing(b, a).degrees) < 1e-6

    def test_random_pairs_match_oracle(self):
        rng = random.Random(3)
        for _ in range(1000):
            a, b = random_point(rng), random_point(rng)
            if haversine_distance(a, b) < 1.0 or haversine_distance(a, b) > 19_000_000:
                continue
            assert angle_diff(bearing(a, b).degrees, oracle_bearing(a, b)) < 1e-6

    def test_coincident_points_raise(self):
        p = GeoPoint(lat=10, lon=10)
        with pytest.raises(UndefinedBearingError):
            bearing(p, p)

    def test_antipodal_points_raise_value_error(self):
        with pytest.raises(ValueError, match="antipodal"):
            bearing(GeoPoint(lat=0, lon=0), GeoPoint(lat=0, lon=180))


@pytest.mark.unit
class TestCardinal:
    @pytest.mark.parametrize(
        ("degrees", "expected"),
        [
            (0.0, CardinalDirection.NORTH),
            (30.0, CardinalDirection.NORTH_EAST),
            (22.5, CardinalDirection.NORTH_EAST),
            (337.5, CardinalDirection.NORTH),
            (337.4, CardinalDirection.NORTH_WEST),
            (359.99, CardinalDirection.NORTH),
            (90.0, CardinalDirection.EAST),
            (180.0, CardinalDirection.SOUTH),
            (247.5, CardinalDirection.WEST),
            (-45.0, CardinalDirection.NORTH_WEST),
        ],
    )
    def test_sectors(self, degrees, expected):
        assert cardinal_of(degrees) is expected

    def test_periodic(self):
        rng = random.Random(1)
        for _ in range(500):
            b = rng.uniform(0, 360)
            k = rng.randint(-3, 3)
            assert cardinal_of(b) is cardinal_of(b + 360.0 * k)

    def test_every_sector_spans_45_degrees(self):
        hits = {d: 0 for d in CardinalDirection}
        for tenth in range(3600):
            hits[cardinal_of(tenth / 10)] += 1
        assert set(hits.values()) == {450}

    def test_word(self):
        assert CardinalDirection.NORTH_WEST.word == "north-west"


@pytest.mark.unit
class TestEgocentricSide:
    @pytest.mark.parametrize(
        ("path", "landmark", "expected"),
        [
            (0.0, 90.0, EgocentricSide.RIGHT),
            (90.0, 0.0, EgocentricSide.LEFT),
            (0.0, 180.0, EgocentricSide.LEFT),
            (0.0, 0.0, EgocentricSide.RIGHT),
            (350.0, 10.0, EgocentricSide.RIGHT),
        ],
    )
    def test_cases(self, path, landmark, expected):
        assert egocentric_side(path, landmark) is expected

    def test_matches_direct_delta(self):
        rng = random.Random(9)
        pairs = [(rng.uniform(0, 360), rng.uniform(0, 360)) for _ in range(1000)]
        pairs += [(a, (a + d) % 360) for a in (0.0, 45.0, 200.0) for d in (0.0, 180.0)]
        for path, landmark in pairs:
            delta = (landmark - path) % 360
            expected = EgocentricSide.RIGHT if delta < 180 else EgocentricSide.LEFT
            assert egocentric_side(path, landmark) is expected

    def test_mod_360_invariance(self):
        rng = random.Random(2)
        for _ in range(200):
            p, q, k = rng.uniform(0, 360), rng.uniform(0, 360), rng.randint(-2, 2)
            assert egocentric_side(p, q) is egocentric_side(p + 360 * k, q + 360 * k)


@pytest.mark.unit
class TestPlaneHelpers:
    def test_mean_bearing(self):
        mean = mean_bearing(Bearing(degrees=0), Bearing(degrees=90))
        assert mean is not None
        assert mean.degrees == pytest.approx(45.0)
        assert mean_bearing(Bearing(degrees=0), Bearing(degrees=180)) is None

    def test_offset_point_distance(self):
        origin = GeoPoint(lat=40.75, lon=-73.98)
        p = offset_point(origin, north_m=300.0, east_m=400.0)
        assert haversine_distance(origin, p) == pytest.approx(500.0, rel=1e-3)

    def test_projection_clamps_to_endpoints(self):
        origin = GeoPoint(lat=40.75, lon=-73.98)
        a = origin
        b = offset_point(origin, 0.0, 100.0)
        beyond = offset_point(origin, 10.0, 150.0)
        proj = project_to_segment(beyond, a, b)
        assert proj.fraction == 1.0
        assert haversine_distance(proj.foot, b) < 1e-6

        mid = project_to_segment(offset_point(origin, 20.0, 50.0), a, b)
        assert mid.fraction == pytest.approx(0.5, abs=1e-3)
        assert mid.distance == pytest.approx(20.0, rel=1e-2)

    def test_locate_on_polyline(self):
        origin = GeoPoint(lat=40.75, lon=-73.98)
        line = [origin, offset_point(origin, 0, 100), offset_point(origin, 100, 100)]
        assert polyline_length(line) == pytest.approx(200.0, rel=1e-3)
        loc = locate_on_polyline(line, offset_point(origin, 50, 110))
        assert loc.segment_index == 1
        assert loc.along == pytest.approx(150.0, rel=1e-2)
        assert loc.distance == pytest.approx(10.0, rel=1e-2)

    def test_single_point_polyline(self):
        p = GeoPoint(lat=1, lon=1)
        loc = locate_on_polyline([p], GeoPoint(lat=1, lon=1.001))
        assert loc.foot == p
        assert loc.along == 0.0


@pytest.mark.unit
class TestVectorized:
    origin = GeoPoint(lat=40.75, lon=-73.98)

    def scatter(self, rng: random.Random, n: int, spread: float) -> list[GeoPoint]:
        return [
            offset_point(self.origin, rng.uniform(-spread, spread), rng.uniform(-spread, spread))
            for _ in range(n)
        ]

    def test_haversine_distances_match_scalar(self):
        points = self.scatter(random.Random(21), 200, 3000.0)
        lats = np.array([p.lat for p in points])
        lons = np.array([p.lon for p in points])
        expected = [haversine_distance(self.origin, p) for p in points]
        assert haversine_distances(self.origin, lats, lons).tolist() == pytest.approx(
            expected, rel=1e-9
        )

    def test_polyline_distances_match_locate(self):
        rng = random.Random(22)
        for _ in range(25):
            line = self.scatter(rng, rng.randint(1, 6), 500.0)
            if len(line) > 2:
                line.insert(1, line[0])
            points = self.scatter(rng, 40, 700.0)
            lats = np.array([p.lat for p in points])
            lons = np.array([p.lon for p in points])
            expected = [locate_on_polyline(line, p).distance for p in points]
            assert polyline_distances(line, lats, lons).tolist() == pytest.approx(
                expected, rel=1e-9, abs=1e-6
            )

    def test_empty_polyline(self):
        with pytest.raises(ValueError):
            polyline_distances([], np.array([]), np.array([]))
