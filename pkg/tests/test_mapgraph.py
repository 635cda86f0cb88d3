"""Tests for bundle loading, spatial queries, routing and prominence."""

import json
import random

import networkx as nx
import pytest

from conftest import (
    ORIGIN,
    lonlat,
    point_entity,
    toy_entity_records,
    toy_street_records,
    write_jsonl,
)
from navsynth.exceptions import (
    BundleParseError,
    BundleValidationError,
    DisconnectedError,
    NoSnapError,
)
from navsynth.geo.geodesy import haversine_distance, offset_point
from navsynth.mapgraph import (
    blocks_on,
    build_bundle,
    build_grid_city,
    intersections_on,
    load_bundle,
    prominence,
    shortest_path,
    street_continuation,
    validate_bundle,
)
from navsynth.models import Entity, GeoPoint, ProminenceLevel


def entity(tags: dict[str, str]) -> Entity:
    return Entity.model_validate(point_entity("x", 0.0, 0.0, tags))


def random_bundle(seed: int, n_entities: int = 0, n_nodes: int = 0, extra_edges: int = 0):
    rng = random.Random(seed)
    entities = [
        point_entity(f"e{i:03d}", rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3), {"shop": "x"})
        for i in range(n_entities)
    ]
    streets: list[dict] = []
    for i in range(n_nodes):
        coord = lonlat(rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3))
        streets.append({"type": "node", "id": f"n{i:03d}", "coord": coord})
    pairs = set()
    for i in range(1, n_nodes):
        pairs.add((rng.randrange(i), i))
    while len(pairs) < n_nodes - 1 + extra_edges:
        u, v = rng.sample(range(n_nodes), 2)
        pairs.add((min(u, v), max(u, v)))
    streets += [{"type": "edge", "u": f"n{u:03d}", "v": f"n{v:03d}"} for u, v in sorted(pairs)]
    report = build_bundle(enumerate(entities, 1), enumerate(streets, 1))
    assert report.bundle is not None
    return report.bundle


@pytest.mark.unit
class TestLoading:
    def test_toy_counts(self, toy_files):
        bundle = load_bundle(*toy_files)
        assert len(bundle.entities) == 8
        assert bundle.node_count == 7
        assert bundle.edge_count == 6

    def test_missing_id_names_line_and_field(self, tmp_path):
        records = toy_entity_records()
        del records[1]["id"]
        entities = write_jsonl(tmp_path / "entities.jsonl", records)
        streets = write_jsonl(tmp_path / "streets.jsonl", toy_street_records())
        with pytest.raises(BundleParseError) as info:
            load_bundle(entities, streets)
        assert info.value.line == 2
        assert info.value.field == "id"

    def test_invalid_json_line(self, tmp_path):
        entities = tmp_path / "entities.jsonl"
        entities.write_text(json.dumps(toy_entity_records()[0]) + "\n{not json\n", encoding="utf-8")
        streets = write_jsonl(tmp_path / "streets.jsonl", toy_street_records())
        report = validate_bundle(entities, streets)
        assert not report.is_clean
        assert [(d.code, d.line) for d in report.errors] == [("invalid_json", 2)]

    def test_invalid_utf8_line(self, tmp_path):
        first, second = (json.dumps(r).encode() for r in toy_entity_records()[:2])
        entities = tmp_path / "entities.jsonl"
        entities.write_bytes(first + b"\n" + second.replace(b"a", b"\xff", 1) + b"\n")
        streets = write_jsonl(tmp_path / "streets.jsonl", toy_street_records())
        report = validate_bundle(entities, streets)
        [error] = [d for d in report.errors if d.code == "invalid_encoding"]
        assert (error.file, error.line) == (str(entities), 2)
        assert "UTF-8" in error.message

    def test_invalid_utf8_raises_parse_error(self, tmp_path):
        entities = tmp_path / "entities.jsonl"
        entities.write_bytes(b'{"id": "\xc3("}\n')
        streets = write_jsonl(tmp_path / "streets.jsonl", toy_street_records())
        with pytest.raises(BundleParseError) as info:
            load_bundle(entities, streets)
        assert info.value.line == 1

    def test_open_ring_rejected(self, tmp_path):
        records = toy_entity_records()
        park = records[-1]
        park["geometry"]["coords"] = park["geometry"]["coords"][:-1]
        entities = write_jsonl(tmp_path / "entities.jsonl", records)
        streets = write_jsonl(tmp_path / "streets.jsonl", toy_street_records())
        with pytest.raises(BundleValidationError) as info:
            load_bundle(entities, streets)
        assert "open_ring" in {d.code for d in info.value.diagnostics}

    def test_edge_length_mismatch(self):
        streets = toy_street_records()
        coords = {r["id"]: r["coord"] for r in streets if r["type"] == "node"}
        true_length = haversine_distance(
            GeoPoint.from_lonlat(coords["m1"]), GeoPoint.from_lonlat(coords["o-north"])
        )
        streets.append({"type": "edge", "u": "m1", "v": "o-north", "length": true_length * 1.05})
        report = build_bundle(enumerate(toy_entity_records(), 1), enumerate(streets, 1))
        mismatches = [d for d in report.diagnostics if d.code == "edge_length_mismatch"]
        assert len(mismatches) == 1
        assert mismatches[0].details["computed_m"] == pytest.approx(true_length)
        assert report.bundle is None

    def test_stored_length_within_tolerance_accepted(self):
        streets = toy_street_records()
        for record in streets:
            if record["type"] == "edge" and record["u"] == "m0":
                record["length"] = 100.3
        report = build_bundle(enumerate(toy_entity_records(), 1), enumerate(streets, 1))
        assert report.is_clean

    def test_self_loop_and_unknown_node(self):
        streets = toy_street_records() + [
            {"type": "edge", "u": "m1", "v": "m1"},
            {"type": "edge", "u": "m1", "v": "ghost"},
        ]
        report = build_bundle(enumerate(toy_entity_records(), 1), enumerate(streets, 1))
        assert {d.code for d in report.errors} == {"self_loop", "unknown_node"}

    def test_disconnected_graph_is_a_warning(self):
        streets = toy_street_records() + [
            {"type": "node", "id": "far-a", "coord": lonlat(5000, 5000)},
            {"type": "node", "id": "far-b", "coord": lonlat(5000, 5100)},
            {"type": "edge", "u": "far-a", "v": "far-b"},
        ]
        report = build_bundle(enumerate(toy_entity_records(), 1), enumerate(streets, 1))
        assert report.is_clean
        assert "disconnected_graph" in {d.code for d in report.diagnostics}


@pytest.mark.unit
class TestEntity:
    def test_point_extent_is_zero(self, toy_bundle):
        assert toy_bundle.entity("cafe-1").extent_radius == 0.0

    def test_polygon_centroid_and_extent(self, toy_bundle):
        park = toy_bundle.entity("park-1")
        center = offset_point(ORIGIN, -150.0, 200.0)
        assert haversine_distance(park.centroid, center) < 1.0
        assert park.extent_radius == pytest.approx((180.0**2 + 30.0**2) ** 0.5, rel=1e-2)

    def test_blank_name_is_none(self):
        e = Entity.model_validate(point_entity("x", 0, 0, {"shop": "books"}, name="  "))
        assert e.name is None


@pytest.mark.unit
class TestNearestEntities:
    def test_tiny_radius_is_empty(self, toy_bundle):
        p = offset_point(ORIGIN, 500.0, 500.0)
        assert toy_bundle.nearest_entities(p, 0.001) == []

    def test_all_entities_sorted_by_distance(self, toy_bundle):
        found = toy_bundle.nearest_entities(ORIGIN, 10_000)
        assert len(found) == 8
        distances = [haversine_distance(ORIGIN, e.centroid) for e in found]
        assert distances == sorted(distances)
        assert found[0].id == "cafe-1"

    def test_predicate_filters(self, toy_bundle):
        found = toy_bundle.nearest_entities(ORIGIN, 10_000, lambda e: "shop" in e.tags)
        assert {e.id for e in found} == {"books-1", "bakery-1", "bakery-2"}

    def test_radius_must_be_positive(self, toy_bundle):
        with pytest.raises(ValueError):
            toy_bundle.nearest_entities(ORIGIN, 0)

    def test_matches_linear_scan(self):
        bundle = random_bundle(seed=4, n_entities=200, n_nodes=2)
        rng = random.Random(8)
        for _ in range(300):
            p = offset_point(ORIGIN, rng.uniform(-1200, 1200), rng.uniform(-1200, 1200))
            radius = rng.uniform(1.0, 800.0)
            expected = sorted(
                (haversine_distance(p, e.centroid), e.id)
                for e in bundle.entities.values()
                if haversine_distance(p, e.centroid) <= radius
            )
            assert [e.id for e in bundle.nearest_entities(p, radius)] == [i for _, i in expected]

    def test_band_matches_linear_scan(self):
        bundle = random_bundle(seed=5, n_entities=300, n_nodes=2)
        entities = bundle.entity_list
        rng = random.Random(9)
        for _ in range(100):
            p = offset_point(ORIGIN, rng.uniform(-1200, 1200), rng.uniform(-1200, 1200))
            low = rng.uniform(0.0, 400.0)
            high = low + rng.uniform(1.0, 800.0)
            expected = sorted(
                (haversine_distance(p, e.centroid), e.id)
                for e in entities
                if low <= haversine_distance(p, e.centroid) <= high
            )
            idx, distances = bundle.entities_within(p, high, min_radius=low)
            assert [entities[i].id for i in idx.tolist()] == [i for _, i in expected]
            assert distances.tolist() == pytest.approx([d for d, _ in expected], rel=1e-9)

    def test_candidates_cover_the_disc(self):
        bundle = random_bundle(seed=6, n_entities=200, n_nodes=2)
        p = offset_point(ORIGIN, 100.0, -50.0)
        inside = {
            i for i, e in enumerate(bundle.entity_list) if haversine_distance(p, e.centroid) <= 400
        }
        assert inside <= set(bundle.candidate_indices(p, 400.0).tolist())

    def test_entity_index(self, toy_bundle):
        assert [e.id for e in toy_bundle.entity_list] == sorted(toy_bundle.entities)
        for i, e in enumerate(toy_bundle.entity_list):
            assert toy_bundle.entity_index(e.id) == i
        assert toy_bundle.entity_index("nope") is None
        lats, _ = toy_bundle.entity_coords
        assert lats[0] == toy_bundle.entity_list[0].centroid.lat


@pytest.mark.unit
class TestRouting:
    def point(self, bundle, node_id):
        return bundle.node_point(node_id)

    def route(self, bundle, u, v):
        return shortest_path(bundle, bundle.node_point(u), bundle.node_point(v))

    def test_same_node_gives_single_node_route(self, toy_bundle):
        p = self.point(toy_bundle, "m1")
        route = shortest_path(toy_bundle, p, offset_point(p, 5.0, 5.0))
        assert route.nodes == ("m1",)
        assert route.total_length == 0.0
        assert blocks_on(toy_bundle, route) == 0

    def test_line_route(self, toy_bundle):
        route = self.route(toy_bundle, "m0", "m4")
        assert route.nodes == ("m0", "m1", "m2", "m3", "m4")
        assert route.total_length == pytest.approx(400.0, rel=1e-3)
        assert set(route.streets) == {"Main Street"}

    def test_intersections_and_blocks(self, toy_bundle):
        through = self.route(toy_bundle, "m0", "m4")
        assert intersections_on(toy_bundle, through) == ["m2"]
        assert blocks_on(toy_bundle, through) == 2

        dead_end = self.route(toy_bundle, "m0", "m1")
        assert intersections_on(toy_bundle, dead_end) == []
        assert blocks_on(toy_bundle, dead_end) == 1

    def test_no_snap(self, toy_bundle):
        far = offset_point(ORIGIN, 5000.0, 0.0)
        with pytest.raises(NoSnapError):
            shortest_path(toy_bundle, far, ORIGIN)

    def test_disconnected(self):
        streets = toy_street_records() + [
            {"type": "node", "id": "far-a", "coord": lonlat(2000, 0)},
            {"type": "node", "id": "far-b", "coord": lonlat(2000, 100)},
            {"type": "edge", "u": "far-a", "v": "far-b"},
        ]
        bundle = build_bundle(enumerate(toy_entity_records(), 1), enumerate(streets, 1)).bundle
        with pytest.raises(DisconnectedError):
            shortest_path(bundle, ORIGIN, bundle.node_point("far-a"), snap_tolerance=5000)

    def test_length_matches_bellman_ford(self):
        bundle = random_bundle(seed=12, n_nodes=50, extra_edges=40)
        rng = random.Random(0)
        nodes = sorted(bundle.graph.nodes)
        for _ in range(100):
            u, v = rng.sample(nodes, 2)
            route = shortest_path(bundle, bundle.node_point(u), bundle.node_point(v), 1.0)
            expected = nx.bellman_ford_path_length(bundle.graph, u, v, weight="length")
            assert route.total_length == pytest.approx(expected, rel=1e-9)
            for a, b in zip(route.nodes, route.nodes[1:]):
                assert bundle.graph.has_edge(a, b)

    def test_grid_blocks_match_degree_census(self, grid_bundle):
        rng = random.Random(6)
        nodes = sorted(grid_bundle.graph.nodes)
        for _ in range(50):
            u, v = rng.sample(nodes, 2)
            route = self.route(grid_bundle, u, v)
            census = [n for n in route.nodes[1:-1] if grid_bundle.graph.degree(n) >= 3]
            assert intersections_on(grid_bundle, route) == census
            assert blocks_on(grid_bundle, route) == len(census) + 1

    def test_street_continuation_keeps_street(self, toy_bundle):
        route = self.route(toy_bundle, "m0", "m2")
        assert street_continuation(toy_bundle, route, 150.0) == ["m2", "m3", "m4"]
        assert street_continuation(toy_bundle, route, 50.0) == ["m2", "m3"]

    def test_street_continuation_dead_end(self, toy_bundle):
        route = self.route(toy_bundle, "m2", "m4")
        assert street_continuation(toy_bundle, route, 400.0) == ["m4"]


@pytest.mark.unit
class TestProminence:
    @pytest.mark.parametrize(
        ("tags", "expected"),
        [
            ({"wikipedia": "en:X", "shop": "books"}, ProminenceLevel.WIKILINKED),
            ({"wikidata": "Q42"}, ProminenceLevel.WIKILINKED),
            ({"brand": "QuickStop", "shop": "convenience"}, ProminenceLevel.BRAND),
            ({"tourism": "museum", "amenity": "cafe"}, ProminenceLevel.TOURISM),
            ({"amenity": "cafe", "shop": "coffee"}, ProminenceLevel.AMENITY),
            ({"shop": "books"}, ProminenceLevel.SHOP),
            ({}, ProminenceLevel.UNRANKED),
        ],
    )
    def test_hierarchy(self, tags, expected):
        assert prominence(entity(tags)) is expected

    def test_adding_higher_tag_never_lowers(self):
        ladder = [
            ("shop", "x"),
            ("amenity", "x"),
            ("tourism", "x"),
            ("brand", "x"),
            ("wikidata", "Q1"),
        ]
        tags: dict[str, str] = {}
        previous = ProminenceLevel.UNRANKED
        for key, value in ladder:
            tags[key] = value
            level = prominence(entity(tags))
            assert level > previous
            previous = level

    def test_total_order(self):
        levels = sorted(ProminenceLevel, key=lambda p: p.rank)
        assert levels[0] is ProminenceLevel.UNRANKED
        assert levels[-1] is ProminenceLevel.WIKILINKED


@pytest.mark.unit
class TestSyntheticCity:
    def test_deterministic(self):
        a = build_grid_city(rows=4, cols=5, n_entities=30, seed=2)
        b = build_grid_city(rows=4, cols=5, n_entities=30, seed=2)
        assert a.entity_records == b.entity_records
        assert a.street_records == b.street_records

    def test_grid_shape(self):
        bundle = build_grid_city(rows=4, cols=5, n_entities=30, seed=2).bundle()
        assert bundle.node_count == 20
        assert bundle.edge_count == 4 * 4 + 5 * 3
        assert len(bundle.entities) == 30
        assert bundle.connected_components() == 1

    def test_rejects_degenerate_grid(self):
        with pytest.raises(ValueError):
            build_grid_city(rows=1, cols=5)
