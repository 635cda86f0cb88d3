"""
Shared fixtures: a hand-built toy bundle, a synthetic grid city and the
shipped grammar.
"""

import json
from pathlib import Path
from typing import Any

import pytest

from navsynth.config import AppSettings, default_grammar_path
from navsynth.geo.geodesy import offset_point
from navsynth.grammar import TemplatePool, enumerate_templates, parse_grammar
from navsynth.mapgraph import build_bundle, build_grid_city, write_bundle
from navsynth.mapgraph.bundle import MapBundle
from navsynth.models import GeoPoint, Template


ORIGIN = GeoPoint(lat=40.75, lon=-73.98)

TOY_GRAMMAR = """\
# two greetings times three targets
Start -> Greeting Target "."
Greeting -> "Meet" | "Find me"
Target -> "at the" END_POINT | "near" NEAR_PIVOT | "by" MAIN_PIVOT
"""


def lonlat(north_m: float, east_m: float) -> list[float]:
    p = offset_point(ORIGIN, north_m, east_m)
    return [p.lon, p.lat]


def point_entity(
    entity_id: str, north_m: float, east_m: float, tags: dict[str, str], name: str | None = None
) -> dict[str, Any]:
    return {
        "id": entity_id,
        "name": name,
        "tags": tags,
        "geometry": {"type": "point", "coords": [lonlat(north_m, east_m)]},
    }


def toy_street_records() -> list[dict[str, Any]]:
    """
    A plus-shaped street network.

    Main Street runs east from m0 to m4 (100 m spacing); Oak Avenue crosses it
    at m2 with o-south 100 m below and o-north 100 m above.
    """
    nodes = {f"m{i}": (0.0, 100.0 * i) for i in range(5)}
    nodes["o-south"] = (-100.0, 200.0)
    nodes["o-north"] = (100.0, 200.0)
    records: list[dict[str, Any]] = [
        {"type": "node", "id": node_id, "coord": lonlat(*offset)}
        for node_id, offset in sorted(nodes.items())
    ]
    edges = [
        ("m0", "m1", "Main Street"),
        ("m1", "m2", "Main Street"),
        ("m2", "m3", "Main Street"),
        ("m3", "m4", "Main Street"),
        ("o-south", "m2", "Oak Avenue"),
        ("m2", "o-north", "Oak Avenue"),
    ]
    records.extend({"type": "edge", "u": u, "v": v, "street": street} for u, v, street in edges)
    return records


def toy_entity_records() -> list[dict[str, Any]]:
    return [
        point_entity("cafe-1", 30.0, 20.0, {"amenity": "cafe"}, "Harbor Cafe"),
        point_entity("books-1", -30.0, 120.0, {"shop": "books"}),
        point_entity("bakery-1", 30.0, 310.0, {"shop": "bakery"}),
        point_entity("bakery-2", 35.0, 330.0, {"shop": "bakery"}),
        point_entity("museum-1", 40.0, 240.0, {"tourism": "museum"}, "City Museum"),
        point_entity(
            "tower-1", -40.0, 260.0, {"tourism": "attraction", "wikidata": "Q1"}, "Clock Tower"
        ),
        point_entity("bench-1", 20.0, 380.0, {"leisure": "bench"}),
        {
            "id": "park-1",
            "name": "Long Park",
            "tags": {"leisure": "park"},
            "geometry": {
                "type": "polygon",
                "coords": [
                    lonlat(-180.0, 20.0),
                    lonlat(-180.0, 380.0),
                    lonlat(-120.0, 380.0),
                    lonlat(-120.0, 20.0),
                    lonlat(-180.0, 20.0),
                ],
            },
        },
    ]


def write_jsonl(path: Path, records: list[dict[str, Any]]) -> Path:
    path.write_text("".join(json.dumps(r) + "\n" for r in records), encoding="utf-8")
    return path


@pytest.fixture
def settings() -> AppSettings:
    return AppSettings()


@pytest.fixture
def toy_bundle() -> MapBundle:
    report = build_bundle(
        enumerate(toy_entity_records(), start=1), enumerate(toy_street_records(), start=1)
    )
    assert report.bundle is not None, [d.to_string() for d in report.diagnostics]
    return report.bundle


@pytest.fixture
def toy_files(tmp_path: Path) -> tuple[Path, Path]:
    entities = write_jsonl(tmp_path / "entities.jsonl", toy_entity_records())
    streets = write_jsonl(tmp_path / "streets.jsonl", toy_street_records())
    return entities, streets


@pytest.fixture(scope="session")
def grid_city():
    return build_grid_city(rows=11, cols=11, spacing_m=100.0, n_entities=500, seed=7)


@pytest.fixture(scope="session")
def grid_bundle(grid_city) -> MapBundle:
    return grid_city.bundle()


@pytest.fixture(scope="session")
def grid_files(grid_city, tmp_path_factory) -> tuple[Path, Path]:
    return write_bundle(grid_city, tmp_path_factory.mktemp("grid"))


@pytest.fixture(scope="session")
def default_grammar():
    return parse_grammar(default_grammar_path())


@pytest.fixture(scope="session")
def default_templates(default_grammar) -> list[Template]:
    return enumerate_templates(default_grammar)


@pytest.fixture(scope="session")
def template_pool(default_templates) -> TemplatePool:
    return TemplatePool(default_templates)


@pytest.fixture
def toy_grammar_file(tmp_path: Path) -> Path:
    path = tmp_path / "toy.cfg"
    path.write_text(TOY_GRAMMAR, encoding="utf-8")
    return path

