"""
Deterministic synthetic "grid city" map bundles.

Streets form a rectangular grid; entities are scattered inside the blocks,
away from the street center lines, with a mix of tags, names and shapes.
"""

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import inflect

from navsynth.config import MapSettings
from navsynth.geo.geodesy import haversine_distance, offset_point
from navsynth.mapgraph.bundle import MapBundle
from navsynth.mapgraph.loader import build_bundle
from navsynth.models.geo import GeoPoint


_inflect = inflect.engine()

AVENUE_NAMES = (
    "Maple", "Oak", "Cedar", "Elm", "Pine", "Birch", "Walnut", "Chestnut",
    "Willow", "Spruce", "Hickory", "Ash", "Poplar", "Laurel", "Magnolia",
    "Juniper", "Alder", "Sycamore", "Cypress", "Hawthorn", "Linden", "Aspen",
)

NAME_PREFIXES = (
    "Harbor", "Corner", "Golden", "Blue Door", "Riverside", "Union", "Liberty",
    "Sunset", "Central", "Old Town", "Grand", "Little", "Green Leaf", "Silver",
    "Lantern", "Copper Pot", "Northgate", "Westbrook",
)

LANDMARK_NAMES = (
    "Clock Tower", "Memorial Arch", "Old Mill", "Glass Pavilion", "Founders Hall",
    "Bell House", "Observatory", "Stone Bridge Gate", "Heritage Lighthouse",
)

# (tags, relative weight, label used to build proper names)
ENTITY_CATALOG: tuple[tuple[dict[str, str], int, str], ...] = (
    ({"shop": "books"}, 6, "Books"),
    ({"shop": "bakery"}, 6, "Bakery"),
    ({"shop": "supermarket"}, 4, "Market"),
    ({"shop": "clothes"}, 5, "Outfitters"),
    ({"shop": "florist"}, 3, "Flowers"),
    ({"amenity": "cafe"}, 8, "Cafe"),
    ({"amenity": "restaurant"}, 8, "Kitchen"),
    ({"amenity": "fast_food"}, 4, "Grill"),
    ({"amenity": "pharmacy"}, 4, "Pharmacy"),
    ({"amenity": "bank"}, 4, "Bank"),
    ({"amenity": "school"}, 2, "School"),
    ({"tourism": "museum"}, 2, "Museum"),
    ({"tourism": "hotel"}, 3, "Hotel"),
    ({"tourism": "artwork"}, 1, "Sculpture"),
    ({"amenity": "cafe", "brand": "Starbucks"}, 2, ""),
    ({"amenity": "fast_food", "brand": "Burger Palace"}, 2, ""),
    ({"shop": "convenience", "brand": "QuickStop"}, 2, ""),
    ({"tourism": "attraction", "wikidata": ""}, 1, ""),
    ({"building": "yes"}, 4, "Building"),
)


@dataclass
class SyntheticCity:
    """Raw bundle records of a generated city."""

    entity_records: list[dict[str, Any]] = field(default_factory=list)
    street_records: list[dict[str, Any]] = field(default_factory=list)

    def bundle(self, settings: MapSettings | None = None) -> MapBundle:
        report = build_bundle(
            enumerate(self.entity_records, start=1),
            enumerate(self.street_records, start=1),
            entities_source="<synthetic entities>",
            streets_source="<synthetic streets>",
            settings=settings,
        )
        if report.bundle is None:
            messages = "; ".join(d.to_string() for d in report.errors)
            raise ValueError(f"synthetic city failed validation: {messages}")
        return report.bundle


def _lonlat(p: GeoPoint) -> list[float]:
    return [round(p.lon, 7), round(p.lat, 7)]


def _node_id(row: int, col: int) -> str:
    return f"n{row:03d}-{col:03d}"


def build_grid_city(
    rows: int = 21,
    cols: int = 21,
    spacing_m: float = 100.0,
    n_entities: int = 1500,
    seed: int = 0,
    origin: GeoPoint | None = None,
    named_fraction: float = 0.5,
    polygon_fraction: float = 0.25,
) -> SyntheticCity:
    """
    Generate a grid city.

    Row streets run east-west ("1st Street", ...), column streets run
    north-south ("Maple Avenue", ...). The south-west corner is `origin`.
    """
    if rows < 2 or cols < 2:
        raise ValueError("a grid city needs at least 2 rows and 2 columns")
    rng = random.Random(seed)
    origin = origin or GeoPoint(lat=40.75, lon=-73.98)
    city = SyntheticCity()

    points = {
        (r, c): offset_point(origin, north_m=r * spacing_m, east_m=c * spacing_m)
        for r in range(rows)
        for c in range(cols)
    }
    for (r, c), point in sorted(points.items()):
        city.street_records.append({"type": "node", "id": _node_id(r, c), "coord": _lonlat(point)})

    def avenue(c: int) -> str:
        base = AVENUE_NAMES[c % len(AVENUE_NAMES)]
        lap = c // len(AVENUE_NAMES)
        return f"{base} Avenue" if lap == 0 else f"{base} Avenue {lap + 1}"

    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                length = haversine_distance(points[(r, c)], points[(r, c + 1)])
                city.street_records.append(
                    {
                        "type": "edge",
                        "u": _node_id(r, c),
                        "v": _node_id(r, c + 1),
                        "street": f"{_inflect.ordinal(r + 1)} Street",
                        "length": round(length, 3),
                    }
                )
            if r + 1 < rows:
                length = haversine_distance(points[(r, c)], points[(r + 1, c)])
                city.street_records.append(
                    {
                        "type": "edge",
                        "u": _node_id(r, c),
                        "v": _node_id(r + 1, c),
                        "street": avenue(c),
                        "length": round(length, 3),
                    }
                )

    weights = [w for _, w, _ in ENTITY_CATALOG]
    margin = min(15.0, spacing_m / 4)
    for idx in range(n_entities):
        tags, _, label = rng.choices(ENTITY_CATALOG, weights=weights)[0]
        tags = dict(tags)
        name: str | None = None
        if "wikidata" in tags:
            tags["wikidata"] = f"Q{rng.randint(1000, 999_999)}"
            name = rng.choice(LANDMARK_NAMES)
        elif "brand" in tags:
            name = tags["brand"]
        elif rng.random() < named_fraction:
            name = f"{rng.choice(NAME_PREFIXES)} {label}"

        block_r = rng.randrange(rows - 1)
        block_c = rng.randrange(cols - 1)
        is_polygon = rng.random() < polygon_fraction
        half = rng.uniform(6.0, min(30.0, spacing_m / 2 - margin - 1.0)) if is_polygon else 0.0
        north = block_r * spacing_m + rng.uniform(margin + half, spacing_m - margin - half)
        east = block_c * spacing_m + rng.uniform(margin + half, spacing_m - margin - half)

        if is_polygon:
            ring = [
                offset_point(origin, north + dn, east + de)
                for dn, de in ((-half, -half), (-half, half), (half, half), (half, -half))
            ]
            coords = [_lonlat(p) for p in ring]
            coords.append(coords[0])
            geometry = {"type": "polygon", "coords": coords}
        else:
            geometry = {"type": "point", "coords": [_lonlat(offset_point(origin, north, east))]}

        city.entity_records.append(
            {"id": f"e{idx:05d}", "name": name, "tags": tags, "geometry": geometry}
        )
    return city


def write_bundle(city: SyntheticCity, directory: str | Path) -> tuple[Path, Path]:
    """Write `entities.jsonl` and `streets.jsonl` into `directory`."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    entities_path = out / "entities.jsonl"
    streets_path = out / "streets.jsonl"
    with open(entities_path, "w", encoding="utf-8") as f:
        for record in city.entity_records:
            f.write(json.dumps(record, sort_keys=True) + "\n")
    with open(streets_path, "w", encoding="utf-8") as f:
        for record in city.street_records:
            f.write(json.dumps(record, sort_keys=True) + "\n")
    return entities_path, streets_path
