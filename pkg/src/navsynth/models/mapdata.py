"""
Map bundle models: entities, geometries, street edges and routes.
"""

from enum import Enum
from functools import cached_property
from typing import Literal

from pydantic import BaseModel, Field, field_validator, model_validator
from shapely.geometry import Polygon

from navsynth.models.geo import GeoPoint


class GeometryType(str, Enum):
    POINT = "point"
    POLYGON = "polygon"


class Geometry(BaseModel):
    """
    Point or polygon geometry.

    Polygon rings must be closed (first vertex repeated last) and store at
    least four vertices.
    """

    model_config = {"frozen": True}

    type: GeometryType
    coords: tuple[GeoPoint, ...] = Field(..., min_length=1)

    @field_validator("coords", mode="before")
    @classmethod
    def parse_lonlat(cls, v: object) -> object:
        if isinstance(v, (list, tuple)):
            return tuple(GeoPoint.lonlat_to_dict(c) for c in v)
        return v

    @model_validator(mode="after")
    def check_shape(self) -> "Geometry":
        if self.type is GeometryType.POINT:
            if len(self.coords) != 1:
                raise ValueError(
                    f"point geometry needs exactly 1 coordinate, got {len(self.coords)}"
                )
        else:
            if len(self.coords) < 4:
                raise ValueError(
                    f"polygon ring needs at least 4 stored vertices, got {len(self.coords)}"
                )
            if self.coords[0] != self.coords[-1]:
                raise ValueError("polygon ring is not closed (first vertex != last vertex)")
        return self

    @property
    def is_point(self) -> bool:
        return self.type is GeometryType.POINT

    def to_json(self) -> dict[str, object]:
        return {"type": self.type.value, "coords": [c.to_lonlat() for c in self.coords]}


class Entity(BaseModel):
    """
    A map entity with tags and geometry.

    `centroid` and `extent_radius` are derived from the geometry on first use.
    """

    model_config = {"frozen": True}

    id: str = Field(..., min_length=1, description="Opaque entity identifier")
    name: str | None = Field(default=None, description="Proper name, if any")
    tags: dict[str, str] = Field(default_factory=dict, description="OSM-style key/value tags")
    geometry: Geometry

    @field_validator("name")
    @classmethod
    def blank_name_is_none(cls, v: str | None) -> str | None:
        if v is not None and not v.strip():
            return None
        return v

    @cached_property
    def centroid(self) -> GeoPoint:
        coords = self.geometry.coords
        if self.geometry.is_point:
            return coords[0]
        ring = coords[:-1]
        shape = Polygon([(c.lon, c.lat) for c in ring])
        if shape.is_valid and shape.area > 0.0:
            center = shape.centroid
            return GeoPoint(lat=center.y, lon=center.x)
        # degenerate ring: fall back to the vertex mean
        return GeoPoint(
            lat=sum(c.lat for c in ring) / len(ring),
            lon=sum(c.lon for c in ring) / len(ring),
        )

    @cached_property
    def extent_radius(self) -> float:
        """Max centroid-to-vertex distance in meters; 0 for points."""
        if self.geometry.is_point:
            return 0.0
        from navsynth.geo.geodesy import haversine_distance

        center = self.centroid
        return max(haversine_distance(center, c) for c in self.geometry.coords)

    @property
    def key(self) -> str:
        return self.id

    def to_json(self) -> dict[str, object]:
        return {
            "id": self.id,
            "name": self.name,
            "tags": dict(self.tags),
            "geometry": self.geometry.to_json(),
        }


class ProminenceLevel(str, Enum):
    """Recognition tiers used to pick landmarks, most prominent first."""

    WIKILINKED = "wikilinked"
    BRAND = "brand"
    TOURISM = "tourism"
    AMENITY = "amenity"
    SHOP = "shop"
    UNRANKED = "unranked"

    @property
    def rank(self) -> int:
        """Numeric rank, higher is more prominent (0-5)."""
        mapping = {
            "unranked": 0,
            "shop": 1,
            "amenity": 2,
            "tourism": 3,
            "brand": 4,
            "wikilinked": 5,
        }
        return mapping[self.value]

    def __ge__(self, other: "ProminenceLevel") -> bool:
        return self.rank >= other.rank

    def __gt__(self, other: "ProminenceLevel") -> bool:
        return self.rank > other.rank

    def __le__(self, other: "ProminenceLevel") -> bool:
        return self.rank <= other.rank

    def __lt__(self, other: "ProminenceLevel") -> bool:
        return self.rank < other.rank


class StreetNode(BaseModel):
    """Raw `node` record of streets.jsonl."""

    type: Literal["node"]
    id: str = Field(..., min_length=1)
    coord: GeoPoint

    @field_validator("coord", mode="before")
    @classmethod
    def parse_lonlat(cls, v: object) -> object:
        return GeoPoint.lonlat_to_dict(v)


class StreetEdge(BaseModel):
    """Raw `edge` record of streets.jsonl; length is optional and validated when present."""

    type: Literal["edge"]
    u: str = Field(..., min_length=1)
    v: str = Field(..., min_length=1)
    street: str | None = None
    length: float | None = Field(default=None, ge=0.0)


class Route(BaseModel):
    """Shortest path between two snapped street nodes."""

    model_config = {"frozen": True}

    nodes: tuple[str, ...] = Field(..., min_length=1)
    polyline: tuple[GeoPoint, ...] = Field(..., min_length=1)
    streets: tuple[str | None, ...] = Field(
        default=(), description="Street name of each traversed edge"
    )
    total_length: float = Field(..., ge=0.0)
    start_snap: GeoPoint
    end_snap: GeoPoint

    @model_validator(mode="after")
    def check_consistency(self) -> "Route":
        if len(self.nodes) != len(self.polyline):
            raise ValueError("route node and polyline lengths differ")
        if self.streets and len(self.streets) != len(self.nodes) - 1:
            raise ValueError("route needs one street entry per edge")
        return self

    @property
    def is_single_node(self) -> bool:
        return len(self.nodes) == 1

    @property
    def segments(self) -> list[tuple[GeoPoint, GeoPoint]]:
        return list(zip(self.polyline, self.polyline[1:]))
