"""
Geodesic value types: coordinates, azimuths and the relation labels derived
from them.
"""

import math
from collections.abc import Sequence
from enum import Enum

from pydantic import BaseModel, Field, field_validator


class GeoPoint(BaseModel):
    """A WGS84 coordinate in decimal degrees."""

    model_config = {"frozen": True}

    lat: float = Field(..., ge=-90.0, le=90.0, description="Latitude in degrees")
    lon: float = Field(..., ge=-180.0, le=180.0, description="Longitude in degrees")

    @classmethod
    def from_lonlat(cls, coords: Sequence[float]) -> "GeoPoint":
        """Build from a `[lon, lat]` pair as stored in bundle and dataset files."""
        if len(coords) != 2:
            raise ValueError(f"expected [lon, lat], got {len(coords)} values")
        return cls(lat=float(coords[1]), lon=float(coords[0]))

    @staticmethod
    def lonlat_to_dict(v: object) -> object:
        """Turn a `[lon, lat]` pair into field input; other values pass through."""
        if isinstance(v, (list, tuple)) and len(v) == 2:
            return {"lat": v[1], "lon": v[0]}
        return v

    def to_lonlat(self) -> list[float]:
        return [self.lon, self.lat]

    def __str__(self) -> str:
        return f"({self.lat:.6f}, {self.lon:.6f})"


class Bearing(BaseModel):
    """Clockwise azimuth from true north, normalized to [0, 360)."""

    model_config = {"frozen": True}

    degrees: float = Field(..., description="Azimuth in degrees")

    @field_validator("degrees", mode="before")
    @classmethod
    def normalize(cls, v: float) -> float:
        value = float(v)
        if not math.isfinite(value):
            raise ValueError("bearing must be finite")
        value %= 360.0
        # -1e-17 % 360.0 rounds to 360.0
        if value >= 360.0:
            value = 0.0
        return value

    def __float__(self) -> float:
        return self.degrees


class CardinalDirection(str, Enum):
    """Eight compass sectors, clockwise from north."""

    NORTH = "North"
    NORTH_EAST = "North-East"
    EAST = "East"
    SOUTH_EAST = "South-East"
    SOUTH = "South"
    SOUTH_WEST = "South-West"
    WEST = "West"
    NORTH_WEST = "North-West"

    @property
    def word(self) -> str:
        """Lowercase surface form used in instructions."""
        return self.value.lower()

    @property
    def center(self) -> float:
        """Bearing of the sector's center in degrees."""
        return CARDINAL_ORDER.index(self) * 45.0

    @classmethod
    def from_sector(cls, index: int) -> "CardinalDirection":
        return CARDINAL_ORDER[index % 8]


CARDINAL_ORDER: tuple[CardinalDirection, ...] = tuple(CardinalDirection)


class EgocentricSide(str, Enum):
    """Side of the path a point lies on, relative to the direction of travel."""

    LEFT = "left"
    RIGHT = "right"

    @property
    def opposite(self) -> "EgocentricSide":
        return EgocentricSide.RIGHT if self is EgocentricSide.LEFT else EgocentricSide.LEFT


class BlockPosition(str, Enum):
    """Where the goal sits on its block, seen from the direction of travel."""

    MIDDLE = "middle"
    NEAR_CORNER = "near_corner"
    FAR_CORNER = "far_corner"
