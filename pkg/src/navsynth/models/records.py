"""
Dataset record, run manifest and dataset statistics models.
"""

from datetime import datetime, timezone
from enum import Enum
from typing import Any, Literal

from pydantic import BaseModel, Field, field_serializer, field_validator

from navsynth.models.geo import GeoPoint


class GenerationMode(str, Enum):
    """Dataset variants."""

    CFG = "cfg"
    CFG_ALLOCENTRIC = "cfg-allocentric"
    CFG_EGOCENTRIC = "cfg-egocentric"
    CFG_MINIMAL = "cfg-minimal"
    DUMMY = "dummy"
    PROMPT = "prompt"

    @property
    def uses_grammar(self) -> bool:
        return self is not GenerationMode.DUMMY

    @property
    def is_template_mode(self) -> bool:
        """Records of this mode carry a template id and can be grounding-checked."""
        return self not in (GenerationMode.DUMMY, GenerationMode.PROMPT)


def _point(v: Any) -> Any:
    return GeoPoint.lonlat_to_dict(v)


class InstructionRecord(BaseModel):
    """
    One task instance: an instruction plus the grounded scenario behind it.

    Coordinates serialize as `[lon, lat]`.
    """

    id: str = Field(..., min_length=1)
    mode: GenerationMode
    instruction: str
    start: GeoPoint
    goal: GeoPoint
    route: tuple[GeoPoint, ...] = ()
    template_id: str | None = None
    landmarks: dict[str, Any] = Field(
        default_factory=dict, description="Surface forms and ids of the landmark classes"
    )
    features: dict[str, Any] | None = Field(
        default=None, description="Serialized spatial features"
    )
    seed: int = Field(..., ge=0)

    @field_validator("start", "goal", mode="before")
    @classmethod
    def parse_point(cls, v: Any) -> Any:
        return _point(v)

    @field_validator("route", mode="before")
    @classmethod
    def parse_route(cls, v: Any) -> Any:
        if isinstance(v, (list, tuple)):
            return tuple(_point(p) for p in v)
        return v

    @field_serializer("start", "goal")
    def dump_point(self, p: GeoPoint) -> list[float]:
        return p.to_lonlat()

    @field_serializer("route")
    def dump_route(self, route: tuple[GeoPoint, ...]) -> list[list[float]]:
        return [p.to_lonlat() for p in route]

    @property
    def mentioned_roles(self) -> list[str]:
        return list(self.landmarks.get("mentioned", []))

    model_config = {
        "frozen": True,
        "json_schema_extra": {
            "examples": [
                {
                    "id": "cfg-0000000",
                    "mode": "cfg",
                    "instruction": "Meet at the garden. Go north from a book shop for two blocks.",
                    "start": [-73.9855, 40.7484],
                    "goal": [-73.9857, 40.7580],
                    "route": [[-73.9855, 40.7484], [-73.9857, 40.7580]],
                    "template_id": "3f9a0c1d2b4e5f60",
                    "landmarks": {"mentioned": ["END_POINT", "MAIN_PIVOT"]},
                    "features": {"cardinal_start_to_goal": "North"},
                    "seed": 1234567890,
                }
            ]
        },
    }


class RunManifest(BaseModel):
    """Provenance written next to every generated dataset."""

    tool: str = Field(default="navsynth")
    version: str
    created_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
    config: dict[str, Any] = Field(default_factory=dict, description="Effective run config")
    grammar_sha256: str | None = None
    bundle_sha256: str
    dataset_sha256: str | None = None
    template_pool_size: int | Literal["n/a"]
    records_requested: int = Field(..., ge=0)
    records_written: int = Field(..., ge=0)
    misses: int = Field(default=0, ge=0)
    missed_indices: list[int] = Field(default_factory=list)
    wall_time_s: float = Field(default=0.0, ge=0.0)


class DatasetStats(BaseModel):
    """Corpus statistics of a dataset file."""

    records: int = Field(..., ge=1)
    avg_tokens: float
    avg_entities: float
    vocabulary_size: int
    modes: dict[str, int] = Field(default_factory=dict)

    def as_rows(self) -> list[tuple[str, str]]:
        rows = [
            ("records", str(self.records)),
            ("avg_tokens", f"{self.avg_tokens:.2f}"),
            ("avg_entities", f"{self.avg_entities:.2f}"),
            ("vocabulary_size", str(self.vocabulary_size)),
        ]
        rows.extend((f"mode:{mode}", str(count)) for mode, count in sorted(self.modes.items()))
        return rows
