"""
Sampled navigation scenarios: path, landmark classes and display names.
"""

from enum import Enum

from pydantic import BaseModel, Field, model_validator

from navsynth.models.geo import GeoPoint
from navsynth.models.mapdata import Entity, Route


MAX_SEED = 2**64 - 1


class EntityGroup(BaseModel):
    """Two or more same-type landmarks mentioned together ("two book shops")."""

    model_config = {"frozen": True}

    type_key: str = Field(..., description="Tag key the type comes from, e.g. 'shop'")
    type_tag: str = Field(..., description="Tag value shared by all members, e.g. 'books'")
    count: int = Field(..., ge=2)
    members: tuple[str, ...] = Field(..., description="Member entity ids, sorted")
    centroid: GeoPoint = Field(..., description="Mean of the member centroids")

    @model_validator(mode="after")
    def check_count(self) -> "EntityGroup":
        if self.count != len(self.members):
            raise ValueError(f"group count {self.count} != {len(self.members)} members")
        return self

    @property
    def key(self) -> str:
        return "group:" + "+".join(self.members)


Landmark = Entity | EntityGroup


class LandmarkSet(BaseModel):
    """
    The three landmark classes picked for a path.

    `near` is ordered by the sampler's random draw, `main_pivots` by position
    along the route. Any class may be empty.
    """

    model_config = {"frozen": True}

    near: tuple[Landmark, ...] = ()
    main_pivots: tuple[Landmark, ...] = ()
    beyond: Landmark | None = None

    def near_pivot(self) -> Landmark | None:
        return self.near[0] if self.near else None

    def main_pivot(self) -> Landmark | None:
        return self.main_pivots[0] if self.main_pivots else None

    def main_near_pivot(self) -> Landmark | None:
        """The route landmark closest to the goal, when distinct from the main pivot."""
        return self.main_pivots[-1] if len(self.main_pivots) >= 2 else None

    def all_landmarks(self) -> list[Landmark]:
        items: list[Landmark] = [*self.near, *self.main_pivots]
        if self.beyond is not None:
            items.append(self.beyond)
        return items

    def member_ids(self) -> set[str]:
        ids: set[str] = set()
        for item in self.all_landmarks():
            if isinstance(item, EntityGroup):
                ids.update(item.members)
            else:
                ids.add(item.id)
        return ids


class PathSample(BaseModel):
    """Start entity, goal entity and the route between them."""

    model_config = {"frozen": True}

    start: Entity
    goal: Entity
    route: Route
    seed: int = Field(..., ge=0, le=MAX_SEED)


class NameForm(str, Enum):
    """How a landmark is referred to in text."""

    PROPER = "proper"
    INDEFINITE = "indefinite"
    GROUPED_COUNT = "grouped_count"


class DisplayName(BaseModel):
    """Surface form of a landmark, e.g. "a book shop" with head "book shop"."""

    model_config = {"frozen": True}

    surface: str = Field(..., min_length=1)
    form: NameForm
    head: str = Field(..., min_length=1, description="Surface without article or count")
