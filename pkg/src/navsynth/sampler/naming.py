"""
How landmarks are referred to in text.

Entities far from the goal are called by their proper name; entities near the
goal, unnamed entities and groups are described by their type ("a book
shop", "two book shops").
"""

from functools import lru_cache

import inflect

from navsynth.exceptions import UnnameableEntityError
from navsynth.geo.geodesy import haversine_distance
from navsynth.models.mapdata import Entity
from navsynth.models.sampling import DisplayName, EntityGroup, Landmark, NameForm


_inflect = inflect.engine()

# tag keys that give an entity a type, in order of preference
TYPE_KEYS = ("amenity", "shop", "tourism", "brand")

# tag value -> noun, where the plain value reads badly
CORRECTIONS: dict[tuple[str, str], str] = {
    ("shop", "books"): "book shop",
    ("shop", "clothes"): "clothes shop",
    ("shop", "convenience"): "convenience store",
    ("shop", "florist"): "florist",
    ("shop", "supermarket"): "supermarket",
    ("shop", "bakery"): "bakery",
    ("shop", "shoes"): "shoe shop",
    ("shop", "hairdresser"): "hairdresser",
    ("amenity", "fast_food"): "fast-food restaurant",
    ("amenity", "place_of_worship"): "place of worship",
    ("amenity", "bicycle_rental"): "bicycle rental",
    ("amenity", "atm"): "ATM",
    ("tourism", "attraction"): "tourist attraction",
    ("tourism", "artwork"): "artwork",
    ("tourism", "information"): "information point",
}

BLOCKED_VALUES = frozenset({"yes", "no", "unknown", "vacant"})

MAX_NUMBER_WORD = 12


def type_of(entity: Entity) -> tuple[str, str] | None:
    """The (key, value) tag that determines the entity's type noun, if any."""
    for key in TYPE_KEYS:
        value = entity.tags.get(key)
        if value and value.strip().lower() not in BLOCKED_VALUES:
            return key, value.strip()
    return None


@lru_cache(maxsize=1024)
def type_noun(key: str, value: str) -> str:
    """Noun phrase for a type tag, e.g. ('shop', 'books') -> 'book shop'."""
    corrected = CORRECTIONS.get((key, value))
    if corrected:
        return corrected
    if key == "brand":
        return value
    noun = value.replace("_", " ").replace(";", " ").strip()
    if key == "shop" and not noun.endswith("shop"):
        singular = _inflect.singular_noun(noun) or noun
        return f"{singular} shop"
    return noun


def plural_noun(key: str, value: str) -> str:
    """Plural of a type noun; brand names stay as they are."""
    noun = type_noun(key, value)
    if key == "brand":
        return noun
    return str(_inflect.plural(noun))


def entity_type_noun(entity: Entity) -> str | None:
    found = type_of(entity)
    return type_noun(*found) if found else None


def count_words(n: int) -> str:
    """Number words up to twelve, digits beyond."""
    if n <= MAX_NUMBER_WORD:
        return str(_inflect.number_to_words(n))
    return str(n)


def quantity(n: int, noun: str) -> str:
    """'two intersections', 'one block', '14 blocks'."""
    return f"{count_words(n)} {_inflect.plural(noun, n)}"


def is_nameable(entity: Entity, goal: Entity, proper_name_distance: float = 200.0) -> bool:
    """True when display_name would succeed for `entity` relative to `goal`."""
    if entity_type_noun(entity) is not None:
        return True
    return (
        entity.name is not None
        and entity.id != goal.id
        and haversine_distance(entity.centroid, goal.centroid) > proper_name_distance
    )


def display_name(
    landmark: Landmark,
    goal: Entity,
    proper_name_distance: float = 200.0,
) -> DisplayName:
    """
    Surface form of a landmark as seen from the goal.

    Raises:
        UnnameableEntityError: the entity has neither a usable name nor a type
    """
    if isinstance(landmark, EntityGroup):
        plural = plural_noun(landmark.type_key, landmark.type_tag)
        return DisplayName(
            surface=f"{count_words(landmark.count)} {plural}",
            form=NameForm.GROUPED_COUNT,
            head=plural,
        )

    distance = haversine_distance(landmark.centroid, goal.centroid)
    if landmark.name and landmark.id != goal.id and distance > proper_name_distance:
        return DisplayName(surface=landmark.name, form=NameForm.PROPER, head=landmark.name)

    noun = entity_type_noun(landmark)
    if noun is None:
        raise UnnameableEntityError(
            f"entity {landmark.id} has no type tag and cannot be named at {distance:.0f} m"
        )
    return DisplayName(surface=str(_inflect.a(noun)), form=NameForm.INDEFINITE, head=noun)
