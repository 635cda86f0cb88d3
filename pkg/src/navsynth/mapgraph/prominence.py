"""
Landmark prominence classification from entity tags.
"""

from navsynth.models.mapdata import Entity, ProminenceLevel


# highest tier first; the first matching rule wins
PROMINENCE_RULES: tuple[tuple[ProminenceLevel, tuple[str, ...]], ...] = (
    (ProminenceLevel.WIKILINKED, ("wikipedia", "wikidata")),
    (ProminenceLevel.BRAND, ("brand",)),
    (ProminenceLevel.TOURISM, ("tourism",)),
    (ProminenceLevel.AMENITY, ("amenity",)),
    (ProminenceLevel.SHOP, ("shop",)),
)


def prominence(entity: Entity) -> ProminenceLevel:
    """Recognition tier of an entity; depends only on which tag keys are present."""
    for level, keys in PROMINENCE_RULES:
        if any(key in entity.tags for key in keys):
            return level
    return ProminenceLevel.UNRANKED
