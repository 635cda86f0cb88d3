"""
Filling templates with the grounded values of a sample.
"""

import re
from collections.abc import Mapping

from navsynth.exceptions import MissingFeatureError
from navsynth.models.features import SpatialFeatures
from navsynth.models.geo import BlockPosition
from navsynth.models.grammar import LiteralToken, Template, join_tokens
from navsynth.models.mapdata import Entity
from navsynth.models.sampling import DisplayName, Landmark, LandmarkSet
from navsynth.sampler.naming import display_name, quantity


# placeholders naming a landmark, in the order they are reported
ROLE_PLACEHOLDERS = ("END_POINT", "MAIN_PIVOT", "MAIN_NEAR_PIVOT", "NEAR_PIVOT", "BEYOND_PIVOT")

GOAL_POSITION_PHRASES: dict[BlockPosition, str] = {
    BlockPosition.MIDDLE: "in the middle of the block",
    BlockPosition.NEAR_CORNER: "on the near corner of the block",
    BlockPosition.FAR_CORNER: "on the far corner of the block",
}

RESIDUE_RE = re.compile(r"\b[A-Z][A-Z0-9]*(?:_[A-Z0-9]+)+\b")
_SENTENCE_START = re.compile(r"(^|[.!?]\s+)([a-z])")


def role_landmarks(landmarks: LandmarkSet) -> dict[str, Landmark]:
    """Landmark behind each landmark role that is filled for this set."""
    roles: dict[str, Landmark | None] = {
        "MAIN_PIVOT": landmarks.main_pivot(),
        "MAIN_NEAR_PIVOT": landmarks.main_near_pivot(),
        "NEAR_PIVOT": landmarks.near_pivot(),
        "BEYOND_PIVOT": landmarks.beyond,
    }
    return {role: item for role, item in roles.items() if item is not None}


def role_names(
    goal: Entity, landmarks: LandmarkSet, proper_name_distance: float = 200.0
) -> dict[str, DisplayName]:
    """Display names of the goal and every filled landmark role."""
    names = {"END_POINT": display_name(goal, goal, proper_name_distance)}
    for role, item in role_landmarks(landmarks).items():
        names[role] = display_name(item, goal, proper_name_distance)
    return names


def available_placeholders(landmarks: LandmarkSet, features: SpatialFeatures) -> set[str]:
    """Placeholders that have a value for this sample."""
    available = {"END_POINT", "CARDINAL_DIRECTION", "GOAL_CORNER", "GOAL_POSITION"}
    roles = role_landmarks(landmarks)
    available.update(roles)
    if features.n_intersections >= 1:
        available.update({"NUMBER_INTERSECTIONS", "NUMBER_BLOCKS"})
    if features.goal_side is not None:
        available.add("EGO_SIDE")
    for role, prefix in (("MAIN_PIVOT", "MAIN_PIVOT"), ("NEAR_PIVOT", "NEAR_PIVOT")):
        item = roles.get(role)
        if item is None:
            continue
        if item.key in features.cardinal_pivot_to_goal:
            available.add(f"{prefix}_DIRECTION")
        if item.key in features.ego_side:
            available.add(f"{prefix}_SIDE")
    return available


def corner_phrase(features: SpatialFeatures) -> str:
    if features.block_position_allo is None:
        return "in the middle of the block"
    return f"on the {features.block_position_allo.word} corner of the block"


def slot_values(
    landmarks: LandmarkSet,
    features: SpatialFeatures,
    names: Mapping[str, DisplayName],
) -> dict[str, str]:
    """Surface value of every available placeholder."""
    available = available_placeholders(landmarks, features)
    roles = role_landmarks(landmarks)
    values: dict[str, str] = {
        "END_POINT": names["END_POINT"].head,
        "CARDINAL_DIRECTION": features.cardinal_start_to_goal.word,
        "GOAL_CORNER": corner_phrase(features),
        "GOAL_POSITION": GOAL_POSITION_PHRASES[features.block_position_ego],
    }
    for role in roles:
        values[role] = names[role].surface
    if "NUMBER_INTERSECTIONS" in available:
        values["NUMBER_INTERSECTIONS"] = quantity(features.n_intersections, "intersection")
        values["NUMBER_BLOCKS"] = quantity(features.n_blocks, "block")
    if features.goal_side is not None:
        values["EGO_SIDE"] = features.goal_side.value
    for prefix in ("MAIN_PIVOT", "NEAR_PIVOT"):
        item = roles.get(prefix)
        if item is None:
            continue
        direction = features.cardinal_pivot_to_goal.get(item.key)
        if direction is not None:
            values[f"{prefix}_DIRECTION"] = direction.word
        side = features.ego_side.get(item.key)
        if side is not None:
            values[f"{prefix}_SIDE"] = side.value
    return values


def capitalize_sentences(text: str) -> str:
    """Upper-case the first letter of every sentence."""
    return _SENTENCE_START.sub(lambda m: m.group(1) + m.group(2).upper(), text)


def instantiate(template: Template, values: Mapping[str, str]) -> str:
    """
    Replace every placeholder of a template by its value.

    Raises:
        MissingFeatureError: the template uses a placeholder with no value
    """
    parts: list[str] = []
    for token in template.tokens:
        if isinstance(token, LiteralToken):
            parts.append(token.text)
            continue
        try:
            parts.append(values[token.name])
        except KeyError:
            raise MissingFeatureError(
                f"template {template.id} needs {token.name}, which has no value"
            ) from None
    return capitalize_sentences(join_tokens(parts))


def find_placeholder_residue(text: str) -> list[str]:
    """Unresolved placeholder names left in a text."""
    return RESIDUE_RE.findall(text)
