"""
Placeholder registry.

Every placeholder a grammar may use is listed here with its class (which
decides template style) and the feature that fills it. Placeholders in a
required group must be mentioned whenever any member of that group is
available for a sample.
"""

from collections.abc import Iterable, Mapping

from navsynth.models.grammar import PlaceholderClass, PlaceholderSpec, TemplateStyle


REQUIRED_GROUPS = ("goal", "main", "near", "beyond", "count")


def _spec(
    name: str, placeholder_class: PlaceholderClass, feature: str, group: str | None = None
) -> PlaceholderSpec:
    return PlaceholderSpec(
        name=name,
        placeholder_class=placeholder_class,
        feature=feature,
        group=group,
        required=group in REQUIRED_GROUPS,
    )


_N = PlaceholderClass.NEUTRAL
_A = PlaceholderClass.ALLOCENTRIC
_E = PlaceholderClass.EGOCENTRIC

PLACEHOLDERS: dict[str, PlaceholderSpec] = {
    spec.name: spec
    for spec in (
        _spec("END_POINT", _N, "goal", "goal"),
        _spec("MAIN_PIVOT", _N, "main_pivots[0]", "main"),
        _spec("MAIN_NEAR_PIVOT", _N, "main_pivots[-1]", "main"),
        _spec("NEAR_PIVOT", _N, "near[0]", "near"),
        _spec("BEYOND_PIVOT", _N, "beyond", "beyond"),
        _spec("NUMBER_INTERSECTIONS", _N, "n_intersections", "count"),
        _spec("NUMBER_BLOCKS", _N, "n_blocks", "count"),
        _spec("CARDINAL_DIRECTION", _A, "cardinal_start_to_goal"),
        _spec("MAIN_PIVOT_DIRECTION", _A, "cardinal_pivot_to_goal[main_pivots[0]]"),
        _spec("NEAR_PIVOT_DIRECTION", _A, "cardinal_pivot_to_goal[near[0]]"),
        _spec("GOAL_CORNER", _A, "block_position_allo"),
        _spec("GOAL_POSITION", _E, "block_position_ego"),
        _spec("EGO_SIDE", _E, "goal_side"),
        _spec("MAIN_PIVOT_SIDE", _E, "ego_side[main_pivots[0]]"),
        _spec("NEAR_PIVOT_SIDE", _E, "ego_side[near[0]]"),
    )
}


def placeholder_class(
    name: str, registry: Mapping[str, PlaceholderSpec] = PLACEHOLDERS
) -> PlaceholderClass:
    return registry[name].placeholder_class


def classify_style(
    placeholders: Iterable[str], registry: Mapping[str, PlaceholderSpec] = PLACEHOLDERS
) -> TemplateStyle:
    """Style from the classes of the placeholders used."""
    classes = {registry[p].placeholder_class for p in placeholders}
    allo = PlaceholderClass.ALLOCENTRIC in classes
    ego = PlaceholderClass.EGOCENTRIC in classes
    if allo and ego:
        return TemplateStyle.MIXED
    if allo:
        return TemplateStyle.ALLOCENTRIC
    if ego:
        return TemplateStyle.EGOCENTRIC
    return TemplateStyle.NEUTRAL


def required_groups(
    registry: Mapping[str, PlaceholderSpec] = PLACEHOLDERS,
) -> dict[str, frozenset[str]]:
    """Members of each required group."""
    groups: dict[str, set[str]] = {}
    for spec in registry.values():
        if spec.required and spec.group is not None:
            groups.setdefault(spec.group, set()).add(spec.name)
    return {group: frozenset(members) for group, members in groups.items()}
