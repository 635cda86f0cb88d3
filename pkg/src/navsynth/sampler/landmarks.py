"""
Landmark selection for a sampled path.

Three classes are picked: landmarks near the goal, main pivots along the
route and one landmark beyond the goal on the goal's street. Within each
class only the most prominent level found is kept, and landmarks that are
described by type are collapsed into groups when they share a type.
"""

import random
from collections import defaultdict
from collections.abc import Iterable, Sequence

import numpy as np

from navsynth.config import SamplingSettings
from navsynth.geo.geodesy import haversine_distance, locate_on_polyline, polyline_distances
from navsynth.logging import get_logger
from navsynth.mapgraph.bundle import MapBundle
from navsynth.mapgraph.routing import street_continuation
from navsynth.models.geo import GeoPoint
from navsynth.models.mapdata import Entity
from navsynth.models.sampling import EntityGroup, Landmark, LandmarkSet, PathSample
from navsynth.sampler.naming import is_nameable, type_of


logger = get_logger(__name__)


def landmark_key(item: Landmark) -> str:
    return item.key


def landmark_point(item: Landmark) -> GeoPoint:
    return item.centroid


def make_group(members: Sequence[Entity]) -> EntityGroup:
    """Group same-type entities; the centroid is the mean of member centroids."""
    if len(members) < 2:
        raise ValueError("a group needs at least two members")
    found = type_of(members[0])
    if found is None:
        raise ValueError(f"entity {members[0].id} has no type tag to group by")
    key, value = found
    for member in members[1:]:
        if type_of(member) != found:
            raise ValueError(f"entity {member.id} does not share type {key}={value}")
    ordered = sorted(members, key=lambda e: e.id)
    return EntityGroup(
        type_key=key,
        type_tag=value,
        count=len(ordered),
        members=tuple(e.id for e in ordered),
        centroid=GeoPoint(
            lat=sum(e.centroid.lat for e in ordered) / len(ordered),
            lon=sum(e.centroid.lon for e in ordered) / len(ordered),
        ),
    )


def top_prominence(bundle: MapBundle, candidates: Iterable[Entity]) -> list[Entity]:
    """Candidates at the highest prominence level present, sorted by id."""
    items = list(candidates)
    if not items:
        return []
    best = max(bundle.prominence_of(e).rank for e in items)
    return sorted((e for e in items if bundle.prominence_of(e).rank == best), key=lambda e: e.id)


def group_by_type(
    candidates: Iterable[Entity], goal: Entity, proper_name_distance: float
) -> list[Landmark]:
    """
    Collapse type-described candidates sharing a type into groups.

    Candidates named by their proper name stay single. Output is sorted by key.
    """
    singles: list[Landmark] = []
    by_type: dict[tuple[str, str], list[Entity]] = defaultdict(list)
    for entity in candidates:
        named = (
            entity.name is not None
            and haversine_distance(entity.centroid, goal.centroid) > proper_name_distance
        )
        found = type_of(entity)
        if named or found is None:
            singles.append(entity)
        else:
            by_type[found].append(entity)
    for members in by_type.values():
        if len(members) >= 2:
            singles.append(make_group(members))
        else:
            singles.extend(members)
    return sorted(singles, key=landmark_key)


def _excluded(sample: PathSample) -> set[str]:
    return {sample.start.id, sample.goal.id}


def near_candidates(
    bundle: MapBundle, sample: PathSample, settings: SamplingSettings
) -> list[Entity]:
    goal = sample.goal
    skip = _excluded(sample)
    return bundle.nearest_entities(
        goal.centroid,
        settings.near_radius_m,
        predicate=lambda e: e.id not in skip
        and is_nameable(e, goal, settings.proper_name_distance_m),
    )


def corridor_candidates(
    bundle: MapBundle, polyline: Sequence[GeoPoint], corridor: float
) -> list[Entity]:
    """Entities whose centroid lies within `corridor` meters of the polyline, by id."""
    if len(polyline) == 1:
        segments = [(polyline[0], polyline[0])]
    else:
        segments = list(zip(polyline, polyline[1:]))
    chunks: list[np.ndarray] = []
    for a, b in segments:
        center = GeoPoint(lat=(a.lat + b.lat) / 2, lon=(a.lon + b.lon) / 2)
        reach = haversine_distance(a, b) / 2 + corridor + 1.0
        chunks.append(bundle.candidate_indices(center, reach))
    idx = np.unique(np.concatenate(chunks))
    if idx.size == 0:
        return []
    lats, lons = bundle.entity_coords
    distances = polyline_distances(polyline, lats[idx], lons[idx])
    entities = bundle.entity_list
    found: list[Entity] = []
    for i, distance in zip(idx.tolist(), distances.tolist()):
        if abs(distance - corridor) <= 1e-6:
            distance = locate_on_polyline(polyline, entities[i].centroid).distance
        if distance <= corridor:
            found.append(entities[i])
    return found


def route_candidates(
    bundle: MapBundle, sample: PathSample, settings: SamplingSettings
) -> list[Entity]:
    goal = sample.goal
    skip = _excluded(sample)
    return [
        e
        for e in corridor_candidates(bundle, sample.route.polyline, settings.route_corridor_m)
        if e.id not in skip
        and haversine_distance(e.centroid, goal.centroid) > settings.near_radius_m
        and is_nameable(e, goal, settings.proper_name_distance_m)
    ]


def beyond_candidates(
    bundle: MapBundle,
    sample: PathSample,
    settings: SamplingSettings,
    exclude: set[str] | None = None,
) -> list[Entity]:
    """
    Entities along the goal's street past the end of the route.

    A candidate must project onto the route-plus-continuation line after the
    goal does, and lie outside the near-goal disc.
    """
    route = sample.route
    continuation = street_continuation(bundle, route, settings.beyond_max_distance_m)
    if len(continuation) < 2:
        return []
    cont_line = [bundle.node_point(n) for n in continuation]
    combined = list(route.polyline) + cont_line[1:]
    goal = sample.goal
    goal_along = locate_on_polyline(combined, goal.centroid).along
    skip = _excluded(sample) | (exclude or set())

    result = []
    for e in corridor_candidates(bundle, cont_line, settings.route_corridor_m):
        if e.id in skip:
            continue
        if haversine_distance(e.centroid, goal.centroid) <= settings.near_radius_m:
            continue
        if not is_nameable(e, goal, settings.proper_name_distance_m):
            continue
        if locate_on_polyline(combined, e.centroid).along <= goal_along:
            continue
        result.append(e)
    return result


def pick_landmarks(
    bundle: MapBundle,
    sample: PathSample,
    rng: random.Random,
    settings: SamplingSettings | None = None,
) -> LandmarkSet:
    """
    Choose near, main-pivot and beyond landmarks for a path.

    Any class may come out empty. No entity appears in two classes.
    """
    settings = settings or SamplingSettings()
    goal = sample.goal
    distance = settings.proper_name_distance_m

    near = group_by_type(
        top_prominence(bundle, near_candidates(bundle, sample, settings)), goal, distance
    )
    rng.shuffle(near)

    route_line = sample.route.polyline
    main = group_by_type(
        top_prominence(bundle, route_candidates(bundle, sample, settings)), goal, distance
    )
    main.sort(
        key=lambda item: (locate_on_polyline(route_line, landmark_point(item)).along, item.key)
    )

    beyond: Landmark | None = None
    taken = LandmarkSet(near=tuple(near), main_pivots=tuple(main)).member_ids()
    beyond_pool = top_prominence(bundle, beyond_candidates(bundle, sample, settings, taken))
    if beyond_pool:
        beyond = rng.choice(beyond_pool)

    logger.debug(
        "Landmarks picked",
        near=len(near),
        main_pivots=len(main),
        beyond=beyond.key if beyond is not None else None,
    )
    return LandmarkSet(near=tuple(near), main_pivots=tuple(main), beyond=beyond)
