"""
A path sample together with everything needed to describe it.
"""

from dataclasses import dataclass
from typing import Any

from navsynth.config import SamplingSettings
from navsynth.exceptions import UnnameableEntityError
from navsynth.generator.instantiate import ROLE_PLACEHOLDERS, role_names
from navsynth.mapgraph.bundle import MapBundle
from navsynth.models.features import SpatialFeatures
from navsynth.models.mapdata import Entity
from navsynth.models.sampling import DisplayName, EntityGroup, Landmark, LandmarkSet, PathSample
from navsynth.relations.features import compute_features
from navsynth.sampler.naming import display_name


@dataclass(frozen=True)
class GroundedSample:
    sample: PathSample
    landmarks: LandmarkSet
    features: SpatialFeatures
    names: dict[str, DisplayName]


def ground_sample(
    bundle: MapBundle,
    sample: PathSample,
    landmarks: LandmarkSet,
    settings: SamplingSettings | None = None,
) -> GroundedSample:
    """
    Compute features and role names for a sample.

    Raises:
        DegenerateRouteError: the route has no length
        UnnameableEntityError: a role cannot be named
    """
    settings = settings or SamplingSettings()
    features = compute_features(bundle, sample, landmarks, settings)
    names = role_names(sample.goal, landmarks, settings.proper_name_distance_m)
    return GroundedSample(sample=sample, landmarks=landmarks, features=features, names=names)


def entity_surface(entity: Entity, goal: Entity, proper_name_distance: float) -> str:
    try:
        return display_name(entity, goal, proper_name_distance).surface
    except UnnameableEntityError:
        return entity.name or entity.id


def _landmark_entry(item: Landmark, goal: Entity, proper_name_distance: float) -> dict[str, Any]:
    members = list(item.members) if isinstance(item, EntityGroup) else [item.id]
    return {
        "key": item.key,
        "members": members,
        "surface": display_name(item, goal, proper_name_distance).surface,
    }


def landmarks_record(
    grounded: GroundedSample, mentioned: set[str], proper_name_distance: float = 200.0
) -> dict[str, Any]:
    """Serializable ids and surface forms of the landmark classes."""
    sample, landmarks = grounded.sample, grounded.landmarks
    goal = sample.goal
    beyond = landmarks.beyond
    return {
        "start": {
            "id": sample.start.id,
            "surface": entity_surface(sample.start, goal, proper_name_distance),
        },
        "goal": {"id": goal.id, "surface": grounded.names["END_POINT"].surface},
        "near": [_landmark_entry(i, goal, proper_name_distance) for i in landmarks.near],
        "main_pivots": [
            _landmark_entry(i, goal, proper_name_distance) for i in landmarks.main_pivots
        ],
        "beyond": (
            _landmark_entry(beyond, goal, proper_name_distance) if beyond is not None else None
        ),
        "mentioned": [role for role in ROLE_PLACEHOLDERS if role in mentioned],
    }
