"""
Path sampling: a small goal entity, a start entity in a distance band around
it, and the shortest street route between them.
"""

import random

import numpy as np

from navsynth.config import SamplingSettings
from navsynth.exceptions import NoEligibleGoalError, NoEligibleStartError
from navsynth.logging import get_logger
from navsynth.mapgraph.bundle import MapBundle
from navsynth.mapgraph.routing import DEFAULT_SNAP_TOLERANCE_M, shortest_path
from navsynth.models.mapdata import Entity
from navsynth.models.sampling import PathSample
from navsynth.sampler.naming import entity_type_noun, type_of


logger = get_logger(__name__)


def has_name_or_type(entity: Entity) -> bool:
    return entity.name is not None or type_of(entity) is not None


class Walker:
    """
    Draws path samples from a bundle.

    The goal must be small and describable by its type, since it is always
    mentioned with its type noun. All draws use the caller's RNG only.
    """

    def __init__(
        self,
        bundle: MapBundle,
        settings: SamplingSettings | None = None,
        snap_tolerance: float = DEFAULT_SNAP_TOLERANCE_M,
    ):
        self.bundle = bundle
        self.settings = settings or SamplingSettings()
        self.snap_tolerance = snap_tolerance
        self._goals = [
            e
            for e in bundle.entities.values()
            if e.extent_radius <= self.settings.max_goal_extent_m
            and entity_type_noun(e) is not None
        ]
        self._start_ok = np.array([has_name_or_type(e) for e in bundle.entity_list], dtype=bool)

    @property
    def eligible_goals(self) -> list[Entity]:
        """Goal candidates sorted by entity id."""
        return list(self._goals)

    def sample_goal(self, rng: random.Random) -> Entity:
        if not self._goals:
            raise NoEligibleGoalError(
                f"no entity with extent <= {self.settings.max_goal_extent_m:.0f} m "
                "and a type tag in the bundle"
            )
        return rng.choice(self._goals)

    def _start_indices(self, goal: Entity) -> np.ndarray:
        idx, _ = self.bundle.entities_within(
            goal.centroid,
            self.settings.max_start_distance_m,
            min_radius=self.settings.min_start_distance_m,
        )
        goal_index = self.bundle.entity_index(goal.id)
        keep = self._start_ok[idx] & (idx != (-1 if goal_index is None else goal_index))
        return idx[keep]

    def start_candidates(self, goal: Entity) -> list[Entity]:
        """Entities in the start distance band around the goal, nearest first."""
        entities = self.bundle.entity_list
        return [entities[i] for i in self._start_indices(goal).tolist()]

    def sample_start(self, goal: Entity, rng: random.Random) -> Entity:
        candidates = self._start_indices(goal)
        if candidates.size == 0:
            raise NoEligibleStartError(
                f"no start entity {self.settings.min_start_distance_m:.0f}-"
                f"{self.settings.max_start_distance_m:.0f} m from goal {goal.id}"
            )
        return self.bundle.entity_list[rng.choice(candidates.tolist())]

    def sample_path(self, rng: random.Random, seed: int) -> PathSample:
        """
        Draw goal, then start, then route.

        Raises:
            NoEligibleGoalError: the bundle has no goal candidates
            NoEligibleStartError: the drawn goal has no start candidates
            RoutingError: the route cannot be computed
        """
        goal = self.sample_goal(rng)
        start = self.sample_start(goal, rng)
        route = shortest_path(self.bundle, start.centroid, goal.centroid, self.snap_tolerance)
        logger.debug(
            "Path sampled",
            goal=goal.id,
            start=start.id,
            route_nodes=len(route.nodes),
            route_length_m=round(route.total_length, 1),
        )
        return PathSample(start=start, goal=goal, route=route, seed=seed)
