"""
In-memory map bundle: entities, street graph and spatial indexes.

Both indexes are KD-trees over unit-sphere vectors. A great-circle radius maps
to a chord length, so ball queries return a superset that is then filtered
by haversine distance over numpy arrays.
"""

import math
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass

import networkx as nx
import numpy as np
from scipy.spatial import cKDTree

from navsynth.geo.geodesy import EARTH_RADIUS_M, haversine_distance, haversine_distances
from navsynth.logging import get_logger
from navsynth.mapgraph.prominence import prominence
from navsynth.models.geo import GeoPoint
from navsynth.models.mapdata import Entity, ProminenceLevel


logger = get_logger(__name__)

EntityPredicate = Callable[[Entity], bool]

# vectorized distances this close to a radius are recomputed with the scalar formula
_EDGE_M = 1e-6


@dataclass(frozen=True)
class StreetSegment:
    """Validated undirected street edge."""

    u: str
    v: str
    street: str | None
    length: float


def _unit_vectors(points: Iterable[GeoPoint]) -> np.ndarray:
    coords = np.array([(p.lat, p.lon) for p in points], dtype=float).reshape(-1, 2)
    lat = np.radians(coords[:, 0])
    lon = np.radians(coords[:, 1])
    return np.column_stack((np.cos(lat) * np.cos(lon), np.cos(lat) * np.sin(lon), np.sin(lat)))


def _chord(radius_m: float) -> float:
    angle = min(radius_m / EARTH_RADIUS_M, math.pi)
    # slack covers float error in the vector conversion
    return 2.0 * math.sin(angle / 2.0) * (1.0 + 1e-9) + 1e-12


class MapBundle:
    """
    Immutable map knowledge graph.

    Nodes and edges are inserted into the networkx graph sorted by id so that
    traversal order, and therefore every tie-break, is platform independent.
    All query methods are read-only and safe to call from several threads.
    """

    def __init__(
        self,
        entities: Iterable[Entity],
        nodes: Mapping[str, GeoPoint],
        edges: Iterable[StreetSegment],
    ):
        self._entities: dict[str, Entity] = {e.id: e for e in sorted(entities, key=lambda e: e.id)}
        self._entity_list = list(self._entities.values())
        self._entity_index = {e.id: i for i, e in enumerate(self._entity_list)}
        self._lats = np.array([e.centroid.lat for e in self._entity_list], dtype=float)
        self._lons = np.array([e.centroid.lon for e in self._entity_list], dtype=float)
        self._prominence = {e.id: prominence(e) for e in self._entity_list}

        graph = nx.Graph()
        for node_id in sorted(nodes):
            graph.add_node(node_id, point=nodes[node_id])
        for seg in sorted(edges, key=lambda s: (min(s.u, s.v), max(s.u, s.v))):
            graph.add_edge(seg.u, seg.v, length=seg.length, street=seg.street)
        self._graph = graph
        self._node_ids = list(graph.nodes)

        self._entity_tree = (
            cKDTree(_unit_vectors(e.centroid for e in self._entity_list))
            if self._entity_list
            else None
        )
        self._node_tree = (
            cKDTree(_unit_vectors(graph.nodes[n]["point"] for n in self._node_ids))
            if self._node_ids
            else None
        )
        logger.debug(
            "Map bundle indexed",
            entities=len(self._entities),
            nodes=graph.number_of_nodes(),
            edges=graph.number_of_edges(),
        )

    @property
    def entities(self) -> Mapping[str, Entity]:
        return self._entities

    @property
    def entity_list(self) -> list[Entity]:
        """Entities sorted by id; array indices below refer to this order."""
        return self._entity_list

    @property
    def entity_coords(self) -> tuple[np.ndarray, np.ndarray]:
        """Centroid latitudes and longitudes in entity-list order."""
        return self._lats, self._lons

    def entity_index(self, entity_id: str) -> int | None:
        return self._entity_index.get(entity_id)

    @property
    def graph(self) -> nx.Graph:
        return self._graph

    @property
    def node_count(self) -> int:
        return self._graph.number_of_nodes()

    @property
    def edge_count(self) -> int:
        return self._graph.number_of_edges()

    def entity(self, entity_id: str) -> Entity | None:
        return self._entities.get(entity_id)

    def node_point(self, node_id: str) -> GeoPoint:
        return self._graph.nodes[node_id]["point"]

    def degree(self, node_id: str) -> int:
        return int(self._graph.degree[node_id])

    def street_of(self, u: str, v: str) -> str | None:
        return self._graph.edges[u, v]["street"]

    def prominence_of(self, entity: Entity) -> ProminenceLevel:
        level = self._prominence.get(entity.id)
        return level if level is not None else prominence(entity)

    def candidate_indices(self, p: GeoPoint, radius: float) -> np.ndarray:
        """Entity indices from the tree ball query, a superset of those within `radius`."""
        if self._entity_tree is None:
            return np.empty(0, dtype=np.intp)
        hits = self._entity_tree.query_ball_point(_unit_vectors([p])[0], _chord(radius))
        return np.asarray(hits, dtype=np.intp)

    def entities_within(
        self, p: GeoPoint, radius: float, min_radius: float = 0.0
    ) -> tuple[np.ndarray, np.ndarray]:
        """
        Indices and distances of entities between `min_radius` and `radius`
        meters of `p`, both inclusive.

        Sorted by distance, ties by entity id.
        """
        if radius <= 0:
            raise ValueError(f"radius must be positive, got {radius}")
        idx = self.candidate_indices(p, radius)
        if idx.size == 0:
            return idx, np.empty(0)
        d = haversine_distances(p, self._lats[idx], self._lons[idx])
        edge = (np.abs(d - radius) <= _EDGE_M) | (np.abs(d - min_radius) <= _EDGE_M)
        for k in np.flatnonzero(edge):
            d[k] = haversine_distance(p, self._entity_list[idx[k]].centroid)
        keep = (d >= min_radius) & (d <= radius)
        idx, d = idx[keep], d[keep]
        order = np.lexsort((idx, d))
        return idx[order], d[order]

    def nearest_entities(
        self,
        p: GeoPoint,
        radius: float,
        predicate: EntityPredicate | None = None,
    ) -> list[Entity]:
        """
        Entities whose centroid lies within `radius` meters of `p`.

        Sorted by distance, ties by entity id.
        """
        idx, _ = self.entities_within(p, radius)
        found = [self._entity_list[i] for i in idx.tolist()]
        if predicate is None:
            return found
        return [e for e in found if predicate(e)]

    def nearest_node(self, p: GeoPoint) -> tuple[str, float] | None:
        """Closest street node to `p` and its distance; ties by node id."""
        if self._node_tree is None:
            return None
        k = min(8, len(self._node_ids))
        _, idx = self._node_tree.query(_unit_vectors([p])[0], k=k)
        candidates = np.atleast_1d(idx)
        best = min(
            (haversine_distance(p, self.node_point(self._node_ids[i])), self._node_ids[i])
            for i in candidates
            if i < len(self._node_ids)
        )
        return best[1], best[0]

    def connected_components(self) -> int:
        if self.node_count == 0:
            return 0
        return nx.number_connected_components(self._graph)
