"""
Map bundle loading and validation.

A bundle is two JSON Lines files: entities and streets (node and edge
records). Every problem found is collected as a MapDiagnostic, so a single
validation pass reports all of them.
"""

import json
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from navsynth.config import MapSettings
from navsynth.exceptions import BundleParseError, BundleValidationError
from navsynth.geo.geodesy import haversine_distance
from navsynth.logging import get_logger
from navsynth.mapgraph.bundle import MapBundle, StreetSegment
from navsynth.models.diagnostics import MapDiagnostic, Severity
from navsynth.models.geo import GeoPoint
from navsynth.models.mapdata import Entity, StreetEdge, StreetNode


logger = get_logger(__name__)

# diagnostic codes that mean a record could not be read at all
PARSE_CODES = frozenset(
    {"invalid_encoding", "invalid_json", "missing_field", "invalid_field", "unknown_record_type"}
)

NumberedRecord = tuple[int, Any]


@dataclass
class BundleReport:
    """Outcome of validating a bundle: the bundle (when usable) and all diagnostics."""

    bundle: MapBundle | None
    diagnostics: list[MapDiagnostic] = field(default_factory=list)

    @property
    def errors(self) -> list[MapDiagnostic]:
        return [d for d in self.diagnostics if d.severity.is_blocking]

    @property
    def is_clean(self) -> bool:
        return not self.errors


def read_jsonl(path: str | Path) -> Iterator[NumberedRecord]:
    """
    Yield (line number, raw text) for each non-blank line.

    Lines are decoded one at a time; a line that is not valid UTF-8 yields
    its UnicodeDecodeError in place of the text.
    """
    with open(path, "rb") as f:
        for line_no, data in enumerate(f, start=1):
            try:
                line = data.decode("utf-8")
            except UnicodeDecodeError as e:
                yield line_no, e
                continue
            if line.strip():
                yield line_no, line


def _decode(
    raw: Any, file: str, line: int, diagnostics: list[MapDiagnostic]
) -> dict[str, Any] | None:
    if isinstance(raw, dict):
        return raw
    if isinstance(raw, UnicodeDecodeError):
        diagnostics.append(
            MapDiagnostic(
                code="invalid_encoding",
                message=f"invalid UTF-8 at byte {raw.start}: {raw.reason}",
                file=file,
                line=line,
            )
        )
        return None
    try:
        value = json.loads(raw)
    except json.JSONDecodeError as e:
        diagnostics.append(
            MapDiagnostic(code="invalid_json", message=str(e), file=file, line=line)
        )
        return None
    if not isinstance(value, dict):
        diagnostics.append(
            MapDiagnostic(
                code="invalid_json", message="record is not a JSON object", file=file, line=line
            )
        )
        return None
    return value


def _validation_diagnostics(
    exc: ValidationError, file: str, line: int
) -> list[MapDiagnostic]:
    found = []
    for err in exc.errors():
        loc = ".".join(str(part) for part in err["loc"]) or None
        message = err["msg"]
        if err["type"] == "missing":
            code = "missing_field"
        elif "not closed" in message:
            code = "open_ring"
        elif "polygon ring" in message or "point geometry" in message:
            code = "invalid_geometry"
        else:
            code = "invalid_field"
        found.append(
            MapDiagnostic(code=code, message=message, file=file, line=line, field=loc)
        )
    return found


def _parse_entities(
    records: Iterable[NumberedRecord], file: str, diagnostics: list[MapDiagnostic]
) -> list[Entity]:
    entities: dict[str, Entity] = {}
    for line, raw in records:
        data = _decode(raw, file, line, diagnostics)
        if data is None:
            continue
        try:
            entity = Entity.model_validate(data)
        except ValidationError as e:
            diagnostics.extend(_validation_diagnostics(e, file, line))
            continue
        if entity.id in entities:
            diagnostics.append(
                MapDiagnostic(
                    code="duplicate_entity",
                    message=f"entity id {entity.id!r} defined twice",
                    file=file,
                    line=line,
                    field="id",
                )
            )
            continue
        entities[entity.id] = entity
    return list(entities.values())


def _parse_streets(
    records: Iterable[NumberedRecord],
    file: str,
    diagnostics: list[MapDiagnostic],
    length_tolerance: float,
) -> tuple[dict[str, GeoPoint], list[StreetSegment]]:
    nodes: dict[str, GeoPoint] = {}
    raw_edges: list[tuple[int, StreetEdge]] = []

    for line, raw in records:
        data = _decode(raw, file, line, diagnostics)
        if data is None:
            continue
        kind = data.get("type")
        model: type[StreetNode] | type[StreetEdge]
        if kind == "node":
            model = StreetNode
        elif kind == "edge":
            model = StreetEdge
        else:
            diagnostics.append(
                MapDiagnostic(
                    code="unknown_record_type" if kind is not None else "missing_field",
                    message=f"expected type 'node' or 'edge', got {kind!r}",
                    file=file,
                    line=line,
                    field="type",
                )
            )
            continue
        try:
            record = model.model_validate(data)
        except ValidationError as e:
            diagnostics.extend(_validation_diagnostics(e, file, line))
            continue
        if isinstance(record, StreetNode):
            if record.id in nodes:
                diagnostics.append(
                    MapDiagnostic(
                        code="duplicate_node",
                        message=f"node id {record.id!r} defined twice",
                        file=file,
                        line=line,
                        field="id",
                    )
                )
                continue
            nodes[record.id] = record.coord
        else:
            raw_edges.append((line, record))

    # edges may precede the nodes they reference, so check them after the full pass
    edges: list[StreetSegment] = []
    seen: set[tuple[str, str]] = set()
    for line, edge in raw_edges:
        missing = [n for n in (edge.u, edge.v) if n not in nodes]
        if missing:
            diagnostics.append(
                MapDiagnostic(
                    code="unknown_node",
                    message=f"edge references undefined node(s) {', '.join(missing)}",
                    file=file,
                    line=line,
                    field="u" if edge.u in missing else "v",
                )
            )
            continue
        if edge.u == edge.v:
            diagnostics.append(
                MapDiagnostic(
                    code="self_loop",
                    message=f"edge connects node {edge.u!r} to itself",
                    file=file,
                    line=line,
                )
            )
            continue
        key = (min(edge.u, edge.v), max(edge.u, edge.v))
        if key in seen:
            diagnostics.append(
                MapDiagnostic(
                    code="duplicate_edge",
                    severity=Severity.WARNING,
                    message=f"edge {edge.u}-{edge.v} defined twice; first kept",
                    file=file,
                    line=line,
                )
            )
            continue
        seen.add(key)
        computed = haversine_distance(nodes[edge.u], nodes[edge.v])
        if edge.length is not None and abs(edge.length - computed) > length_tolerance * max(
            computed, 1e-9
        ):
            diagnostics.append(
                MapDiagnostic(
                    code="edge_length_mismatch",
                    message=(
                        f"stored length {edge.length:.3f} m differs from computed "
                        f"{computed:.3f} m by more than {length_tolerance:.1%}"
                    ),
                    file=file,
                    line=line,
                    field="length",
                    details={"stored_m": edge.length, "computed_m": computed},
                )
            )
            continue
        edges.append(StreetSegment(u=edge.u, v=edge.v, street=edge.street, length=computed))
    return nodes, edges


def build_bundle(
    entity_records: Iterable[NumberedRecord],
    street_records: Iterable[NumberedRecord],
    entities_source: str = "entities.jsonl",
    streets_source: str = "streets.jsonl",
    settings: MapSettings | None = None,
) -> BundleReport:
    """
    Validate raw records and build a bundle.

    Records are (line number, JSON text or already-decoded dict) pairs. The
    bundle is None when any blocking diagnostic was found.
    """
    settings = settings or MapSettings()
    diagnostics: list[MapDiagnostic] = []

    entities = _parse_entities(entity_records, entities_source, diagnostics)
    nodes, edges = _parse_streets(
        street_records, streets_source, diagnostics, settings.length_tolerance
    )

    if not nodes:
        diagnostics.append(
            MapDiagnostic(
                code="empty_graph",
                severity=Severity.WARNING,
                message="street graph has no nodes; routing is impossible",
                file=streets_source,
            )
        )

    if any(d.severity.is_blocking for d in diagnostics):
        return BundleReport(bundle=None, diagnostics=diagnostics)

    bundle = MapBundle(entities, nodes, edges)
    components = bundle.connected_components()
    if components > 1:
        diagnostics.append(
            MapDiagnostic(
                code="disconnected_graph",
                severity=Severity.WARNING,
                message=f"street graph has {components} connected components",
                file=streets_source,
                details={"components": components},
            )
        )
    return BundleReport(bundle=bundle, diagnostics=diagnostics)


def validate_bundle(
    entities_path: str | Path,
    streets_path: str | Path,
    settings: MapSettings | None = None,
) -> BundleReport:
    """Run every load-time check on a bundle on disk."""
    return build_bundle(
        read_jsonl(entities_path),
        read_jsonl(streets_path),
        entities_source=str(entities_path),
        streets_source=str(streets_path),
        settings=settings,
    )


def load_bundle(
    entities_path: str | Path,
    streets_path: str | Path,
    settings: MapSettings | None = None,
) -> MapBundle:
    """
    Load and validate a map bundle.

    Raises:
        BundleParseError: a record could not be parsed (first one reported)
        BundleValidationError: a load-time invariant is violated
    """
    report = validate_bundle(entities_path, streets_path, settings)
    errors = report.errors
    if errors:
        first = errors[0]
        if first.code in PARSE_CODES:
            raise BundleParseError(
                first.message,
                file=first.file or "",
                line=first.line or 0,
                field=first.field,
                diagnostics=report.diagnostics,
            )
        raise BundleValidationError(
            f"{len(errors)} validation error(s); first: {first.to_string()}",
            diagnostics=report.diagnostics,
        )
    for warning in report.diagnostics:
        logger.warning("Map bundle warning", diagnostic=warning.to_string())

    bundle = report.bundle
    if bundle is None:
        raise BundleValidationError("bundle could not be built", diagnostics=report.diagnostics)
    logger.info(
        "Map bundle loaded",
        entities=len(bundle.entities),
        nodes=bundle.node_count,
        edges=bundle.edge_count,
    )
    return bundle
