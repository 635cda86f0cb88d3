"""
Grounding verification of generated records.

A template record is checked by re-deriving its route, features and
landmark names from the map and comparing every substituted value with the
text found in the instruction at the placeholder's position.
"""

import re
from collections.abc import Iterable, Iterator
from typing import Any

from navsynth.config import AppSettings
from navsynth.exceptions import NavSynthError, UnknownTemplateError
from navsynth.generator.instantiate import find_placeholder_residue, slot_values
from navsynth.generator.scenario import ground_sample
from navsynth.geo.geodesy import haversine_distance
from navsynth.grammar.selection import TemplatePool
from navsynth.logging import RunLedger, get_logger
from navsynth.mapgraph.bundle import MapBundle
from navsynth.mapgraph.routing import shortest_path
from navsynth.models.diagnostics import GroundingReport
from navsynth.models.grammar import LiteralToken, Template
from navsynth.models.mapdata import Entity
from navsynth.models.records import InstructionRecord
from navsynth.models.sampling import Landmark, LandmarkSet, PathSample
from navsynth.sampler.landmarks import make_group


logger = get_logger(__name__)

# stored coordinates are compared with recomputed ones within this distance
COORDINATE_TOLERANCE_M = 0.01

_PUNCTUATION = frozenset(".,;:!?")


def template_pattern(template: Template) -> tuple[re.Pattern[str], list[str]]:
    """
    Regex matching instructions made from a template.

    Returns the pattern and the placeholder name behind each group `P<k>`.
    """
    pieces: list[str] = []
    names: list[str] = []
    for token in template.tokens:
        if isinstance(token, LiteralToken):
            pieces.extend(re.escape(word) for word in token.text.split())
        else:
            pieces.append(f"(?P<P{len(names)}>.+?)")
            names.append(token.name)

    pattern = ""
    for piece in pieces:
        if pattern:
            starts_with_punct = piece.lstrip("\\")[:1] in _PUNCTUATION
            pattern += r"\s*" if starts_with_punct else r"\s+"
        pattern += piece
    return re.compile(pattern, re.IGNORECASE | re.DOTALL), names


def _entity(bundle: MapBundle, report: GroundingReport, entity_id: str) -> Entity | None:
    entity = bundle.entity(entity_id)
    if entity is None:
        report.add_issue("unknown_entity", f"entity {entity_id!r} is not in the bundle")
    return entity


def _landmark(
    bundle: MapBundle, report: GroundingReport, entry: dict[str, Any] | None
) -> Landmark | None:
    if not entry:
        return None
    members = [_entity(bundle, report, m) for m in entry.get("members", [])]
    if any(m is None for m in members) or not members:
        return None
    found = [m for m in members if m is not None]
    if len(found) == 1:
        return found[0]
    return make_group(found)


def _landmark_set(
    bundle: MapBundle, report: GroundingReport, stored: dict[str, Any]
) -> LandmarkSet | None:
    near = [_landmark(bundle, report, e) for e in stored.get("near", [])]
    main = [_landmark(bundle, report, e) for e in stored.get("main_pivots", [])]
    beyond = _landmark(bundle, report, stored.get("beyond"))
    if any(item is None for item in [*near, *main]) or (
        stored.get("beyond") and beyond is None
    ):
        return None
    return LandmarkSet(
        near=tuple(i for i in near if i is not None),
        main_pivots=tuple(i for i in main if i is not None),
        beyond=beyond,
    )


def verify_grounding(
    record: InstructionRecord,
    bundle: MapBundle,
    pool: TemplatePool,
    settings: AppSettings | None = None,
) -> GroundingReport:
    """
    Check a template record against the map.

    Raises:
        UnknownTemplateError: the record has no template or the template is not in the pool
    """
    if not record.mode.is_template_mode or record.template_id is None:
        raise UnknownTemplateError(
            f"record {record.id} ({record.mode.value}) was not made from a template"
        )
    template = pool.get(record.template_id)
    if template is None:
        raise UnknownTemplateError(
            f"record {record.id} references unknown template {record.template_id}"
        )
    settings = settings or AppSettings()
    report = GroundingReport(record_id=record.id, template_id=record.template_id)

    residue = find_placeholder_residue(record.instruction)
    if residue:
        report.add_issue("placeholder_residue", f"unresolved placeholders: {residue}")

    stored = record.landmarks
    start = _entity(bundle, report, stored.get("start", {}).get("id", ""))
    goal = _entity(bundle, report, stored.get("goal", {}).get("id", ""))
    if start is None or goal is None:
        return report
    for role, entity, point in (("start", start, record.start), ("goal", goal, record.goal)):
        offset = haversine_distance(entity.centroid, point)
        if offset > COORDINATE_TOLERANCE_M:
            report.add_issue(
                "coordinate_mismatch",
                f"{role} is {offset:.2f} m from entity {entity.id}",
                details={"role": role, "offset_m": offset},
            )

    try:
        route = shortest_path(
            bundle, start.centroid, goal.centroid, settings.map.snap_tolerance_m
        )
    except NavSynthError as e:
        report.add_issue("routing_error", str(e))
        return report
    same_route = len(route.polyline) == len(record.route) and all(
        haversine_distance(a, b) <= COORDINATE_TOLERANCE_M
        for a, b in zip(route.polyline, record.route)
    )
    if not same_route:
        report.add_issue(
            "route_mismatch",
            f"stored route has {len(record.route)} points, recomputed {len(route.polyline)}",
        )

    landmarks = _landmark_set(bundle, report, stored)
    if landmarks is None:
        return report
    sample = PathSample(start=start, goal=goal, route=route, seed=record.seed)
    try:
        grounded = ground_sample(bundle, sample, landmarks, settings.sampling)
    except NavSynthError as e:
        report.add_issue("feature_error", str(e))
        return report

    if record.features is not None and record.features != grounded.features.model_dump(
        mode="json"
    ):
        report.add_issue("feature_mismatch", "stored features differ from recomputed ones")

    pattern, names = template_pattern(template)
    match = pattern.fullmatch(record.instruction.strip())
    if match is None:
        report.add_issue("text_mismatch", "instruction does not follow its template")
        return report
    expected = slot_values(landmarks, grounded.features, grounded.names)
    for k, name in enumerate(names):
        report.add_slot(name, expected.get(name), match.group(f"P{k}"))
    return report


def verify_records(
    records: Iterable[InstructionRecord],
    bundle: MapBundle,
    pool: TemplatePool,
    settings: AppSettings | None = None,
    ledger: RunLedger | None = None,
) -> Iterator[GroundingReport]:
    """Grounding reports for the template records; other records are skipped."""
    checked = failed = 0
    for record in records:
        if not record.mode.is_template_mode:
            continue
        report = verify_grounding(record, bundle, pool, settings)
        checked += 1
        if not report.passed:
            failed += 1
            logger.warning("Grounding check failed", record_id=record.id)
        yield report
    (ledger or RunLedger()).log_grounding_checked(checked, failed)
