"""
Data models for navsynth.
"""

from navsynth.models.diagnostics import GroundingReport, MapDiagnostic, Severity, SlotCheck
from navsynth.models.features import SpatialFeatures
from navsynth.models.geo import (
    Bearing,
    BlockPosition,
    CardinalDirection,
    EgocentricSide,
    GeoPoint,
)
from navsynth.models.grammar import (
    Grammar,
    LiteralToken,
    NonterminalRef,
    PlaceholderClass,
    PlaceholderSpec,
    PlaceholderToken,
    Production,
    Template,
    TemplateStyle,
)
from navsynth.models.mapdata import (
    Entity,
    Geometry,
    GeometryType,
    ProminenceLevel,
    Route,
    StreetEdge,
    StreetNode,
)
from navsynth.models.metrics import (
    BaselinePrediction,
    CdfPoint,
    EvalPair,
    MetricsConfig,
    MetricsReport,
)
from navsynth.models.records import (
    DatasetStats,
    GenerationMode,
    InstructionRecord,
    RunManifest,
)
from navsynth.models.sampling import (
    DisplayName,
    EntityGroup,
    Landmark,
    LandmarkSet,
    NameForm,
    PathSample,
)


__all__ = [
    # Geodesy
    "Bearing",
    "BlockPosition",
    "CardinalDirection",
    "EgocentricSide",
    "GeoPoint",
    # Map
    "Entity",
    "Geometry",
    "GeometryType",
    "ProminenceLevel",
    "Route",
    "StreetEdge",
    "StreetNode",
    # Sampling
    "DisplayName",
    "EntityGroup",
    "Landmark",
    "LandmarkSet",
    "NameForm",
    "PathSample",
    # Relations
    "SpatialFeatures",
    # Grammar
    "Grammar",
    "LiteralToken",
    "NonterminalRef",
    "PlaceholderClass",
    "PlaceholderSpec",
    "PlaceholderToken",
    "Production",
    "Template",
    "TemplateStyle",
    # Records
    "DatasetStats",
    "GenerationMode",
    "InstructionRecord",
    "RunManifest",
    # Metrics
    "BaselinePrediction",
    "CdfPoint",
    "EvalPair",
    "MetricsConfig",
    "MetricsReport",
    # Diagnostics
    "GroundingReport",
    "MapDiagnostic",
    "Severity",
    "SlotCheck",
]
