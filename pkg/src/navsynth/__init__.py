"""
navsynth: grounded navigation-instruction synthesis

Generates synthetic navigation instructions for the rendezvous task: given a
map, a start point and an instruction, find the goal. Instructions are built
from a map bundle (tagged entities plus a street graph) and a context-free
template grammar, so every direction, count and landmark in the text is
computed from geometry.

This package provides:
- Map bundle loading with load-time diagnostics, spatial index and routing
- Goal/start/path sampling and landmark selection by prominence
- Spatial relations: cardinal directions, egocentric sides, block analysis
- A template grammar engine with enumeration, style filters and minimal cover
- Dataset generation for template, dummy and rewritten-prompt variants
- Grounding verification of generated records
- Error-distance metrics, a landmark baseline and CDF export

Version: 0.1.0
"""

__version__ = "0.1.0"
__license__ = "MIT"

# Configuration
from navsynth.config import AppSettings, get_settings

# Errors
from navsynth.exceptions import NavSynthError

# Map and sampling
from navsynth.mapgraph import MapBundle, build_grid_city, load_bundle
from navsynth.sampler import Walker, pick_landmarks
from navsynth.relations import compute_features

# Grammar
from navsynth.grammar import (
    TemplatePool,
    enumerate_templates,
    minimal_cover,
    parse_grammar,
)

# Generation
from navsynth.generator import (
    DatasetGenerator,
    generate_dataset,
    instantiate,
    verify_grounding,
)

# Metrics
from navsynth.metrics import cdf_export, evaluate, landmark_baseline

# Models
from navsynth.models import (
    GenerationMode,
    InstructionRecord,
    MetricsReport,
    SpatialFeatures,
)

# Logging
from navsynth.logging import get_logger, setup_logging

__all__ = [
    # Version
    "__version__",
    # Configuration
    "AppSettings",
    "get_settings",
    # Errors
    "NavSynthError",
    # Map and sampling
    "MapBundle",
    "load_bundle",
    "build_grid_city",
    "Walker",
    "pick_landmarks",
    "compute_features",
    # Grammar
    "parse_grammar",
    "enumerate_templates",
    "minimal_cover",
    "TemplatePool",
    # Generation
    "DatasetGenerator",
    "generate_dataset",
    "instantiate",
    "verify_grounding",
    # Metrics
    "evaluate",
    "cdf_export",
    "landmark_baseline",
    # Models
    "GenerationMode",
    "InstructionRecord",
    "MetricsReport",
    "SpatialFeatures",
    # Logging
    "get_logger",
    "setup_logging",
]
