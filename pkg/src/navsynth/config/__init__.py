"""
Configuration management with validation.

Settings come from pydantic-settings classes (environment variables and a
.env file) and can be overridden by a YAML run configuration.
"""

from navsynth.config.settings import (
    AppSettings,
    Environment,
    GenerationSettings,
    LoggingSettings,
    LogLevel,
    MapSettings,
    MetricsSettings,
    RewriterSettings,
    SamplingSettings,
    WorkerKind,
    default_grammar_path,
    get_settings,
    load_yaml_config,
    reload_settings,
)

__all__ = [
    "AppSettings",
    "Environment",
    "LogLevel",
    "MapSettings",
    "SamplingSettings",
    "GenerationSettings",
    "RewriterSettings",
    "MetricsSettings",
    "LoggingSettings",
    "WorkerKind",
    "default_grammar_path",
    "get_settings",
    "reload_settings",
    "load_yaml_config",
]
