"""
Application settings using Pydantic Settings.

Configuration hierarchy (highest priority first):
1. Command-line flags
2. YAML run configuration (--config)
3. Environment variables
4. .env file
5. Default values
"""

import os
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Annotated, Any

from pydantic import Field, field_validator, model_validator
from pydantic_settings import BaseSettings, NoDecode, SettingsConfigDict


class Environment(str, Enum):
    """Application environment."""

    DEVELOPMENT = "development"
    PRODUCTION = "production"
    TESTING = "testing"


class LogLevel(str, Enum):
    """Log level options."""

    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


class WorkerKind(str, Enum):
    """How `--jobs` workers run; process workers need the fork start method."""

    THREAD = "thread"
    PROCESS = "process"


def default_grammar_path() -> Path:
    """Path of the grammar shipped with the package."""
    return Path(str(resources.files("navsynth.grammar").joinpath("data/default.cfg")))


class MapSettings(BaseSettings):
    """Map bundle loading and routing."""

    model_config = SettingsConfigDict(
        env_prefix="NAVSYNTH_MAP_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    snap_tolerance_m: float = Field(
        default=500.0, gt=0.0, description="Max distance from a query point to its street node"
    )
    length_tolerance: float = Field(
        default=0.01, ge=0.0, le=1.0, description="Relative tolerance for stored edge lengths"
    )


class SamplingSettings(BaseSettings):
    """Path sampling and landmark selection."""

    model_config = SettingsConfigDict(
        env_prefix="NAVSYNTH_SAMPLING_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    min_start_distance_m: float = Field(default=200.0, ge=0.0)
    max_start_distance_m: float = Field(default=2000.0, gt=0.0)
    max_goal_extent_m: float = Field(default=100.0, ge=0.0)
    near_radius_m: float = Field(default=100.0, gt=0.0)
    route_corridor_m: float = Field(default=50.0, gt=0.0)
    proper_name_distance_m: float = Field(
        default=200.0, ge=0.0, description="Landmarks closer to the goal are never named"
    )
    beyond_max_distance_m: float = Field(default=400.0, gt=0.0)
    block_near_fraction: float = Field(default=1 / 3, gt=0.0, lt=1.0)
    block_far_fraction: float = Field(default=2 / 3, gt=0.0, lt=1.0)

    @model_validator(mode="after")
    def check_ranges(self) -> "SamplingSettings":
        if self.min_start_distance_m >= self.max_start_distance_m:
            raise ValueError("min_start_distance_m must be below max_start_distance_m")
        if self.block_near_fraction >= self.block_far_fraction:
            raise ValueError("block_near_fraction must be below block_far_fraction")
        return self


class GenerationSettings(BaseSettings):
    """Dataset generation."""

    model_config = SettingsConfigDict(
        env_prefix="NAVSYNTH_GENERATION_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    retries: int = Field(default=50, ge=0, description="Resamples before a record is missed")
    template_cap: int = Field(default=10_000_000, ge=1)
    jobs: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    executor: WorkerKind = Field(default=WorkerKind.THREAD, description="thread or process")
    rewrite_batch_size: int = Field(default=64, ge=1)


class RewriterSettings(BaseSettings):
    """Instruction rewriter used by prompt mode."""

    model_config = SettingsConfigDict(
        env_prefix="NAVSYNTH_REWRITER_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    spec: str = Field(
        default="identity", description="identity, fixture:PATH or http:URL"
    )
    token_env: str = Field(
        default="NAVSYNTH_REWRITER_TOKEN", description="Env var holding the HTTP bearer token"
    )
    timeout: int = Field(default=60, ge=1)
    max_retries: int = Field(default=3, ge=0)
    retry_delay: float = Field(default=1.0, ge=0.0)
    max_concurrency: int = Field(default=8, ge=1)


class MetricsSettings(BaseSettings):
    """Evaluation constants."""

    model_config = SettingsConfigDict(
        env_prefix="NAVSYNTH_METRICS_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    epsilon: float = Field(default=1e-5, gt=0.0)
    h_max_m: float = Field(default=20_037_000.0, gt=0.0)
    radii: Annotated[list[float], NoDecode] = Field(default=[100.0, 250.0])
    baseline_radius_m: float = Field(default=1000.0, gt=0.0)
    cdf_max_distance_m: float = Field(default=2000.0, gt=0.0)
    cdf_steps: int = Field(default=101, ge=2)

    @field_validator("radii", mode="before")
    @classmethod
    def parse_radii(cls, v: Any) -> Any:
        """Parse radii from comma-separated string."""
        if isinstance(v, str):
            return [float(item.strip()) for item in v.split(",") if item.strip()]
        return v


class LoggingSettings(BaseSettings):
    """Logging configuration."""

    model_config = SettingsConfigDict(
        env_prefix="NAVSYNTH_LOG_",
        extra="ignore",
    )

    level: LogLevel = Field(default=LogLevel.INFO)
    format: str = Field(default="text", description="Log format: json or text")
    file: str | None = Field(default=None, description="Log file path")
    include_caller: bool = Field(default=False)

    @field_validator("format")
    @classmethod
    def check_format(cls, v: str) -> str:
        if v not in ("json", "text"):
            raise ValueError(f"log format must be 'json' or 'text', got {v!r}")
        return v


class AppSettings(BaseSettings):
    """
    Main application settings.

    Aggregates all setting categories and provides unified access.
    """

    model_config = SettingsConfigDict(
        env_prefix="NAVSYNTH_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    environment: Environment = Field(default=Environment.DEVELOPMENT)
    debug: bool = Field(default=False)

    grammar_path: Path = Field(
        default_factory=default_grammar_path,
        description="Grammar used by the cfg generation modes",
    )

    # Nested settings
    map: MapSettings = Field(default_factory=MapSettings)
    sampling: SamplingSettings = Field(default_factory=SamplingSettings)
    generation: GenerationSettings = Field(default_factory=GenerationSettings)
    rewriter: RewriterSettings = Field(default_factory=RewriterSettings)
    metrics: MetricsSettings = Field(default_factory=MetricsSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    @field_validator("grammar_path", mode="before")
    @classmethod
    def parse_path(cls, v: Any) -> Any:
        """Convert string to Path."""
        if isinstance(v, str):
            return Path(v)
        return v

    @property
    def is_production(self) -> bool:
        return self.environment == Environment.PRODUCTION

    def with_overrides(self, overrides: dict[str, Any]) -> "AppSettings":
        """
        Return a copy with nested sections updated from a plain mapping.

        Section keys (`sampling`, `generation`, ...) take a mapping of field
        values; top-level keys replace the field directly. Values are validated.
        """
        data = self.model_dump()
        for key, value in overrides.items():
            if isinstance(value, dict) and isinstance(data.get(key), dict):
                data[key] = {**data[key], **value}
            else:
                data[key] = value
        return AppSettings.model_validate(
            {
                **data,
                "map": MapSettings.model_validate(data["map"]),
                "sampling": SamplingSettings.model_validate(data["sampling"]),
                "generation": GenerationSettings.model_validate(data["generation"]),
                "rewriter": RewriterSettings.model_validate(data["rewriter"]),
                "metrics": MetricsSettings.model_validate(data["metrics"]),
                "logging": LoggingSettings.model_validate(data["logging"]),
            }
        )


@lru_cache
def get_settings() -> AppSettings:
    """
    Get application settings (singleton).

    Returns cached settings instance, creating it if necessary.
    """
    return AppSettings()


def reload_settings() -> AppSettings:
    """
    Reload settings (useful for testing).

    Clears cache and creates new settings instance.
    """
    get_settings.cache_clear()
    return get_settings()


def load_yaml_config(config_path: str | Path) -> dict[str, Any]:
    """
    Load a YAML run configuration.

    Top-level keys mirror the AppSettings sections.
    """
    import yaml

    with open(config_path, encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"{config_path}: run configuration must be a mapping")
    return data
