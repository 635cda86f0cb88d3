"""
Run configuration assembled from flags, a YAML file, the environment and defaults.
"""

from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, field_validator

from navsynth.config import AppSettings, WorkerKind
from navsynth.models.records import GenerationMode


MAX_SEED = 2**64 - 1

RUN_SECTION = "run"


class RunConfig(BaseModel):
    """Effective inputs of one command; echoed into the run manifest."""

    entities: Path | None = Field(default=None, description="entities.jsonl of the map bundle")
    streets: Path | None = Field(default=None, description="streets.jsonl of the map bundle")
    grammar: Path
    mode: GenerationMode = Field(default=GenerationMode.CFG)
    n: int = Field(default=0, ge=0, description="Number of records to generate")
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    out: Path | None = None
    retries: int = Field(default=50, ge=0)
    rewriter: str = Field(default="identity")
    radii: list[float] = Field(default_factory=lambda: [100.0, 250.0])
    jobs: int = Field(default=1, ge=1)
    executor: WorkerKind = Field(default=WorkerKind.THREAD)

    @field_validator("radii")
    @classmethod
    def check_radii(cls, v: list[float]) -> list[float]:
        if any(r < 0 for r in v):
            raise ValueError("accuracy radii must be non-negative")
        return v

    @classmethod
    def resolve(
        cls,
        settings: AppSettings,
        file_values: dict[str, Any] | None = None,
        **flags: Any,
    ) -> "RunConfig":
        """
        Merge the sources of a run, highest precedence last.

        `None` flags and empty multi-value flags count as not given.
        """
        values: dict[str, Any] = {
            "grammar": settings.grammar_path,
            "retries": settings.generation.retries,
            "rewriter": settings.rewriter.spec,
            "radii": list(settings.metrics.radii),
            "jobs": settings.generation.jobs,
            "executor": settings.generation.executor,
        }
        values.update(file_values or {})
        values.update(
            {key: value for key, value in flags.items() if value is not None and value != ()}
        )
        if isinstance(values.get("radii"), tuple):
            values["radii"] = list(values["radii"])
        return cls.model_validate(values)

    def apply(self, settings: AppSettings) -> AppSettings:
        """Settings with this run's overrides folded in."""
        return settings.with_overrides(
            {
                "grammar_path": str(self.grammar),
                "generation": {
                    "retries": self.retries,
                    "jobs": self.jobs,
                    "executor": self.executor.value,
                },
                "rewriter": {"spec": self.rewriter},
                "metrics": {"radii": self.radii},
            }
        )

    def require_bundle(self) -> tuple[Path, Path]:
        if self.entities is None or self.streets is None:
            raise ValueError("--entities and --streets are required")
        return self.entities, self.streets


def split_config_file(data: dict[str, Any]) -> tuple[dict[str, Any], dict[str, Any]]:
    """Split a YAML run configuration into (run values, settings sections)."""
    run_values = data.get(RUN_SECTION) or {}
    if not isinstance(run_values, dict):
        raise ValueError(f"'{RUN_SECTION}' section must be a mapping")
    sections = {key: value for key, value in data.items() if key != RUN_SECTION}
    return dict(run_values), sections
