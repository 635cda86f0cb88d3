"""
Evaluation models: gold/predicted pairs, metric configuration and reports.
"""

from pydantic import BaseModel, Field, model_validator

from navsynth.models.geo import GeoPoint


class EvalPair(BaseModel):
    """Gold goal location and a predicted location for one instruction."""

    model_config = {"frozen": True}

    gold: GeoPoint
    pred: GeoPoint
    id: str | None = None


class MetricsConfig(BaseModel):
    """Constants of the error-distance AUC and the accuracy radii."""

    epsilon: float = Field(default=1e-5, gt=0.0, description="Additive term inside the log")
    h_max: float = Field(
        default=20_037_000.0, gt=0.0, description="Normalizer, roughly the largest possible error"
    )
    radii: list[float] = Field(default_factory=lambda: [100.0, 250.0])

    @model_validator(mode="after")
    def check_radii(self) -> "MetricsConfig":
        if any(r < 0 for r in self.radii):
            raise ValueError("accuracy radii must be non-negative")
        return self


class MetricsReport(BaseModel):
    """Error-distance metrics over a set of predictions."""

    n: int = Field(..., ge=1)
    acc100: float = Field(..., ge=0.0, le=100.0, description="Percent within 100 m")
    acc250: float = Field(..., ge=0.0, le=100.0, description="Percent within 250 m")
    mae: float = Field(..., ge=0.0, description="Mean error in meters")
    medae: float = Field(..., ge=0.0, description="Median error in meters (upper median)")
    maxae: float = Field(..., ge=0.0, description="Maximum error in meters")
    auc: float | None = Field(default=None, description="Normalized log-error AUC; None if n < 2")
    accuracy: dict[str, float] = Field(
        default_factory=dict, description="Percent within each configured radius, keyed 'acc@<r>'"
    )

    @model_validator(mode="after")
    def check_ordering(self) -> "MetricsReport":
        slack = 1e-9 * max(1.0, self.maxae)
        if self.acc100 > self.acc250:
            raise ValueError("acc100 cannot exceed acc250")
        if self.medae > self.maxae + slack or self.mae > self.maxae + slack:
            raise ValueError("mean and median error cannot exceed the maximum error")
        return self

    def as_rows(self) -> list[tuple[str, str]]:
        rows = [
            ("n", str(self.n)),
            ("acc100", f"{self.acc100:.2f}"),
            ("acc250", f"{self.acc250:.2f}"),
        ]
        rows.extend(
            (name, f"{value:.2f}")
            for name, value in self.accuracy.items()
            if name not in ("acc@100", "acc@250")
        )
        rows.extend(
            [
                ("mae", f"{self.mae:.2f}"),
                ("medae", f"{self.medae:.2f}"),
                ("maxae", f"{self.maxae:.2f}"),
                ("auc", "n/a" if self.auc is None else f"{self.auc:.4f}"),
            ]
        )
        return rows


class BaselinePrediction(BaseModel):
    """Output of a heuristic baseline for one start point."""

    model_config = {"frozen": True}

    point: GeoPoint
    entity_id: str | None = None
    fallback: bool = Field(default=False, description="True when no entity was in range")


class CdfPoint(BaseModel):
    model_config = {"frozen": True}

    distance_m: float
    cumulative_pct: float = Field(..., ge=0.0, le=100.0)
