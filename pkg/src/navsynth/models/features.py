"""
Spatial relations computed for one path sample.
"""

from pydantic import BaseModel, Field, model_validator

from navsynth.models.geo import BlockPosition, CardinalDirection, EgocentricSide


class SpatialFeatures(BaseModel):
    """
    Allocentric and egocentric relations of a sampled path.

    Per-landmark maps are keyed by landmark key (entity id or group key).
    `block_position_allo` is None exactly when the goal is mid-block.
    """

    model_config = {"frozen": True}

    cardinal_start_to_goal: CardinalDirection
    cardinal_pivot_to_goal: dict[str, CardinalDirection] = Field(default_factory=dict)
    ego_side: dict[str, EgocentricSide] = Field(default_factory=dict)
    goal_side: EgocentricSide | None = Field(
        default=None, description="Side of the final route segment the goal lies on"
    )
    n_intersections: int = Field(..., ge=0)
    n_blocks: int = Field(..., ge=0)
    block_fraction: float = Field(..., ge=0.0, le=1.0)
    block_position_ego: BlockPosition
    block_position_allo: CardinalDirection | None = None

    @model_validator(mode="after")
    def check_block_labels(self) -> "SpatialFeatures":
        is_middle = self.block_position_ego is BlockPosition.MIDDLE
        if is_middle != (self.block_position_allo is None):
            raise ValueError("allocentric corner label must be set iff the goal is at a corner")
        if self.n_blocks != self.n_intersections + 1:
            raise ValueError("a multi-node route has one more block than intersections")
        return self

    @property
    def block_position_allo_label(self) -> str:
        if self.block_position_allo is None:
            return "Middle"
        return self.block_position_allo.value
