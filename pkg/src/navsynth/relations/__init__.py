"""
Spatial relations between the route, the goal and the landmarks.
"""

from navsynth.relations.blocks import (
    GoalBlock,
    block_nodes,
    classify_fraction,
    corner_label,
    goal_block,
)
from navsynth.relations.features import (
    ON_LINE_TOLERANCE_M,
    compute_features,
    goal_side_of,
    pivot_directions,
    side_of_path,
)


__all__ = [
    "compute_features",
    "side_of_path",
    "goal_side_of",
    "pivot_directions",
    "ON_LINE_TOLERANCE_M",
    "GoalBlock",
    "goal_block",
    "block_nodes",
    "classify_fraction",
    "corner_label",
]
