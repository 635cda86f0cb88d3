"""
Path sampling, landmark selection and landmark naming.
"""

from navsynth.sampler.landmarks import (
    beyond_candidates,
    group_by_type,
    make_group,
    near_candidates,
    pick_landmarks,
    route_candidates,
    top_prominence,
)
from navsynth.sampler.naming import (
    count_words,
    display_name,
    entity_type_noun,
    is_nameable,
    quantity,
    type_noun,
    type_of,
)
from navsynth.sampler.walker import Walker, has_name_or_type


__all__ = [
    "Walker",
    "has_name_or_type",
    "pick_landmarks",
    "near_candidates",
    "route_candidates",
    "beyond_candidates",
    "group_by_type",
    "make_group",
    "top_prominence",
    "display_name",
    "type_of",
    "type_noun",
    "entity_type_noun",
    "count_words",
    "quantity",
    "is_nameable",
]
