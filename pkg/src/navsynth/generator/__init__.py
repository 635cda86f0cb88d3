"""
Instruction and dataset generation, grounding verification and statistics.
"""

from navsynth.generator.dataset import (
    DatasetGenerator,
    GenerationResult,
    attempt_seed,
    derive_seed,
    generate_dataset,
    record_id,
    template_pool_for,
)
from navsynth.generator.dummy import (
    DUMMY_PHRASES,
    SPATIAL_STOP_WORDS,
    dummy_instruction,
    spatial_words,
)
from navsynth.generator.instantiate import (
    GOAL_POSITION_PHRASES,
    ROLE_PLACEHOLDERS,
    available_placeholders,
    capitalize_sentences,
    find_placeholder_residue,
    instantiate,
    role_landmarks,
    role_names,
    slot_values,
)
from navsynth.generator.io import file_sha256, iter_records, read_records, write_records
from navsynth.generator.prompting import PROMPT_PREAMBLE, build_prompt
from navsynth.generator.scenario import GroundedSample, ground_sample, landmarks_record
from navsynth.generator.stats import dataset_stats, tokenize, write_stats_csv
from navsynth.generator.verify import template_pattern, verify_grounding, verify_records


__all__ = [
    # Generation
    "DatasetGenerator",
    "GenerationResult",
    "generate_dataset",
    "template_pool_for",
    "derive_seed",
    "attempt_seed",
    "record_id",
    # Instantiation
    "ROLE_PLACEHOLDERS",
    "GOAL_POSITION_PHRASES",
    "available_placeholders",
    "slot_values",
    "role_landmarks",
    "role_names",
    "instantiate",
    "capitalize_sentences",
    "find_placeholder_residue",
    "GroundedSample",
    "ground_sample",
    "landmarks_record",
    # Dummy and prompt modes
    "DUMMY_PHRASES",
    "SPATIAL_STOP_WORDS",
    "dummy_instruction",
    "spatial_words",
    "PROMPT_PREAMBLE",
    "build_prompt",
    # Verification
    "verify_grounding",
    "verify_records",
    "template_pattern",
    # I/O and statistics
    "write_records",
    "read_records",
    "iter_records",
    "file_sha256",
    "dataset_stats",
    "tokenize",
    "write_stats_csv",
]
