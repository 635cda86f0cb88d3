"""Prompt construction for rewriting template instructions."""

from navsynth.logging import get_logger


logger = get_logger(__name__)

PROMPT_PREAMBLE = (
    "rephrase the subsequent navigation instruction, ensuring it explains how to travel "
    "from the starting position to the destination: "
)


def build_prompt(instruction: str) -> str:
    """The fixed preamble followed by the instruction."""
    if not instruction.strip():
        logger.warning("Building a rewrite prompt for an empty instruction")
    return PROMPT_PREAMBLE + instruction
