"""
Location-free meeting phrases for the dummy dataset.

The phrases carry no spatial information, so a model trained on them can
only learn the distribution of goals around starts.
"""

import random
import re


DUMMY_PHRASES: tuple[str, ...] = (
    "Meet me here.",
    "Let's meet here.",
    "I'll meet you here.",
    "I'll be waiting for you here.",
    "Come meet me here.",
    "Join me here.",
    "Find me here.",
    "I'm waiting here.",
    "Meet up with me here.",
    "See you here.",
    "I will be here.",
    "Come find me here.",
    "Let's get together here.",
    "I'll see you here.",
    "Meet me at this spot.",
    "This is where we meet.",
    "Our meeting point is here.",
    "Please meet me here.",
    "Come over here.",
    "I'm here, come join me.",
    "Let's rendezvous here.",
    "You can find me here.",
    "Catch up with me here.",
    "I'll wait for you here.",
    "Meet me at this place.",
    "This is the meeting spot.",
    "Come to where I am.",
    "Let's link up here.",
    "I'm standing here waiting.",
    "Here is where I'll be.",
    "Meet me where I am.",
)

SPATIAL_STOP_WORDS = frozenset(
    {
        "north",
        "south",
        "east",
        "west",
        "northeast",
        "northwest",
        "southeast",
        "southwest",
        "left",
        "right",
        "one",
        "two",
        "three",
        "four",
        "five",
        "six",
        "seven",
        "eight",
        "nine",
        "ten",
        "block",
        "blocks",
        "intersection",
        "intersections",
        "corner",
        "street",
        "avenue",
        "near",
        "next",
        "past",
        "beyond",
        "straight",
        "ahead",
        "turn",
        "go",
        "walk",
        "head",
    }
)

_WORD_RE = re.compile(r"[a-z]+")


def spatial_words(text: str) -> list[str]:
    """Stop-list words and digits found in a text."""
    words = [w for w in _WORD_RE.findall(text.lower()) if w in SPATIAL_STOP_WORDS]
    words.extend(re.findall(r"\d+", text))
    return words


def dummy_instruction(rng: random.Random) -> str:
    """Uniform draw from the fixed phrase list."""
    return rng.choice(DUMMY_PHRASES)
