"""
Grammar and template types.

Templates are produced in the hundreds of thousands, so they are slotted
dataclasses rather than pydantic models.
"""

from dataclasses import dataclass, field
from enum import Enum


class PlaceholderClass(str, Enum):
    """Kind of spatial information a placeholder carries."""

    ALLOCENTRIC = "allocentric"
    EGOCENTRIC = "egocentric"
    NEUTRAL = "neutral"


class TemplateStyle(str, Enum):
    """Style of a template, derived from the classes of its placeholders."""

    ALLOCENTRIC = "allocentric"
    EGOCENTRIC = "egocentric"
    MIXED = "mixed"
    NEUTRAL = "neutral"


@dataclass(frozen=True, slots=True)
class LiteralToken:
    text: str


@dataclass(frozen=True, slots=True)
class PlaceholderToken:
    name: str


@dataclass(frozen=True, slots=True)
class NonterminalRef:
    name: str


Token = LiteralToken | PlaceholderToken
Symbol = LiteralToken | PlaceholderToken | NonterminalRef


@dataclass(frozen=True, slots=True)
class PlaceholderSpec:
    """Registry entry: how a placeholder is classified and filled."""

    name: str
    placeholder_class: PlaceholderClass
    feature: str
    group: str | None = None
    required: bool = False


@dataclass(frozen=True, slots=True)
class Production:
    lhs: str
    alternatives: tuple[tuple[Symbol, ...], ...]
    line: int


@dataclass(frozen=True)
class Grammar:
    """An acyclic context-free grammar; the first production's left side is the start symbol."""

    start: str
    productions: dict[str, Production]
    source: str | None = None
    placeholders: frozenset[str] = field(default_factory=frozenset)

    @property
    def nonterminals(self) -> list[str]:
        return list(self.productions)

    @property
    def literals(self) -> set[str]:
        found: set[str] = set()
        for production in self.productions.values():
            for alternative in production.alternatives:
                found.update(s.text for s in alternative if isinstance(s, LiteralToken))
        return found

    @property
    def rule_count(self) -> int:
        return sum(len(p.alternatives) for p in self.productions.values())


@dataclass(frozen=True, slots=True)
class Template:
    """A fully expanded token sequence with its placeholder features."""

    id: str
    tokens: tuple[Token, ...]
    placeholder_set: frozenset[str]
    style: TemplateStyle

    @property
    def placeholders(self) -> list[str]:
        """Placeholder names in order of appearance, with repeats."""
        return [t.name for t in self.tokens if isinstance(t, PlaceholderToken)]

    @property
    def text(self) -> str:
        """The template as text with placeholder names in capitals."""
        parts = [t.text if isinstance(t, LiteralToken) else t.name for t in self.tokens]
        return join_tokens(parts)


_NO_SPACE_BEFORE = frozenset(".,;:!?")


def join_tokens(parts: list[str]) -> str:
    """Join token strings with single spaces, attaching punctuation to the previous word."""
    out = ""
    for part in parts:
        part = " ".join(part.split())
        if not part:
            continue
        if out and part[0] not in _NO_SPACE_BEFORE:
            out += " "
        out += part
    return out
