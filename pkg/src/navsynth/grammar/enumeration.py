"""
Exhaustive template enumeration and analytic counting.
"""

import hashlib
import itertools
import math
from collections import Counter
from collections.abc import Mapping

from navsynth.exceptions import GrammarCapacityError
from navsynth.grammar.registry import PLACEHOLDERS, classify_style
from navsynth.logging import get_logger
from navsynth.models.grammar import (
    Grammar,
    LiteralToken,
    NonterminalRef,
    PlaceholderSpec,
    PlaceholderToken,
    Template,
    Token,
)


logger = get_logger(__name__)

DEFAULT_TEMPLATE_CAP = 10_000_000


def count_templates(grammar: Grammar, start: str | None = None) -> int:
    """Number of templates the grammar expands to, without materializing any."""
    memo: dict[str, int] = {}

    def count(name: str) -> int:
        if name not in memo:
            memo[name] = sum(
                math.prod(
                    count(s.name) if isinstance(s, NonterminalRef) else 1 for s in alternative
                )
                for alternative in grammar.productions[name].alternatives
            )
        return memo[name]

    return count(start or grammar.start)


def template_id(tokens: tuple[Token, ...]) -> str:
    """First 16 hex chars of SHA-1 over the token sequence."""
    parts = [
        f"L:{t.text}" if isinstance(t, LiteralToken) else f"P:{t.name}" for t in tokens
    ]
    return hashlib.sha1("\x1f".join(parts).encode("utf-8")).hexdigest()[:16]


def expand(grammar: Grammar) -> list[tuple[Token, ...]]:
    """Token sequences in depth-first order, alternatives in file order."""
    memo: dict[str, list[tuple[Token, ...]]] = {}

    def symbol(sym: LiteralToken | PlaceholderToken | NonterminalRef) -> list[tuple[Token, ...]]:
        if isinstance(sym, NonterminalRef):
            return nonterminal(sym.name)
        return [(sym,)]

    def nonterminal(name: str) -> list[tuple[Token, ...]]:
        if name in memo:
            return memo[name]
        out: list[tuple[Token, ...]] = []
        for alternative in grammar.productions[name].alternatives:
            parts = [symbol(s) for s in alternative]
            for combo in itertools.product(*parts):
                out.append(tuple(itertools.chain.from_iterable(combo)))
        memo[name] = out
        return out

    return nonterminal(grammar.start)


def enumerate_templates(
    grammar: Grammar,
    cap: int = DEFAULT_TEMPLATE_CAP,
    registry: Mapping[str, PlaceholderSpec] = PLACEHOLDERS,
) -> list[Template]:
    """
    All templates of an acyclic grammar, in deterministic order.

    Identical token sequences keep distinct ids through a `-<k>` suffix.

    Raises:
        GrammarCapacityError: the grammar expands to more than `cap` templates
    """
    total = count_templates(grammar)
    if total > cap:
        raise GrammarCapacityError(
            f"grammar expands to {total} templates, above the cap of {cap}",
            source=grammar.source,
        )

    seen: Counter[str] = Counter()
    templates: list[Template] = []
    for tokens in expand(grammar):
        base = template_id(tokens)
        seen[base] += 1
        tid = base if seen[base] == 1 else f"{base}-{seen[base] - 1}"
        names = frozenset(t.name for t in tokens if isinstance(t, PlaceholderToken))
        templates.append(
            Template(
                id=tid,
                tokens=tokens,
                placeholder_set=names,
                style=classify_style(names, registry),
            )
        )
    logger.debug("Templates enumerated", count=len(templates), source=grammar.source)
    return templates
