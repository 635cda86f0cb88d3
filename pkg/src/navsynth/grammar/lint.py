"""
Grammar lint: every problem a grammar file has, as diagnostics.
"""

from collections.abc import Mapping
from pathlib import Path

from navsynth.exceptions import (
    GrammarCapacityError,
    GrammarEncodingError,
    GrammarError,
    GrammarRecursionError,
    GrammarSyntaxError,
    UndefinedNonterminalError,
    UnknownPlaceholderError,
)
from navsynth.grammar.enumeration import (
    DEFAULT_TEMPLATE_CAP,
    count_templates,
    enumerate_templates,
)
from navsynth.grammar.parser import build_grammar, read_grammar_source
from navsynth.grammar.registry import PLACEHOLDERS
from navsynth.models.diagnostics import MapDiagnostic, Severity
from navsynth.models.grammar import Grammar, NonterminalRef, PlaceholderSpec, PlaceholderToken


_ERROR_CODES: list[tuple[type[GrammarError], str]] = [
    (GrammarSyntaxError, "syntax_error"),
    (UndefinedNonterminalError, "undefined_nonterminal"),
    (GrammarRecursionError, "recursion"),
    (UnknownPlaceholderError, "unknown_placeholder"),
    (GrammarCapacityError, "capacity"),
    (GrammarEncodingError, "invalid_encoding"),
]


def _code(error: GrammarError) -> str:
    for cls, code in _ERROR_CODES:
        if isinstance(error, cls):
            return code
    return "grammar_error"


def _from_error(error: GrammarError) -> MapDiagnostic:
    details = {"cycle": error.cycle} if isinstance(error, GrammarRecursionError) else {}
    return MapDiagnostic(
        code=_code(error),
        message=str(error),
        file=error.source,
        line=error.line,
        details=details,
    )


def unused_nonterminals(grammar: Grammar) -> list[str]:
    """Nonterminals unreachable from the start symbol, in file order."""
    reachable = {grammar.start}
    stack = [grammar.start]
    while stack:
        for alternative in grammar.productions[stack.pop()].alternatives:
            for sym in alternative:
                if isinstance(sym, NonterminalRef) and sym.name not in reachable:
                    reachable.add(sym.name)
                    stack.append(sym.name)
    return [name for name in grammar.productions if name not in reachable]


def lint_grammar_text(
    text: str,
    source: str | None = None,
    registry: Mapping[str, PlaceholderSpec] = PLACEHOLDERS,
    cap: int = DEFAULT_TEMPLATE_CAP,
) -> list[MapDiagnostic]:
    """
    Check a grammar and return every diagnostic.

    Errors come from parsing and validation; warnings flag unused
    nonterminals, placeholders with no literal between them (their values
    cannot be told apart when checking instructions) and duplicate templates.
    A final info diagnostic carries the template count.
    """
    build = build_grammar(text, source, registry)
    diagnostics = [_from_error(e) for e in build.errors]
    grammar = build.grammar
    if grammar is None:
        return diagnostics

    for name in unused_nonterminals(grammar):
        diagnostics.append(
            MapDiagnostic(
                code="unused_nonterminal",
                severity=Severity.WARNING,
                message=f"nonterminal {name!r} is unreachable from {grammar.start!r}",
                file=source,
                line=grammar.productions[name].line,
            )
        )

    total = count_templates(grammar)
    if total > cap:
        diagnostics.append(
            MapDiagnostic(
                code="capacity",
                message=f"grammar expands to {total} templates, above the cap of {cap}",
                file=source,
                details={"count": total, "cap": cap},
            )
        )
        return diagnostics

    templates = enumerate_templates(grammar, cap, registry)
    adjacent: set[tuple[str, str]] = set()
    for t in templates:
        for left, right in zip(t.tokens, t.tokens[1:]):
            if isinstance(left, PlaceholderToken) and isinstance(right, PlaceholderToken):
                adjacent.add((left.name, right.name))
    for left_name, right_name in sorted(adjacent):
        diagnostics.append(
            MapDiagnostic(
                code="adjacent_placeholders",
                severity=Severity.WARNING,
                message=f"{left_name} is directly followed by {right_name}",
                file=source,
            )
        )

    duplicates = [t for t in templates if "-" in t.id]
    if duplicates:
        diagnostics.append(
            MapDiagnostic(
                code="duplicate_template",
                severity=Severity.WARNING,
                message=f"{len(duplicates)} templates repeat an earlier token sequence",
                file=source,
                details={"count": len(duplicates), "example": duplicates[0].text},
            )
        )

    diagnostics.append(
        MapDiagnostic(
            code="template_count",
            severity=Severity.INFO,
            message=f"{total} templates from {grammar.rule_count} rules",
            file=source,
            details={"count": total, "rules": grammar.rule_count},
        )
    )
    return diagnostics


def lint_grammar(
    path: str | Path,
    registry: Mapping[str, PlaceholderSpec] = PLACEHOLDERS,
    cap: int = DEFAULT_TEMPLATE_CAP,
) -> list[MapDiagnostic]:
    try:
        text = read_grammar_source(path)
    except GrammarEncodingError as e:
        return [_from_error(e)]
    return lint_grammar_text(text, str(path), registry, cap)
