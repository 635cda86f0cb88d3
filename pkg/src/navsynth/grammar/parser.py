"""
Parser for the line-oriented grammar file format.

    # comment
    Instruction -> Goal Main "." | Main Goal "."
                 | Goal "."
    Goal -> "Meet at the" END_POINT

Quoted strings are literals (`""` is the empty alternative), bare tokens
defined on a left-hand side are nonterminals and remaining ALL_CAPS tokens
are registry placeholders. The first left-hand side is the start symbol.
"""

import re
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path

from navsynth.exceptions import (
    GrammarEncodingError,
    GrammarError,
    GrammarRecursionError,
    GrammarSyntaxError,
    UndefinedNonterminalError,
    UnknownPlaceholderError,
)
from navsynth.grammar.registry import PLACEHOLDERS
from navsynth.logging import get_logger
from navsynth.models.grammar import (
    Grammar,
    LiteralToken,
    NonterminalRef,
    PlaceholderSpec,
    PlaceholderToken,
    Production,
    Symbol,
)


logger = get_logger(__name__)

PLACEHOLDER_RE = re.compile(r"^[A-Z][A-Z0-9]*(?:_[A-Z0-9]+)*$")

_TOKEN_RE = re.compile(
    r"""
    \s*(?:
        (?P<string>"(?:[^"\\]|\\.)*")
      | (?P<arrow>->)
      | (?P<pipe>\|)
      | (?P<comment>\#.*)
      | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<bad>\S)
    )
    """,
    re.VERBOSE,
)


@dataclass
class _RawSymbol:
    kind: str  # "string" or "word"
    text: str
    line: int


@dataclass
class _RawProduction:
    lhs: str
    line: int
    alternatives: list[list[_RawSymbol]] = field(default_factory=list)


@dataclass
class GrammarBuild:
    """Everything learned from a grammar text, including every error found."""

    source: str | None
    productions: dict[str, _RawProduction] = field(default_factory=dict)
    grammar: Grammar | None = None
    errors: list[GrammarError] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.grammar is not None and not self.errors


def _tokenize(line: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(line):
        match = _TOKEN_RE.match(line, pos)
        if match is None or match.end() == pos:
            break
        pos = match.end()
        kind = match.lastgroup
        if kind is None or kind == "comment":
            continue
        tokens.append((kind, match.group(kind)))
    return tokens


def _unquote(text: str) -> str:
    return re.sub(r"\\(.)", r"\1", text[1:-1])


def _split_alternatives(
    tokens: list[tuple[str, str]], line: int, source: str | None
) -> list[list[_RawSymbol]]:
    alternatives: list[list[_RawSymbol]] = [[]]
    for kind, text in tokens:
        if kind == "pipe":
            alternatives.append([])
        elif kind in ("string", "word"):
            alternatives[-1].append(_RawSymbol(kind=kind, text=text, line=line))
        elif kind == "arrow":
            raise GrammarSyntaxError("unexpected '->' in alternatives", line, source)
        else:
            raise GrammarSyntaxError(f"unexpected character {text!r}", line, source)
    if any(not alt for alt in alternatives):
        raise GrammarSyntaxError('empty alternative (write "" for an empty one)', line, source)
    return alternatives


def _read_productions(text: str, build: GrammarBuild) -> None:
    current: _RawProduction | None = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw)
        if not tokens:
            continue
        try:
            if tokens[0][0] == "pipe":
                if current is None:
                    raise GrammarSyntaxError(
                        "continuation line before any production", line_no, build.source
                    )
                current.alternatives.extend(
                    _split_alternatives(tokens[1:], line_no, build.source)
                )
                continue
            if len(tokens) < 2 or tokens[0][0] != "word" or tokens[1][0] != "arrow":
                raise GrammarSyntaxError(
                    "expected 'Nonterminal -> alternatives'", line_no, build.source
                )
            lhs = tokens[0][1]
            current = _RawProduction(lhs=lhs, line=line_no)
            if lhs in build.productions:
                first = build.productions[lhs].line
                raise GrammarSyntaxError(
                    f"nonterminal {lhs!r} already defined on line {first}", line_no, build.source
                )
            build.productions[lhs] = current
            current.alternatives.extend(_split_alternatives(tokens[2:], line_no, build.source))
        except GrammarSyntaxError as e:
            build.errors.append(e)


def _resolve(
    build: GrammarBuild, registry: Mapping[str, PlaceholderSpec]
) -> tuple[dict[str, Production], set[str]]:
    productions: dict[str, Production] = {}
    used: set[str] = set()
    for lhs, raw in build.productions.items():
        alternatives: list[tuple[Symbol, ...]] = []
        for raw_alt in raw.alternatives:
            symbols: list[Symbol] = []
            for sym in raw_alt:
                if sym.kind == "string":
                    literal = _unquote(sym.text)
                    if literal.strip():
                        symbols.append(LiteralToken(literal))
                elif sym.text in build.productions:
                    symbols.append(NonterminalRef(sym.text))
                elif PLACEHOLDER_RE.match(sym.text):
                    if sym.text in registry:
                        symbols.append(PlaceholderToken(sym.text))
                        used.add(sym.text)
                    else:
                        build.errors.append(
                            UnknownPlaceholderError(
                                f"unknown placeholder {sym.text!r}", sym.line, build.source
                            )
                        )
                else:
                    build.errors.append(
                        UndefinedNonterminalError(
                            f"undefined nonterminal {sym.text!r} (literals must be quoted)",
                            sym.line,
                            build.source,
                        )
                    )
            alternatives.append(tuple(symbols))
        productions[lhs] = Production(lhs=lhs, alternatives=tuple(alternatives), line=raw.line)
    return productions, used


def find_cycle(productions: Mapping[str, Production]) -> list[str] | None:
    """A cycle in the nonterminal graph as a closed path, or None."""
    white, grey, black = 0, 1, 2
    color = dict.fromkeys(productions, white)
    stack: list[str] = []

    def visit(name: str) -> list[str] | None:
        color[name] = grey
        stack.append(name)
        for alternative in productions[name].alternatives:
            for sym in alternative:
                if not isinstance(sym, NonterminalRef) or sym.name not in productions:
                    continue
                if color[sym.name] == grey:
                    return stack[stack.index(sym.name) :] + [sym.name]
                if color[sym.name] == white:
                    found = visit(sym.name)
                    if found:
                        return found
        stack.pop()
        color[name] = black
        return None

    for name in productions:
        if color[name] == white:
            cycle = visit(name)
            if cycle:
                return cycle
    return None


def build_grammar(
    text: str,
    source: str | None = None,
    registry: Mapping[str, PlaceholderSpec] = PLACEHOLDERS,
) -> GrammarBuild:
    """Parse grammar text, collecting every error instead of stopping at the first."""
    build = GrammarBuild(source=source)
    _read_productions(text, build)
    if not build.productions:
        if not build.errors:
            build.errors.append(GrammarSyntaxError("grammar defines no productions", None, source))
        return build

    productions, used = _resolve(build, registry)
    cycle = find_cycle(productions)
    if cycle:
        line = productions[cycle[0]].line
        build.errors.append(GrammarRecursionError(cycle, line, source))
    if build.errors:
        return build

    build.grammar = Grammar(
        start=next(iter(productions)),
        productions=productions,
        source=source,
        placeholders=frozenset(used),
    )
    return build


def parse_grammar_text(
    text: str,
    source: str | None = None,
    registry: Mapping[str, PlaceholderSpec] = PLACEHOLDERS,
) -> Grammar:
    """
    Parse and validate grammar text.

    Raises:
        GrammarSyntaxError: malformed line
        UndefinedNonterminalError: reference to an undefined nonterminal
        UnknownPlaceholderError: placeholder missing from the registry
        GrammarRecursionError: the grammar is recursive
    """
    build = build_grammar(text, source, registry)
    if build.grammar is None:
        raise build.errors[0]
    logger.debug(
        "Grammar parsed",
        source=source,
        nonterminals=len(build.grammar.productions),
        rules=build.grammar.rule_count,
    )
    return build.grammar


def read_grammar_source(path: str | Path) -> str:
    """
    Read a grammar file as UTF-8 text.

    Raises:
        GrammarEncodingError: the file is not valid UTF-8
    """
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        raise GrammarEncodingError(f"invalid UTF-8: {e.reason}", line, str(path)) from e


def parse_grammar(
    path: str | Path, registry: Mapping[str, PlaceholderSpec] = PLACEHOLDERS
) -> Grammar:
    """Parse a grammar file (UTF-8)."""
    return parse_grammar_text(read_grammar_source(path), str(path), registry)
