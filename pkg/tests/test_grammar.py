"""Tests for grammar parsing, enumeration, styles, selection and lint."""

import random
from collections import Counter

import pytest

from conftest import TOY_GRAMMAR
from navsynth.config import default_grammar_path
from navsynth.exceptions import (
    GrammarCapacityError,
    GrammarEncodingError,
    GrammarRecursionError,
    GrammarSyntaxError,
    UndefinedNonterminalError,
    UnknownPlaceholderError,
)
from navsynth.grammar import (
    PLACEHOLDERS,
    TemplatePool,
    classify_style,
    compatible_templates,
    count_templates,
    enumerate_templates,
    filter_by_style,
    is_compatible,
    lint_grammar,
    lint_grammar_text,
    minimal_cover,
    parse_grammar,
    parse_grammar_text,
    template_features,
)
from navsynth.models import (
    LiteralToken,
    PlaceholderClass,
    Severity,
    Template,
    TemplateStyle,
)


DEFAULT_TEMPLATE_COUNT = 211_680
DEFAULT_COVER_SIZE = 29

NEUTRAL_NAMES = sorted(
    name
    for name, spec in PLACEHOLDERS.items()
    if spec.placeholder_class is PlaceholderClass.NEUTRAL
)


def texts(grammar_text: str) -> list[str]:
    return [t.text for t in enumerate_templates(parse_grammar_text(grammar_text))]


def random_grammar(rng: random.Random, n_nonterminals: int) -> str:
    """An acyclic grammar where N<i> refers to at most one N<j>, j > i, per alternative."""
    lines = []
    for i in range(n_nonterminals):
        alternatives = []
        for _ in range(rng.randint(1, 3)):
            symbols: list[str] = []
            has_ref = False
            for _ in range(rng.randint(1, 3)):
                roll = rng.random()
                if roll < 0.4 and i + 1 < n_nonterminals and not has_ref:
                    has_ref = True
                    symbols.append(f"N{rng.randrange(i + 1, n_nonterminals)}")
                elif roll < 0.7:
                    symbols.append(rng.choice(NEUTRAL_NAMES))
                else:
                    symbols.append(f'"w{rng.randrange(5)}"')
            alternatives.append(" ".join(symbols))
        lines.append(f"N{i} -> " + " | ".join(alternatives))
    return "\n".join(lines) + "\n"


def assert_irreducible(cover: list[Template]) -> None:
    """Every kept template covers a feature no other kept template covers."""
    counts = Counter(f for t in cover for f in template_features(t))
    for t in cover:
        assert any(counts[f] == 1 for f in template_features(t)), t.text


@pytest.mark.unit
class TestParsing:
    def test_toy_grammar(self, toy_grammar_file):
        grammar = parse_grammar(toy_grammar_file)
        assert grammar.start == "Start"
        assert grammar.nonterminals == ["Start", "Greeting", "Target"]
        assert grammar.rule_count == 6
        assert grammar.placeholders == {"END_POINT", "NEAR_PIVOT", "MAIN_PIVOT"}

    def test_continuation_lines_and_comments(self):
        text = '# header\nStart -> "Meet at" END_POINT  # trailing\n      | "Find" END_POINT\n'
        assert texts(text) == ["Meet at END_POINT", "Find END_POINT"]

    def test_empty_literal(self):
        text = 'Start -> "Meet" Opt END_POINT "."\nOpt -> "" | "me at the"\n'
        assert texts(text) == ["Meet END_POINT.", "Meet me at the END_POINT."]

    def test_escaped_quote(self):
        assert texts('Start -> "the \\"old\\"" END_POINT\n') == ['the "old" END_POINT']

    @pytest.mark.parametrize(
        "text,line",
        [
            ('Start "x"\n', 1),
            ('Start -> "x" |\n', 1),
            ('  | "x"\n', 1),
            ('Start -> "x" END_POINT\nStart -> "y"\n', 2),
            ('Start -> "x" @\n', 1),
            ("# only a comment\n", None),
        ],
    )
    def test_syntax_errors(self, text, line):
        with pytest.raises(GrammarSyntaxError) as exc:
            parse_grammar_text(text)
        assert exc.value.line == line

    def test_undefined_nonterminal(self):
        with pytest.raises(UndefinedNonterminalError, match="'Target'"):
            parse_grammar_text('Start -> "Meet at" Target\n')

    def test_unknown_placeholder(self):
        with pytest.raises(UnknownPlaceholderError) as exc:
            parse_grammar_text('Start -> "x" Rest\nRest -> "at" SECRET_SPOT\n', source="g.cfg")
        assert exc.value.line == 2
        assert str(exc.value).startswith("g.cfg:2: ")

    def test_recursion(self):
        with pytest.raises(GrammarRecursionError) as exc:
            parse_grammar_text('Start -> A END_POINT\nA -> "x" B\nB -> "y" | A\n')
        assert exc.value.cycle == ["A", "B", "A"]

    def test_self_recursion(self):
        with pytest.raises(GrammarRecursionError):
            parse_grammar_text('Start -> "go" | Start "again"\n')

    def test_invalid_utf8_file(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_bytes(b'Start -> "Meet at" END_POINT\n  | "Caf\xe9 near" END_POINT\n')
        with pytest.raises(GrammarEncodingError) as exc:
            parse_grammar(path)
        assert exc.value.line == 2
        assert str(exc.value).startswith(f"{path}:2: invalid UTF-8")


@pytest.mark.unit
class TestEnumeration:
    def test_toy_templates(self, toy_grammar_file):
        templates = enumerate_templates(parse_grammar(toy_grammar_file))
        assert [t.text for t in templates] == [
            "Meet at the END_POINT.",
            "Meet near NEAR_PIVOT.",
            "Meet by MAIN_PIVOT.",
            "Find me at the END_POINT.",
            "Find me near NEAR_PIVOT.",
            "Find me by MAIN_PIVOT.",
        ]
        assert len({t.id for t in templates}) == 6
        assert all(len(t.id) == 16 for t in templates)

    def test_ids_are_stable(self):
        first = enumerate_templates(parse_grammar_text(TOY_GRAMMAR))
        second = enumerate_templates(parse_grammar_text(TOY_GRAMMAR))
        assert [t.id for t in first] == [t.id for t in second]

    def test_duplicate_sequences_get_suffix(self):
        templates = enumerate_templates(
            parse_grammar_text('Start -> "Meet" END_POINT | "Meet" END_POINT\n')
        )
        base = templates[0].id
        assert [t.id for t in templates] == [base, f"{base}-1"]

    def test_capacity(self):
        grammar = parse_grammar_text(TOY_GRAMMAR)
        with pytest.raises(GrammarCapacityError):
            enumerate_templates(grammar, cap=5)

    @pytest.mark.parametrize("seed", range(25))
    def test_count_matches_enumeration(self, seed):
        rng = random.Random(seed)
        grammar = parse_grammar_text(random_grammar(rng, rng.randint(2, 6)))
        assert count_templates(grammar) == len(enumerate_templates(grammar))

    def test_placeholder_sets(self):
        templates = enumerate_templates(
            parse_grammar_text('Start -> END_POINT "and" END_POINT "by" MAIN_PIVOT\n')
        )
        assert templates[0].placeholders == ["END_POINT", "END_POINT", "MAIN_PIVOT"]
        assert templates[0].placeholder_set == {"END_POINT", "MAIN_PIVOT"}


@pytest.mark.slow
class TestDefaultGrammar:
    def test_template_count(self, default_grammar, default_templates):
        assert count_templates(default_grammar) == DEFAULT_TEMPLATE_COUNT
        assert len(default_templates) == DEFAULT_TEMPLATE_COUNT

    def test_lints_clean(self):
        diagnostics = lint_grammar(default_grammar_path())
        assert not [d for d in diagnostics if d.severity.is_blocking]
        assert diagnostics[-1].details["count"] == DEFAULT_TEMPLATE_COUNT

    def test_every_template_mentions_goal(self, default_templates):
        assert all("END_POINT" in t.placeholder_set for t in default_templates)

    def test_literal_vocabulary(self, default_grammar):
        words = {
            word.strip(".,").lower()
            for production in default_grammar.productions.values()
            for alternative in production.alternatives
            for symbol in alternative
            if isinstance(symbol, LiteralToken)
            for word in symbol.text.split()
        }
        assert len(words - {""}) >= 70

    def test_style_filters(self, default_templates):
        allocentric = filter_by_style(default_templates, TemplateStyle.ALLOCENTRIC)
        egocentric = filter_by_style(default_templates, TemplateStyle.EGOCENTRIC)
        assert allocentric and egocentric
        assert not {t.id for t in allocentric} & {t.id for t in egocentric}
        for t in allocentric:
            classes = {PLACEHOLDERS[p].placeholder_class for p in t.placeholder_set}
            assert PlaceholderClass.EGOCENTRIC not in classes
        for t in egocentric:
            classes = {PLACEHOLDERS[p].placeholder_class for p in t.placeholder_set}
            assert PlaceholderClass.EGOCENTRIC in classes
            assert PlaceholderClass.ALLOCENTRIC not in classes

    def test_minimal_cover(self, default_templates):
        cover = minimal_cover(default_templates)
        universe = set().union(*(template_features(t) for t in default_templates))
        assert set().union(*(template_features(t) for t in cover)) == universe
        assert_irreducible(cover)
        assert len(cover) == DEFAULT_COVER_SIZE

    def test_pool_matches_linear_filter(self, default_templates, template_pool):
        rng = random.Random(4)
        names = sorted(PLACEHOLDERS)
        for _ in range(5):
            available = {"END_POINT"} | set(rng.sample(names, rng.randint(2, 10)))
            expected = compatible_templates(default_templates, available)
            assert template_pool.count_compatible(available) == len(expected)
            assert sorted(t.id for t in template_pool.compatible(available)) == sorted(
                t.id for t in expected
            )


@pytest.mark.unit
class TestStyles:
    @pytest.mark.parametrize(
        "names,expected",
        [
            ([], TemplateStyle.NEUTRAL),
            (["END_POINT", "NUMBER_BLOCKS"], TemplateStyle.NEUTRAL),
            (["END_POINT", "CARDINAL_DIRECTION"], TemplateStyle.ALLOCENTRIC),
            (["GOAL_POSITION"], TemplateStyle.EGOCENTRIC),
            (["GOAL_CORNER", "EGO_SIDE"], TemplateStyle.MIXED),
        ],
    )
    def test_classify_style(self, names, expected):
        assert classify_style(names) is expected

    def test_filter_rejects_other_styles(self):
        with pytest.raises(ValueError):
            filter_by_style([], TemplateStyle.MIXED)

    def test_features_of_placeholder_free_template(self):
        (template,) = enumerate_templates(parse_grammar_text('Start -> "Walk on."\n'))
        assert template_features(template) == {("", "neutral")}

    def test_minimal_cover_scan_order(self):
        grammar = parse_grammar_text(
            'Start -> "a" END_POINT | "b" END_POINT | "c" END_POINT MAIN_PIVOT '
            '| "d" MAIN_PIVOT\n'
        )
        cover = minimal_cover(enumerate_templates(grammar))
        assert [t.text for t in cover] == ["c END_POINT MAIN_PIVOT"]

    def test_minimal_cover_keeps_first_of_equals(self):
        grammar = parse_grammar_text('Start -> "a" END_POINT | "b" END_POINT | "c" END_POINT\n')
        cover = minimal_cover(enumerate_templates(grammar))
        assert [t.text for t in cover] == ["a END_POINT"]

    def test_minimal_cover_drops_early_template_made_redundant(self):
        grammar = parse_grammar_text(
            'Start -> "a" END_POINT | "b" MAIN_PIVOT | "c" END_POINT MAIN_PIVOT NEAR_PIVOT\n'
        )
        cover = minimal_cover(enumerate_templates(grammar))
        assert [t.text for t in cover] == ["c END_POINT MAIN_PIVOT NEAR_PIVOT"]

    @pytest.mark.parametrize("seed", range(20))
    def test_minimal_cover_is_irreducible(self, seed):
        rng = random.Random(seed)
        templates = enumerate_templates(parse_grammar_text(random_grammar(rng, 4)))
        cover = minimal_cover(templates)
        universe = set().union(*(template_features(t) for t in templates))
        assert set().union(*(template_features(t) for t in cover)) == universe
        assert_irreducible(cover)


@pytest.mark.unit
class TestCompatibility:
    available = {"END_POINT", "MAIN_PIVOT", "NUMBER_BLOCKS"}

    @pytest.mark.parametrize(
        "placeholders,expected",
        [
            ({"END_POINT", "MAIN_PIVOT", "NUMBER_BLOCKS"}, True),
            ({"END_POINT", "MAIN_PIVOT"}, False),
            ({"END_POINT", "NUMBER_BLOCKS"}, False),
            ({"END_POINT", "MAIN_PIVOT", "NUMBER_BLOCKS", "NEAR_PIVOT"}, False),
        ],
    )
    def test_required_groups(self, placeholders, expected):
        assert is_compatible(placeholders, self.available) is expected

    def test_either_group_member_satisfies(self):
        available = self.available | {"MAIN_NEAR_PIVOT", "NUMBER_INTERSECTIONS"}
        assert is_compatible({"END_POINT", "MAIN_NEAR_PIVOT", "NUMBER_INTERSECTIONS"}, available)

    def test_optional_placeholders_need_not_appear(self):
        available = self.available | {"CARDINAL_DIRECTION", "EGO_SIDE"}
        assert is_compatible({"END_POINT", "MAIN_PIVOT", "NUMBER_BLOCKS"}, available)


@pytest.mark.unit
class TestTemplatePool:
    def pool(self) -> TemplatePool:
        return TemplatePool(enumerate_templates(parse_grammar_text(TOY_GRAMMAR)))

    def test_buckets(self):
        pool = self.pool()
        assert len(pool) == 6
        assert pool.bucket_count == 3
        first = pool.templates[0]
        assert pool.get(first.id) is first
        assert pool.get("missing") is None

    def test_no_compatible_template(self):
        pool = self.pool()
        assert pool.count_compatible(set()) == 0
        assert pool.choose(set(), random.Random(0)) is None

    def test_non_strict_drops_groups_but_keeps_goal(self):
        pool = self.pool()
        available = {"END_POINT", "NEAR_PIVOT"}
        assert pool.count_compatible(available) == 0
        relaxed = pool.compatible(available, strict=False)
        assert {t.text for t in relaxed} == {"Meet at the END_POINT.", "Find me at the END_POINT."}
        assert pool.choose(available, random.Random(1), strict=False) in relaxed
        assert pool.count_compatible(available, strict=False) == 2

    def test_choose_is_uniform(self):
        pool = self.pool()
        rng = random.Random(9)
        counts = Counter(pool.choose({"END_POINT"}, rng).text for _ in range(2000))
        assert set(counts) == {"Meet at the END_POINT.", "Find me at the END_POINT."}
        assert all(850 <= c <= 1150 for c in counts.values())

    def test_choose_is_deterministic(self):
        pool = self.pool()
        available = {"END_POINT"}
        first = [pool.choose(available, random.Random(3)).id for _ in range(3)]
        second = [pool.choose(available, random.Random(3)).id for _ in range(3)]
        assert first == second


@pytest.mark.unit
class TestLint:
    def codes(self, diagnostics) -> list[str]:
        return [d.code for d in diagnostics]

    def test_toy_grammar(self, toy_grammar_file):
        diagnostics = lint_grammar(toy_grammar_file)
        assert self.codes(diagnostics) == ["template_count"]
        assert diagnostics[0].severity is Severity.INFO
        assert diagnostics[0].details == {"count": 6, "rules": 6}

    def test_collects_every_error(self):
        diagnostics = lint_grammar_text(
            'Start -> "x" Missing\nOther -> "y" SECRET_SPOT\n', source="bad.cfg"
        )
        assert self.codes(diagnostics) == ["undefined_nonterminal", "unknown_placeholder"]
        assert [d.line for d in diagnostics] == [1, 2]
        assert all(d.file == "bad.cfg" for d in diagnostics)

    def test_recursion_carries_cycle(self):
        (diagnostic,) = lint_grammar_text('Start -> "x" | "y" Start\n')
        assert diagnostic.code == "recursion"
        assert diagnostic.details["cycle"] == ["Start", "Start"]

    def test_warnings(self):
        text = (
            "Start -> END_POINT MAIN_PIVOT | END_POINT MAIN_PIVOT\n"
            'Unused -> "never"\n'
        )
        diagnostics = lint_grammar_text(text)
        assert self.codes(diagnostics) == [
            "unused_nonterminal",
            "adjacent_placeholders",
            "duplicate_template",
            "template_count",
        ]
        assert not any(d.severity.is_blocking for d in diagnostics)
        assert diagnostics[2].details["count"] == 1

    def test_capacity(self):
        diagnostics = lint_grammar_text(TOY_GRAMMAR, cap=5)
        assert self.codes(diagnostics) == ["capacity"]
        assert diagnostics[0].severity.is_blocking

    def test_invalid_utf8_file(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_bytes(b'Start -> "Meet at" END_POINT\n\xff\n')
        (diagnostic,) = lint_grammar(path)
        assert (diagnostic.code, diagnostic.file, diagnostic.line) == (
            "invalid_encoding",
            str(path),
            2,
        )
        assert diagnostic.severity.is_blocking
