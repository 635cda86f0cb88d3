"""
Context-free template grammar: parsing, enumeration, classification and
selection.
"""

from navsynth.grammar.enumeration import (
    DEFAULT_TEMPLATE_CAP,
    count_templates,
    enumerate_templates,
    expand,
    template_id,
)
from navsynth.grammar.lint import lint_grammar, lint_grammar_text, unused_nonterminals
from navsynth.grammar.parser import (
    PLACEHOLDER_RE,
    GrammarBuild,
    build_grammar,
    find_cycle,
    parse_grammar,
    parse_grammar_text,
    read_grammar_source,
)
from navsynth.grammar.registry import (
    PLACEHOLDERS,
    REQUIRED_GROUPS,
    classify_style,
    placeholder_class,
    required_groups,
)
from navsynth.grammar.selection import (
    TemplatePool,
    compatible_templates,
    filter_by_style,
    is_compatible,
    minimal_cover,
    template_features,
)


__all__ = [
    # Parsing
    "PLACEHOLDER_RE",
    "GrammarBuild",
    "build_grammar",
    "find_cycle",
    "parse_grammar",
    "parse_grammar_text",
    "read_grammar_source",
    # Enumeration
    "DEFAULT_TEMPLATE_CAP",
    "count_templates",
    "enumerate_templates",
    "expand",
    "template_id",
    # Registry
    "PLACEHOLDERS",
    "REQUIRED_GROUPS",
    "classify_style",
    "placeholder_class",
    "required_groups",
    # Selection
    "TemplatePool",
    "compatible_templates",
    "filter_by_style",
    "is_compatible",
    "minimal_cover",
    "template_features",
    # Lint
    "lint_grammar",
    "lint_grammar_text",
    "unused_nonterminals",
]
