"""
Rewriters turn prompts into instruction text for prompt-mode datasets.
"""

from navsynth.rewriters.base import BaseRewriter, RewriterConfig, RewriterKind
from navsynth.rewriters.factory import REWRITER_CLASSES, create_rewriter, parse_rewriter_spec
from navsynth.rewriters.fixture import FixtureRewriter, load_fixture
from navsynth.rewriters.http import HttpRewriter
from navsynth.rewriters.identity import IdentityRewriter


__all__ = [
    "BaseRewriter",
    "RewriterConfig",
    "RewriterKind",
    "IdentityRewriter",
    "FixtureRewriter",
    "HttpRewriter",
    "load_fixture",
    "create_rewriter",
    "parse_rewriter_spec",
    "REWRITER_CLASSES",
]
