"""
Rewriter factory.

Specs select the implementation:

    identity            prompt returned verbatim
    fixture:PATH        recorded rewrites from a JSON/JSONL file
    http:URL            remote endpoint, token from an environment variable
"""

import os

from navsynth.config import RewriterSettings
from navsynth.logging import get_logger
from navsynth.rewriters.base import BaseRewriter, RewriterConfig, RewriterKind
from navsynth.rewriters.fixture import FixtureRewriter
from navsynth.rewriters.http import HttpRewriter
from navsynth.rewriters.identity import IdentityRewriter


logger = get_logger(__name__)

REWRITER_CLASSES: dict[RewriterKind, type[BaseRewriter]] = {
    RewriterKind.IDENTITY: IdentityRewriter,
    RewriterKind.FIXTURE: FixtureRewriter,
    RewriterKind.HTTP: HttpRewriter,
}


def parse_rewriter_spec(spec: str) -> tuple[RewriterKind, str | None]:
    """
    Split a spec into kind and target.

    Raises:
        ValueError: unknown kind or missing target
    """
    kind_text, _, target = spec.strip().partition(":")
    try:
        kind = RewriterKind(kind_text.lower())
    except ValueError:
        choices = ", ".join(k.value for k in RewriterKind)
        raise ValueError(f"unknown rewriter {kind_text!r} (expected one of: {choices})") from None
    if kind is RewriterKind.IDENTITY:
        if target:
            raise ValueError("the identity rewriter takes no target")
        return kind, None
    if not target:
        raise ValueError(f"rewriter {kind.value!r} needs a target: {kind.value}:<target>")
    return kind, target


def create_rewriter(
    spec: str | None = None, settings: RewriterSettings | None = None
) -> BaseRewriter:
    """Build a rewriter from a spec string, defaulting to the configured one."""
    settings = settings or RewriterSettings()
    kind, target = parse_rewriter_spec(spec or settings.spec)
    token = os.getenv(settings.token_env) if kind is RewriterKind.HTTP else None
    config = RewriterConfig(
        kind=kind,
        target=target,
        token=token,
        timeout=settings.timeout,
        max_retries=settings.max_retries,
        retry_delay=settings.retry_delay,
        max_concurrency=settings.max_concurrency,
    )
    rewriter = REWRITER_CLASSES[kind](config)
    logger.info("Created rewriter", kind=kind.value, target=target)
    return rewriter
