"""
Playback of recorded rewrites.

A fixture file maps prompts to texts: a `.jsonl` file holds lines
`{"prompt": ..., "text": ...}`, any other file one JSON object.
"""

import json
from pathlib import Path

from navsynth.exceptions import FixtureMissError, RewriterError
from navsynth.logging import get_logger
from navsynth.rewriters.base import BaseRewriter, RewriterConfig


logger = get_logger(__name__)


def load_fixture(path: str | Path) -> dict[str, str]:
    """
    Read a fixture file.

    Raises:
        RewriterError: the file is missing or malformed
    """
    path = Path(path)
    try:
        content = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise RewriterError(f"cannot read rewrite fixture {path}: {e}") from e

    if path.suffix != ".jsonl":
        try:
            data = json.loads(content)
        except json.JSONDecodeError as e:
            raise RewriterError(f"{path}: invalid JSON: {e}") from e
        if not isinstance(data, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in data.items()
        ):
            raise RewriterError(f"{path}: fixture must map prompt strings to text strings")
        return dict(data)

    recordings: dict[str, str] = {}
    for line_no, line in enumerate(content.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            entry = json.loads(line)
            recordings[str(entry["prompt"])] = str(entry["text"])
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise RewriterError(f"{path}:{line_no}: invalid fixture line: {e}") from e
    return recordings


class FixtureRewriter(BaseRewriter):
    """Replays recorded texts; an unrecorded prompt is an error."""

    def __init__(self, config: RewriterConfig, recordings: dict[str, str] | None = None):
        super().__init__(config)
        self._recordings = recordings

    @property
    def name(self) -> str:
        return "fixture"

    async def initialize(self) -> None:
        if self._recordings is None:
            if not self.config.target:
                raise RewriterError("fixture rewriter needs a fixture path")
            self._recordings = load_fixture(self.config.target)
            logger.info(
                "Rewrite fixture loaded", path=self.config.target, prompts=len(self._recordings)
            )

    async def rewrite(self, prompt: str) -> str:
        if self._recordings is None:
            await self.initialize()
        recordings = self._recordings or {}
        try:
            return recordings[prompt]
        except KeyError:
            raise FixtureMissError(
                f"no recorded rewrite for prompt {prompt[:80]!r}"
                + ("..." if len(prompt) > 80 else "")
            ) from None
