"""Rewriter that returns the prompt unchanged."""

from navsynth.rewriters.base import BaseRewriter


class IdentityRewriter(BaseRewriter):
    @property
    def name(self) -> str:
        return "identity"

    async def rewrite(self, prompt: str) -> str:
        return prompt
