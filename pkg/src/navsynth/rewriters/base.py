"""
Abstract base class for instruction rewriters.

A rewriter turns a prompt into free text. Prompt-mode datasets pass every
template instruction through one; the identity rewriter keeps the pipeline
offline and deterministic.
"""

import asyncio
from abc import ABC, abstractmethod
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Any


class RewriterKind(str, Enum):
    """Supported rewriter implementations."""

    IDENTITY = "identity"
    FIXTURE = "fixture"
    HTTP = "http"


@dataclass
class RewriterConfig:
    """Configuration for a rewriter."""

    kind: RewriterKind
    target: str | None = None  # fixture path or endpoint URL
    token: str | None = None
    timeout: int = 60
    max_retries: int = 3
    retry_delay: float = 1.0
    max_concurrency: int = 8


class BaseRewriter(ABC):
    """
    Rewriter interface.

    Implementations must be safe for concurrent `rewrite` calls; the batch
    helper bounds concurrency with a semaphore.
    """

    def __init__(self, config: RewriterConfig):
        self.config = config

    @property
    @abstractmethod
    def name(self) -> str:
        """Return the rewriter name."""
        ...

    async def initialize(self) -> None:
        """Open connections or load recordings."""

    async def close(self) -> None:
        """Release resources."""

    @abstractmethod
    async def rewrite(self, prompt: str) -> str:
        """
        Rewrite one prompt.

        Raises:
            RewriterError: no text could be produced
        """
        ...

    async def rewrite_batch(self, prompts: Sequence[str]) -> list[str]:
        """Rewrite prompts concurrently; results keep the input order."""
        semaphore = asyncio.Semaphore(self.config.max_concurrency)

        async def one(prompt: str) -> str:
            async with semaphore:
                return await self.rewrite(prompt)

        return list(await asyncio.gather(*(one(p) for p in prompts)))

    async def __aenter__(self) -> "BaseRewriter":
        await self.initialize()
        return self

    async def __aexit__(self, *args: Any) -> None:
        await self.close()

    def __repr__(self) -> str:
        target = f", target={self.config.target}" if self.config.target else ""
        return f"{self.__class__.__name__}(kind={self.config.kind.value}{target})"
