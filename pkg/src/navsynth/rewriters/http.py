"""
Rewriter backed by an HTTP endpoint.

Contract: POST `{"prompt": str}` to the configured URL, receive
`{"text": str}`. A bearer token is sent when one is configured.
"""

import asyncio
import time
from typing import Any

import httpx

from navsynth.exceptions import RewriterError
from navsynth.logging import get_logger
from navsynth.rewriters.base import BaseRewriter, RewriterConfig


logger = get_logger(__name__)


class HttpRewriter(BaseRewriter):
    """Calls a remote rewriting service with retries."""

    def __init__(
        self, config: RewriterConfig, transport: httpx.AsyncBaseTransport | None = None
    ):
        super().__init__(config)
        self._transport = transport
        self._client: httpx.AsyncClient | None = None

    @property
    def name(self) -> str:
        return "http"

    def _build_headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        if self.config.token:
            headers["Authorization"] = f"Bearer {self.config.token}"
        return headers

    async def initialize(self) -> None:
        if not self.config.target:
            raise RewriterError("http rewriter needs an endpoint URL")
        if self._client is None:
            self._client = httpx.AsyncClient(
                timeout=self.config.timeout,
                headers=self._build_headers(),
                transport=self._transport,
            )
            logger.info("HTTP rewriter initialized", url=self.config.target)

    async def close(self) -> None:
        if self._client is not None:
            await self._client.aclose()
            self._client = None

    @staticmethod
    def _parse(payload: Any) -> str:
        if not isinstance(payload, dict) or not isinstance(payload.get("text"), str):
            raise RewriterError("rewrite response must be a JSON object with a 'text' string")
        return str(payload["text"])

    async def rewrite(self, prompt: str) -> str:
        await self.initialize()
        client, url = self._client, self.config.target
        if client is None or url is None:
            raise RewriterError("http rewriter is not initialized")

        attempts = max(1, self.config.max_retries)
        for attempt in range(attempts):
            started = time.perf_counter()
            try:
                response = await client.post(url, json={"prompt": prompt})
                response.raise_for_status()
                text = self._parse(response.json())
                logger.debug(
                    "Rewrite received",
                    latency_ms=round((time.perf_counter() - started) * 1000, 1),
                )
                return text
            except (httpx.HTTPError, ValueError, RewriterError) as e:
                if attempt < attempts - 1:
                    logger.warning(
                        "Rewrite request failed, retrying", attempt=attempt + 1, error=str(e)
                    )
                    await asyncio.sleep(self.config.retry_delay * (attempt + 1))
                else:
                    raise RewriterError(
                        f"rewrite request to {url} failed after {attempts} attempts: {e}"
                    ) from e

        raise RewriterError("rewrite failed after retries")
