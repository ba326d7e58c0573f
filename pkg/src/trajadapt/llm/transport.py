"""LLM transports: a live OpenAI-compatible client and a fixture-backed mock.

The mock transport resolves responses from a read-only store of files named
``<sample_id>.<iteration>.resp.txt`` so the whole pipeline runs
deterministically without a network.  The live transport posts a single-user
chat-completion request; credentials come from the ``TRAJADAPT_API_KEY`` (or
``OPENAI_API_KEY``) environment variable and the base URL from config or
``TRAJADAPT_API_BASE``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import httpx

API_KEY_ENV = "TRAJADAPT_API_KEY"
API_KEY_ENV_FALLBACK = "OPENAI_API_KEY"
API_BASE_ENV = "TRAJADAPT_API_BASE"

TRANSPORTS = ("mock", "live")


class TransportError(Exception):
    """The LLM call failed after exhausting retries."""


class FixtureMissError(Exception):
    """The mock store has no response for the requested key."""


@dataclass(frozen=True)
class LlmConfig:
    transport: str = "mock"
    endpoint: str = ""
    model: str = "gpt-4o"
    temperature: float = 0.1
    timeout_s: float = 30.0
    max_retries: int = 2
    fixtures_dir: str | None = None

    def __post_init__(self) -> None:
        if self.transport not in TRANSPORTS:
            raise ValueError(f"transport must be one of {TRANSPORTS}, got {self.transport!r}")
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError(f"temperature must be in [0, 2], got {self.temperature}")
        if self.timeout_s <= 0:
            raise ValueError(f"timeout must be positive, got {self.timeout_s}")
        if self.max_retries < 0:
            raise ValueError(f"max_retries must be >= 0, got {self.max_retries}")


@dataclass(frozen=True)
class RequestContext:
    """Identifies one LLM round so the mock store can key its response."""

    sample_id: str
    iteration: int = 0


def default_fixtures_dir() -> Path:
    return Path(__file__).resolve().parents[1] / "data" / "fixtures"


class MockTransport:
    """Read-only fixture store keyed by (sample id, iteration index)."""

    def __init__(self, fixtures_dir: str | Path | None = None):
        self.fixtures_dir = Path(fixtures_dir) if fixtures_dir else default_fixtures_dir()
        self._store: dict[tuple[str, int], str] = {}
        if self.fixtures_dir.is_dir():
            for path in sorted(self.fixtures_dir.glob("*.resp.txt")):
                stem = path.name[: -len(".resp.txt")]
                sample_id, _, iteration = stem.rpartition(".")
                if not sample_id or not iteration.isdigit():
                    continue
                self._store[(sample_id, int(iteration))] = path.read_text(encoding="utf-8")

    def complete(self, prompt: str, context: RequestContext) -> str:
        key = (context.sample_id, context.iteration)
        try:
            return self._store[key]
        except KeyError:
            raise FixtureMissError(
                f"no fixture for sample {context.sample_id!r} iteration "
                f"{context.iteration} in {self.fixtures_dir}"
            ) from None


class LiveTransport:
    """OpenAI-compatible chat-completions client with bounded retries."""

    def __init__(self, cfg: LlmConfig, client: httpx.Client | None = None):
        self.cfg = cfg
        self._client = client

    def _base_url(self) -> str:
        base = self.cfg.endpoint or os.environ.get(API_BASE_ENV, "")
        if not base:
            raise TransportError(
                f"no endpoint configured (set endpoint or {API_BASE_ENV})"
            )
        return base.rstrip("/")

    def _api_key(self) -> str:
        key = os.environ.get(API_KEY_ENV) or os.environ.get(API_KEY_ENV_FALLBACK)
        if not key:
            raise TransportError(
                f"no API key configured (set {API_KEY_ENV} or {API_KEY_ENV_FALLBACK})"
            )
        return key

    def complete(self, prompt: str, context: RequestContext) -> str:
        url = self._base_url() + "/chat/completions"
        headers = {"Authorization": f"Bearer {self._api_key()}"}
        body = {
            "model": self.cfg.model,
            "temperature": self.cfg.temperature,
            "messages": [{"role": "user", "content": prompt}],
        }
        client = self._client or httpx.Client(timeout=self.cfg.timeout_s)
        owns_client = self._client is None
        last_error = "no attempts made"
        try:
            for _ in range(self.cfg.max_retries + 1):
                try:
                    response = client.post(url, json=body, headers=headers)
                except httpx.HTTPError as exc:
                    last_error = f"transport failure: {exc}"
                    continue
                if response.status_code < 200 or response.status_code >= 300:
                    last_error = f"status {response.status_code}: {response.text[:200]}"
                    continue
                try:
                    payload = response.json()
                    content = payload["choices"][0]["message"]["content"]
                except (ValueError, KeyError, IndexError, TypeError) as exc:
                    last_error = f"malformed completion payload: {exc}"
                    continue
                if not isinstance(content, str):
                    last_error = "completion content is not text"
                    continue
                return content
        finally:
            if owns_client:
                client.close()
        raise TransportError(f"LLM call failed after {self.cfg.max_retries + 1} attempts; {last_error}")


def make_transport(cfg: LlmConfig, client: httpx.Client | None = None):
    if cfg.transport == "mock":
        return MockTransport(cfg.fixtures_dir)
    return LiveTransport(cfg, client=client)


def complete(prompt: str, cfg: LlmConfig, context: RequestContext) -> str:
    """One-shot completion through the transport selected by config."""
    return make_transport(cfg).complete(prompt, context)
