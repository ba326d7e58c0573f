"""Prompt building, response parsing and LLM transports."""

from .prompt import DEFAULT_COORDINATE_SYSTEM, PromptRequest, build_prompt, render_environment
from .response import ProposalText, ResponseParseError, parse_response
from .transport import (
    FixtureMissError,
    LiveTransport,
    LlmConfig,
    MockTransport,
    RequestContext,
    TransportError,
    complete,
    default_fixtures_dir,
    make_transport,
)

__all__ = [
    "DEFAULT_COORDINATE_SYSTEM",
    "FixtureMissError",
    "LiveTransport",
    "LlmConfig",
    "MockTransport",
    "PromptRequest",
    "ProposalText",
    "RequestContext",
    "ResponseParseError",
    "TransportError",
    "build_prompt",
    "complete",
    "default_fixtures_dir",
    "make_transport",
    "parse_response",
    "render_environment",
]
