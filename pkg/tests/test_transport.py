from __future__ import annotations

import json

import httpx
import pytest

from trajadapt.llm import (
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


def test_config_validation():
    with pytest.raises(ValueError):
        LlmConfig(transport="telepathy")
    with pytest.raises(ValueError):
        LlmConfig(temperature=3.0)
    with pytest.raises(ValueError):
        LlmConfig(timeout_s=0)
    with pytest.raises(ValueError):
        LlmConfig(max_retries=-1)


def test_mock_returns_fixture_bytes(tmp_path):
    (tmp_path / "go_left.0.resp.txt").write_text("canned response", encoding="utf-8")
    transport = MockTransport(tmp_path)
    assert transport.complete("whatever", RequestContext("go_left", 0)) == "canned response"


def test_mock_miss_names_the_key(tmp_path):
    transport = MockTransport(tmp_path)
    with pytest.raises(FixtureMissError, match="go_left.*1"):
        transport.complete("prompt", RequestContext("go_left", 1))


def test_mock_ids_may_contain_dots(tmp_path):
    (tmp_path / "a.b.2.resp.txt").write_text("x", encoding="utf-8")
    transport = MockTransport(tmp_path)
    assert transport.complete("p", RequestContext("a.b", 2)) == "x"


def test_shipped_fixture_store_loads():
    transport = MockTransport(default_fixtures_dir())
    text = transport.complete("p", RequestContext("go_left", 0))
    assert "modified_trajectory" in text


def test_complete_dispatches_to_mock(tmp_path):
    (tmp_path / "s.0.resp.txt").write_text("ok", encoding="utf-8")
    cfg = LlmConfig(transport="mock", fixtures_dir=str(tmp_path))
    assert complete("p", cfg, RequestContext("s", 0)) == "ok"


def test_live_unreachable_endpoint_errors_after_retries(monkeypatch):
    monkeypatch.setenv("TRAJADAPT_API_KEY", "test-key")
    cfg = LlmConfig(
        transport="live", endpoint="http://127.0.0.1:9", timeout_s=0.2, max_retries=1
    )
    with pytest.raises(TransportError, match="2 attempts"):
        make_transport(cfg).complete("p", RequestContext("s", 0))


def test_live_requires_api_key(monkeypatch):
    monkeypatch.delenv("TRAJADAPT_API_KEY", raising=False)
    monkeypatch.delenv("OPENAI_API_KEY", raising=False)
    cfg = LlmConfig(transport="live", endpoint="http://127.0.0.1:9")
    with pytest.raises(TransportError, match="API key"):
        make_transport(cfg).complete("p", RequestContext("s", 0))


def _respond(handler):
    return httpx.Client(transport=httpx.MockTransport(handler))


def test_live_happy_path(monkeypatch):
    monkeypatch.setenv("TRAJADAPT_API_KEY", "test-key")
    captured = {}

    def handler(request: httpx.Request) -> httpx.Response:
        captured["url"] = str(request.url)
        captured["body"] = json.loads(request.content)
        captured["auth"] = request.headers.get("authorization")
        return httpx.Response(
            200, json={"choices": [{"message": {"content": "the reply"}}]}
        )

    cfg = LlmConfig(transport="live", endpoint="http://llm.test/v1", model="m1", temperature=0.3)
    transport = LiveTransport(cfg, client=_respond(handler))
    assert transport.complete("the prompt", RequestContext("s", 0)) == "the reply"
    assert captured["url"] == "http://llm.test/v1/chat/completions"
    assert captured["auth"] == "Bearer test-key"
    assert captured["body"]["model"] == "m1"
    assert captured["body"]["temperature"] == 0.3
    assert captured["body"]["messages"] == [{"role": "user", "content": "the prompt"}]


def test_live_retries_then_succeeds(monkeypatch):
    monkeypatch.setenv("TRAJADAPT_API_KEY", "k")
    calls = {"n": 0}

    def handler(request: httpx.Request) -> httpx.Response:
        calls["n"] += 1
        if calls["n"] == 1:
            return httpx.Response(500, text="boom")
        return httpx.Response(200, json={"choices": [{"message": {"content": "ok"}}]})

    cfg = LlmConfig(transport="live", endpoint="http://llm.test", max_retries=2)
    assert LiveTransport(cfg, client=_respond(handler)).complete("p", RequestContext("s", 0)) == "ok"
    assert calls["n"] == 2


def test_live_malformed_payload_exhausts_retries(monkeypatch):
    monkeypatch.setenv("TRAJADAPT_API_KEY", "k")

    def handler(request: httpx.Request) -> httpx.Response:
        return httpx.Response(200, json={"unexpected": True})

    cfg = LlmConfig(transport="live", endpoint="http://llm.test", max_retries=1)
    with pytest.raises(TransportError, match="malformed"):
        LiveTransport(cfg, client=_respond(handler)).complete("p", RequestContext("s", 0))
