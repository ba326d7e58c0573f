"""Parsing of the model's plan-plus-code response."""

from __future__ import annotations

import ast as python_ast
import json
from dataclasses import dataclass

_CODE_KEYS = ("code", "python_code", "Python code")


class ResponseParseError(Exception):
    """The response did not contain a usable plan/code object."""

    def __init__(self, message: str, raw: str):
        super().__init__(message)
        self.raw = raw


@dataclass(frozen=True)
class ProposalText:
    high_level_plan: str
    code: str
    raw: str


def _strip_fences(text: str) -> str:
    stripped = text.strip()
    if "```" not in stripped:
        return stripped
    # take the contents of the first fenced block that looks like an object;
    # otherwise just drop the fence lines
    chunks = stripped.split("```")
    for chunk in chunks[1:]:
        body = chunk.strip()
        if body.startswith(("json", "JSON")):
            body = body[4:].strip()
        if "{" in body:
            return body
    return "\n".join(line for line in stripped.splitlines() if not line.startswith("```"))


def _first_object_slice(text: str) -> str | None:
    start = text.find("{")
    if start < 0:
        return None
    depth = 0
    in_string: str | None = None
    i = start
    while i < len(text):
        ch = text[i]
        if in_string is not None:
            if ch == "\\":
                i += 2
                continue
            if ch == in_string:
                in_string = None
        elif ch in "\"'":
            in_string = ch
        elif ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth == 0:
                return text[start : i + 1]
        i += 1
    return None


def parse_response(text: str) -> ProposalText:
    """Extract the plan and code from a raw model response.

    Accepts optional surrounding code fences and either strict JSON or
    Python-literal style (single-quoted) objects.  The code may live under
    'code', 'python_code' or the legacy 'Python code' key.
    """
    if not text or not text.strip():
        raise ResponseParseError("empty response", text)
    candidate = _first_object_slice(_strip_fences(text))
    if candidate is None:
        raise ResponseParseError("no JSON object found in response", text)
    data = None
    try:
        data = json.loads(candidate)
    except json.JSONDecodeError:
        try:
            data = python_ast.literal_eval(candidate)
        except (ValueError, SyntaxError):
            raise ResponseParseError("response object is not valid JSON", text) from None
    if not isinstance(data, dict):
        raise ResponseParseError("response object is not a mapping", text)
    plan = data.get("high_level_plan")
    code = next((data[k] for k in _CODE_KEYS if k in data), None)
    if not isinstance(plan, str) or not plan.strip():
        raise ResponseParseError("missing or empty 'high_level_plan'", text)
    if not isinstance(code, str) or not code.strip():
        raise ResponseParseError("missing or empty 'code'", text)
    return ProposalText(high_level_plan=plan.strip(), code=code.strip(), raw=text)
