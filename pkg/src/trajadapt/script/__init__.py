"""AdaptScript: lexer, parser and step-budgeted sandboxed evaluator."""

from .ast import Program, to_source
from .builtins import BUILTIN_NAMES, BUILTIN_SIGNATURES
from .interp import ERROR_KINDS, ExecOutcome, SandboxLimits, ScriptError, execute, run_source
from .parser import ParseError, parse
from .tokens import LexError, Token, tokenize

__all__ = [
    "BUILTIN_NAMES",
    "BUILTIN_SIGNATURES",
    "ERROR_KINDS",
    "ExecOutcome",
    "LexError",
    "ParseError",
    "Program",
    "SandboxLimits",
    "ScriptError",
    "Token",
    "execute",
    "parse",
    "run_source",
    "to_source",
    "tokenize",
]
