"""Lexer for AdaptScript, the restricted language adaptation scripts use.

Indentation-delimited (offside rule, spaces only — a tab in indentation is a
lex error), with '#' line comments and implicit line joining inside brackets.
The token stream carries balanced INDENT/DEDENT pairs plus a NEWLINE after
every logical line, and always ends with EOF.
"""

from __future__ import annotations

from dataclasses import dataclass

IDENT = "identifier"
NUMBER = "number"
STRING = "string"
OPERATOR = "operator"
KEYWORD = "keyword"
INDENT = "indent"
DEDENT = "dedent"
NEWLINE = "newline"
EOF = "eof"

# keywords the grammar uses
KEYWORDS = frozenset(
    {"for", "in", "if", "elif", "else", "and", "or", "not", "True", "False", "None"}
)
# reserved words that name constructs the language deliberately lacks; lexed
# as keywords so the parser can report them by name
RESERVED = frozenset(
    {
        "def", "while", "import", "from", "lambda", "class", "return", "break",
        "continue", "pass", "del", "try", "except", "finally", "raise", "with",
        "global", "nonlocal", "assert", "yield", "is", "as", "match", "case",
    }
)

_TWO_CHAR_OPS = ("**", "==", "!=", "<=", ">=")
_ONE_CHAR_OPS = "+-*/%=<>()[]{},:."
_OPENERS = "([{"
_CLOSERS = ")]}"

_ESCAPES = {"n": "\n", "t": "\t", "\\": "\\", "'": "'", '"': '"'}


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    line: int
    column: int

    def __repr__(self) -> str:  # compact, for parser error messages
        return f"{self.kind}({self.lexeme!r})@{self.line}:{self.column}"


class LexError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    indents = [0]
    depth = 0  # bracket nesting; newlines inside brackets are joined

    lines = source.split("\n")
    line_no = 0
    for raw in lines:
        line_no += 1
        col = 0

        if depth == 0:
            # measure indentation (spaces only)
            while col < len(raw) and raw[col] in " \t":
                if raw[col] == "\t":
                    raise LexError("tab in indentation", line_no, col + 1)
                col += 1
            rest = raw[col:]
            if not rest or rest.startswith("#"):
                continue  # blank or comment-only line
            width = col
            if width > indents[-1]:
                indents.append(width)
                tokens.append(Token(INDENT, "", line_no, 1))
            else:
                while width < indents[-1]:
                    indents.pop()
                    tokens.append(Token(DEDENT, "", line_no, 1))
                if width != indents[-1]:
                    raise LexError("unindent does not match any outer level", line_no, 1)

        emitted = False
        while col < len(raw):
            ch = raw[col]
            if ch == " ":
                col += 1
                continue
            if ch == "\t":
                raise LexError("illegal tab character", line_no, col + 1)
            if ch == "#":
                break
            start_col = col + 1
            if ch.isdigit():
                j = col
                while j < len(raw) and raw[j].isdigit():
                    j += 1
                if j < len(raw) and raw[j] == ".":
                    j += 1
                    while j < len(raw) and raw[j].isdigit():
                        j += 1
                if j < len(raw) and raw[j] in "eE":
                    k = j + 1
                    if k < len(raw) and raw[k] in "+-":
                        k += 1
                    if k < len(raw) and raw[k].isdigit():
                        j = k
                        while j < len(raw) and raw[j].isdigit():
                            j += 1
                tokens.append(Token(NUMBER, raw[col:j], line_no, start_col))
                col = j
                emitted = True
                continue
            if ch.isalpha() or ch == "_":
                j = col
                while j < len(raw) and (raw[j].isalnum() or raw[j] == "_"):
                    j += 1
                word = raw[col:j]
                kind = KEYWORD if word in KEYWORDS or word in RESERVED else IDENT
                tokens.append(Token(kind, word, line_no, start_col))
                col = j
                emitted = True
                continue
            if ch in "'\"":
                quote = ch
                j = col + 1
                text = []
                while True:
                    if j >= len(raw):
                        raise LexError("unterminated string", line_no, start_col)
                    c = raw[j]
                    if c == "\\":
                        if j + 1 >= len(raw):
                            raise LexError("unterminated string", line_no, start_col)
                        esc = raw[j + 1]
                        text.append(_ESCAPES.get(esc, esc))
                        j += 2
                        continue
                    if c == quote:
                        j += 1
                        break
                    text.append(c)
                    j += 1
                tokens.append(Token(STRING, "".join(text), line_no, start_col))
                col = j
                emitted = True
                continue
            two = raw[col : col + 2]
            if two in _TWO_CHAR_OPS:
                tokens.append(Token(OPERATOR, two, line_no, start_col))
                col += 2
                emitted = True
                continue
            if ch in _ONE_CHAR_OPS:
                if ch in _OPENERS:
                    depth += 1
                elif ch in _CLOSERS:
                    depth = max(0, depth - 1)
                tokens.append(Token(OPERATOR, ch, line_no, start_col))
                col += 1
                emitted = True
                continue
            raise LexError(f"illegal character {ch!r}", line_no, start_col)

        if emitted and depth == 0:
            tokens.append(Token(NEWLINE, "", line_no, len(raw) + 1))

    end_line = line_no + 1
    if depth > 0:
        raise LexError("unclosed bracket at end of input", end_line, 1)
    while len(indents) > 1:
        indents.pop()
        tokens.append(Token(DEDENT, "", end_line, 1))
    tokens.append(Token(EOF, "", end_line, 1))
    return tokens
