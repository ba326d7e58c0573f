"""Recursive-descent parser for AdaptScript.

Grammar (statements end at NEWLINE; blocks are INDENT..DEDENT):

    program  := {stmt}
    stmt     := assign | for | if | exprstmt
    assign   := target '=' expr NEWLINE
    target   := IDENT {'[' expr ']'}
    for      := 'for' IDENT 'in' 'range' '(' expr [',' expr [',' expr]] ')' ':' block
    if       := 'if' expr ':' block {'elif' expr ':' block} ['else' ':' block]
    block    := NEWLINE INDENT stmt {stmt} DEDENT
    exprstmt := expr NEWLINE

Expression precedence, loosest first: or, and, not, comparison
(< <= > >= == !=), additive (+ -), multiplicative (* / %), unary -,
power (**, right-associative), postfix (call, index, slice, .append/.extend).

Function calls are resolved against the builtin table at parse time; the
language has no user-defined functions.  Constructs outside the grammar
(while, def, imports, dict literals, other attribute access, ...) are
rejected with an error naming the offending token.
"""

from __future__ import annotations

from . import ast
from .builtins import BUILTIN_NAMES
from .tokens import (
    DEDENT,
    EOF,
    IDENT,
    INDENT,
    KEYWORD,
    NEWLINE,
    NUMBER,
    OPERATOR,
    STRING,
    RESERVED,
    Token,
)

# ~10 interpreter stack frames per nesting level; keep well under Python's
# default recursion limit
_MAX_DEPTH = 60
_METHODS = ("append", "extend")
_COMPARISONS = ("<", "<=", ">", ">=", "==", "!=")


class ParseError(Exception):
    def __init__(self, message: str, token: Token | None = None):
        self.message = message
        self.line = token.line if token is not None else None
        if token is not None:
            super().__init__(f"{message} (line {token.line}, column {token.column})")
        else:
            super().__init__(message)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.depth = 0

    # --- token plumbing ---

    def peek(self, offset: int = 0) -> Token:
        i = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[i]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != EOF:
            self.pos += 1
        return tok

    def at(self, kind: str, lexeme: str | None = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (lexeme is None or tok.lexeme == lexeme)

    def expect(self, kind: str, lexeme: str | None = None) -> Token:
        if not self.at(kind, lexeme):
            want = lexeme if lexeme is not None else kind
            raise ParseError(f"expected {want!r}, found {self.peek()}", self.peek())
        return self.advance()

    # --- statements ---

    def parse_program(self) -> ast.Program:
        stmts = []
        while not self.at(EOF):
            stmts.append(self.parse_stmt())
        return ast.Program(tuple(stmts))

    def parse_stmt(self) -> ast.Stmt:
        tok = self.peek()
        if tok.kind == KEYWORD:
            if tok.lexeme == "for":
                return self.parse_for()
            if tok.lexeme == "if":
                return self.parse_if()
            if tok.lexeme in RESERVED:
                raise ParseError(f"unsupported construct '{tok.lexeme}'", tok)
            if tok.lexeme in ("elif", "else"):
                raise ParseError(f"'{tok.lexeme}' without matching 'if'", tok)
        if tok.kind == OPERATOR and tok.lexeme == "{":
            raise ParseError("unsupported construct '{' (no dict literals)", tok)
        if tok.kind == IDENT and self._looks_like_assignment():
            return self.parse_assign()
        expr = self.parse_expr()
        self.expect(NEWLINE)
        return ast.ExprStmt(expr, line=tok.line)

    def _looks_like_assignment(self) -> bool:
        # IDENT followed by balanced '[...]' groups and then a bare '='
        i = self.pos + 1
        while i < len(self.tokens):
            tok = self.tokens[i]
            if tok.kind == OPERATOR and tok.lexeme == "[":
                nesting = 1
                i += 1
                while i < len(self.tokens) and nesting > 0:
                    t = self.tokens[i]
                    if t.kind == OPERATOR and t.lexeme == "[":
                        nesting += 1
                    elif t.kind == OPERATOR and t.lexeme == "]":
                        nesting -= 1
                    elif t.kind in (NEWLINE, EOF):
                        return False
                    i += 1
                continue
            return tok.kind == OPERATOR and tok.lexeme == "="
        return False

    def parse_assign(self) -> ast.Stmt:
        name_tok = self.expect(IDENT)
        node: ast.Expr = ast.Var(name_tok.lexeme, line=name_tok.line)
        subscripts = []
        while self.at(OPERATOR, "["):
            self.advance()
            subscripts.append(self.parse_expr())
            self.expect(OPERATOR, "]")
        self.expect(OPERATOR, "=")
        value = self.parse_expr()
        self.expect(NEWLINE)
        if not subscripts:
            return ast.Assign(name_tok.lexeme, value, line=name_tok.line)
        for sub in subscripts[:-1]:
            node = ast.Index(node, sub, line=name_tok.line)
        return ast.IndexAssign(node, subscripts[-1], value, line=name_tok.line)

    def parse_for(self) -> ast.ForRange:
        head = self.expect(KEYWORD, "for")
        var = self.expect(IDENT).lexeme
        self.expect(KEYWORD, "in")
        range_tok = self.peek()
        if not (range_tok.kind == IDENT and range_tok.lexeme == "range"):
            raise ParseError("for-loops must iterate over range(...)", range_tok)
        self.advance()
        self.expect(OPERATOR, "(")
        args = [self.parse_expr()]
        while self.at(OPERATOR, ","):
            self.advance()
            args.append(self.parse_expr())
        self.expect(OPERATOR, ")")
        if len(args) == 1:
            start, stop, step = ast.Literal(0.0), args[0], ast.Literal(1.0)
        elif len(args) == 2:
            start, stop, step = args[0], args[1], ast.Literal(1.0)
        elif len(args) == 3:
            start, stop, step = args
        else:
            raise ParseError("range() takes 1 to 3 arguments", range_tok)
        self.expect(OPERATOR, ":")
        body = self.parse_block()
        return ast.ForRange(var, start, stop, step, body, line=head.line)

    def parse_if(self) -> ast.IfChain:
        head = self.expect(KEYWORD, "if")
        branches = [(self.parse_expr(), self._branch_block())]
        orelse = None
        while self.at(KEYWORD, "elif"):
            self.advance()
            branches.append((self.parse_expr(), self._branch_block()))
        if self.at(KEYWORD, "else"):
            self.advance()
            self.expect(OPERATOR, ":")
            orelse = self.parse_block()
        return ast.IfChain(tuple(branches), orelse, line=head.line)

    def _branch_block(self) -> tuple:
        self.expect(OPERATOR, ":")
        return self.parse_block()

    def parse_block(self) -> tuple:
        self.expect(NEWLINE)
        self.expect(INDENT)
        stmts = [self.parse_stmt()]
        while not self.at(DEDENT):
            stmts.append(self.parse_stmt())
        self.expect(DEDENT)
        return tuple(stmts)

    # --- expressions ---

    def parse_expr(self) -> ast.Expr:
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            raise ParseError("expression nesting too deep", self.peek())
        try:
            return self.parse_or()
        finally:
            self.depth -= 1

    def parse_or(self) -> ast.Expr:
        node = self.parse_and()
        while self.at(KEYWORD, "or"):
            tok = self.advance()
            node = ast.Binary("or", node, self.parse_and(), line=tok.line)
        return node

    def parse_and(self) -> ast.Expr:
        node = self.parse_not()
        while self.at(KEYWORD, "and"):
            tok = self.advance()
            node = ast.Binary("and", node, self.parse_not(), line=tok.line)
        return node

    def parse_not(self) -> ast.Expr:
        if self.at(KEYWORD, "not"):
            tok = self.advance()
            return ast.Unary("not", self.parse_not(), line=tok.line)
        return self.parse_comparison()

    def parse_comparison(self) -> ast.Expr:
        node = self.parse_additive()
        while self.peek().kind == OPERATOR and self.peek().lexeme in _COMPARISONS:
            tok = self.advance()
            node = ast.Binary(tok.lexeme, node, self.parse_additive(), line=tok.line)
        return node

    def parse_additive(self) -> ast.Expr:
        node = self.parse_multiplicative()
        while self.peek().kind == OPERATOR and self.peek().lexeme in ("+", "-"):
            tok = self.advance()
            node = ast.Binary(tok.lexeme, node, self.parse_multiplicative(), line=tok.line)
        return node

    def parse_multiplicative(self) -> ast.Expr:
        node = self.parse_unary()
        while self.peek().kind == OPERATOR and self.peek().lexeme in ("*", "/", "%"):
            tok = self.advance()
            node = ast.Binary(tok.lexeme, node, self.parse_unary(), line=tok.line)
        return node

    def parse_unary(self) -> ast.Expr:
        if self.at(OPERATOR, "-"):
            tok = self.advance()
            return ast.Unary("-", self.parse_unary(), line=tok.line)
        return self.parse_power()

    def parse_power(self) -> ast.Expr:
        node = self.parse_postfix()
        if self.at(OPERATOR, "**"):
            tok = self.advance()
            # right-associative; exponent may carry a unary minus
            return ast.Binary("**", node, self.parse_unary(), line=tok.line)
        return node

    def parse_postfix(self) -> ast.Expr:
        node = self.parse_primary()
        while True:
            if self.at(OPERATOR, "["):
                open_tok = self.advance()
                node = self._finish_subscript(node, open_tok)
                continue
            if self.at(OPERATOR, "."):
                self.advance()
                name_tok = self.expect(IDENT)
                if name_tok.lexeme not in _METHODS:
                    raise ParseError(
                        f"unsupported method '{name_tok.lexeme}' "
                        "(only .append and .extend exist)",
                        name_tok,
                    )
                self.expect(OPERATOR, "(")
                args = self._call_args()
                node = ast.MethodCall(node, name_tok.lexeme, tuple(args), line=name_tok.line)
                continue
            if self.at(OPERATOR, "("):
                raise ParseError("only named builtin functions can be called", self.peek())
            return node

    def _finish_subscript(self, base: ast.Expr, open_tok: Token) -> ast.Expr:
        if self.at(OPERATOR, ":"):
            self.advance()
            upper = None if self.at(OPERATOR, "]") else self.parse_expr()
            self.expect(OPERATOR, "]")
            return ast.Slice(base, None, upper, line=open_tok.line)
        first = self.parse_expr()
        if self.at(OPERATOR, ":"):
            self.advance()
            upper = None if self.at(OPERATOR, "]") else self.parse_expr()
            self.expect(OPERATOR, "]")
            return ast.Slice(base, first, upper, line=open_tok.line)
        self.expect(OPERATOR, "]")
        return ast.Index(base, first, line=open_tok.line)

    def _call_args(self) -> list[ast.Expr]:
        # opening '(' already consumed
        args: list[ast.Expr] = []
        if not self.at(OPERATOR, ")"):
            args.append(self.parse_expr())
            while self.at(OPERATOR, ","):
                self.advance()
                args.append(self.parse_expr())
        self.expect(OPERATOR, ")")
        return args

    def parse_primary(self) -> ast.Expr:
        tok = self.peek()
        if tok.kind == NUMBER:
            self.advance()
            return ast.Literal(float(tok.lexeme), line=tok.line)
        if tok.kind == STRING:
            self.advance()
            return ast.Literal(tok.lexeme, line=tok.line)
        if tok.kind == KEYWORD and tok.lexeme in ("True", "False", "None"):
            self.advance()
            value = {"True": True, "False": False, "None": None}[tok.lexeme]
            return ast.Literal(value, line=tok.line)
        if tok.kind == IDENT:
            self.advance()
            if self.at(OPERATOR, "("):
                self.advance()
                if tok.lexeme not in BUILTIN_NAMES:
                    raise ParseError(f"unknown function '{tok.lexeme}'", tok)
                args = self._call_args()
                return ast.Call(tok.lexeme, tuple(args), line=tok.line)
            return ast.Var(tok.lexeme, line=tok.line)
        if tok.kind == OPERATOR and tok.lexeme == "(":
            self.advance()
            inner = self.parse_expr()
            self.expect(OPERATOR, ")")
            return inner
        if tok.kind == OPERATOR and tok.lexeme == "[":
            self.advance()
            items: list[ast.Expr] = []
            if not self.at(OPERATOR, "]"):
                items.append(self.parse_expr())
                while self.at(OPERATOR, ","):
                    self.advance()
                    if self.at(OPERATOR, "]"):  # trailing comma
                        break
                    items.append(self.parse_expr())
            self.expect(OPERATOR, "]")
            return ast.ListLit(tuple(items), line=tok.line)
        if tok.kind == OPERATOR and tok.lexeme == "{":
            raise ParseError("unsupported construct '{' (no dict literals)", tok)
        if tok.kind == KEYWORD and tok.lexeme in RESERVED:
            raise ParseError(f"unsupported construct '{tok.lexeme}'", tok)
        raise ParseError(f"unexpected token {tok}", tok)


def parse(tokens: list[Token]) -> ast.Program:
    return _Parser(tokens).parse_program()
