"""AST node types for AdaptScript programs, plus the canonical printer.

Nodes compare structurally: source positions are carried for error messages
but excluded from equality, so `parse(to_source(parse(src)))` round-trips to
an equal tree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

Value = Union[float, str, bool, None]


@dataclass(frozen=True)
class Literal:
    value: Value
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ListLit:
    items: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Index:
    base: "Expr"
    index: "Expr"
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Slice:
    base: "Expr"
    lower: "Expr | None"
    upper: "Expr | None"
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Unary:
    op: str  # '-' or 'not'
    operand: "Expr"
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class MethodCall:
    base: "Expr"
    method: str  # 'append' or 'extend'
    args: tuple
    line: int = field(default=0, compare=False)


Expr = Union[Literal, ListLit, Var, Index, Slice, Unary, Binary, Call, MethodCall]


@dataclass(frozen=True)
class Assign:
    target: str
    value: Expr
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class IndexAssign:
    base: Expr
    index: Expr
    value: Expr
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ForRange:
    var: str
    start: Expr
    stop: Expr
    step: Expr
    body: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class IfChain:
    branches: tuple  # of (condition, tuple-of-statements)
    orelse: "tuple | None"
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ExprStmt:
    value: Expr
    line: int = field(default=0, compare=False)


Stmt = Union[Assign, IndexAssign, ForRange, IfChain, ExprStmt]


@dataclass(frozen=True)
class Program:
    statements: tuple


_ATOMIC = (Literal, ListLit, Var, Index, Slice, Call, MethodCall)


def _expr_source(node: Expr) -> str:
    if isinstance(node, Literal):
        if node.value is None:
            return "None"
        if node.value is True:
            return "True"
        if node.value is False:
            return "False"
        if isinstance(node.value, str):
            escaped = node.value.replace("\\", "\\\\").replace('"', '\\"')
            escaped = escaped.replace("\n", "\\n").replace("\t", "\\t")
            return f'"{escaped}"'
        return repr(node.value)
    if isinstance(node, ListLit):
        return "[" + ", ".join(_expr_source(e) for e in node.items) + "]"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Index):
        return f"{_postfix_base(node.base)}[{_expr_source(node.index)}]"
    if isinstance(node, Slice):
        lo = _expr_source(node.lower) if node.lower is not None else ""
        hi = _expr_source(node.upper) if node.upper is not None else ""
        return f"{_postfix_base(node.base)}[{lo}:{hi}]"
    if isinstance(node, Unary):
        sep = " " if node.op == "not" else ""
        return f"({node.op}{sep}{_expr_source(node.operand)})"
    if isinstance(node, Binary):
        return f"({_expr_source(node.left)} {node.op} {_expr_source(node.right)})"
    if isinstance(node, Call):
        return f"{node.name}(" + ", ".join(_expr_source(a) for a in node.args) + ")"
    if isinstance(node, MethodCall):
        args = ", ".join(_expr_source(a) for a in node.args)
        return f"{_postfix_base(node.base)}.{node.method}({args})"
    raise TypeError(f"not an expression node: {node!r}")


def _postfix_base(node: Expr) -> str:
    # bases of [], . already bind tightest; everything else needs parens
    text = _expr_source(node)
    if isinstance(node, _ATOMIC):
        return text
    return text if text.startswith("(") else f"({text})"


def _stmt_lines(stmt: Stmt, depth: int, out: list[str]) -> None:
    pad = "    " * depth
    if isinstance(stmt, Assign):
        out.append(f"{pad}{stmt.target} = {_expr_source(stmt.value)}")
    elif isinstance(stmt, IndexAssign):
        base = _postfix_base(stmt.base)
        out.append(f"{pad}{base}[{_expr_source(stmt.index)}] = {_expr_source(stmt.value)}")
    elif isinstance(stmt, ForRange):
        head = (
            f"{pad}for {stmt.var} in range({_expr_source(stmt.start)}, "
            f"{_expr_source(stmt.stop)}, {_expr_source(stmt.step)}):"
        )
        out.append(head)
        for inner in stmt.body:
            _stmt_lines(inner, depth + 1, out)
    elif isinstance(stmt, IfChain):
        for i, (cond, body) in enumerate(stmt.branches):
            word = "if" if i == 0 else "elif"
            out.append(f"{pad}{word} {_expr_source(cond)}:")
            for inner in body:
                _stmt_lines(inner, depth + 1, out)
        if stmt.orelse is not None:
            out.append(f"{pad}else:")
            for inner in stmt.orelse:
                _stmt_lines(inner, depth + 1, out)
    elif isinstance(stmt, ExprStmt):
        out.append(f"{pad}{_expr_source(stmt.value)}")
    else:
        raise TypeError(f"not a statement node: {stmt!r}")


def to_source(program: Program) -> str:
    """Canonical source text; reparsing yields a structurally equal Program."""
    lines: list[str] = []
    for stmt in program.statements:
        _stmt_lines(stmt, 0, lines)
    return "\n".join(lines) + "\n"
