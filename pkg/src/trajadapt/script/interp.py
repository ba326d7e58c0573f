"""Step-budgeted tree-walking evaluator for AdaptScript programs.

Execution is deterministic and isolated: a fresh global environment per run,
no I/O, no clock, no randomness, and the caller's trajectory value is never
mutated (scripts only ever see fresh list copies).  Every statement and
expression evaluation charges the step budget, so all loops terminate.

The script must leave its result in a global named ``modified_trajectory``
as a list of ``[x, y, z, v]`` rows; the outcome carries either the converted
trajectory or a structured error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..core import Scene, Trajectory
from . import ast
from .builtins import make_builtins
from .parser import ParseError, parse
from .tokens import LexError, tokenize

ERROR_KINDS = frozenset(
    {
        "lex",
        "parse",
        "name",
        "type",
        "index",
        "budget",
        "missing_output",
        "bad_output_shape",
        "numeric",
    }
)


@dataclass(frozen=True)
class SandboxLimits:
    step_budget: int = 1_000_000
    max_list_len: int = 1_000_000

    def __post_init__(self) -> None:
        if self.step_budget <= 0 or self.max_list_len <= 0:
            raise ValueError("sandbox limits must be positive")


@dataclass(frozen=True)
class ScriptError:
    kind: str
    message: str
    line: int | None = None

    def __str__(self) -> str:
        where = f" (line {self.line})" if self.line is not None else ""
        return f"{self.kind}: {self.message}{where}"


@dataclass(frozen=True)
class ExecOutcome:
    modified: Trajectory | None = None
    error: ScriptError | None = None

    def __post_init__(self) -> None:
        if (self.modified is None) == (self.error is None):
            raise ValueError("outcome must carry exactly one of modified/error")

    @property
    def ok(self) -> bool:
        return self.modified is not None


class _Abort(Exception):
    """Internal signal carrying a ScriptError out of the evaluator."""

    def __init__(self, error: ScriptError):
        super().__init__(str(error))
        self.error = error


class _Interp:
    def __init__(self, scene: Scene, traj: Trajectory, limits: SandboxLimits):
        self.limits = limits
        self.max_list_len = limits.max_list_len
        self.steps = 0
        self.line: int | None = None
        self.env: dict[str, object] = {}
        self.builtins = make_builtins(scene, traj, self)

    # --- context interface used by builtins ---

    def charge(self, steps: int = 1) -> None:
        self.steps += steps
        if self.steps > self.limits.step_budget:
            self.fail("budget", f"step budget of {self.limits.step_budget} exceeded")

    def fail(self, kind: str, message: str):
        raise _Abort(ScriptError(kind, message, self.line))

    # --- statements ---

    def run(self, program: ast.Program) -> None:
        for stmt in program.statements:
            self.exec_stmt(stmt)

    def exec_stmt(self, stmt: ast.Stmt) -> None:
        self.line = stmt.line or self.line
        self.charge()
        if isinstance(stmt, ast.Assign):
            self.env[stmt.target] = self.eval(stmt.value)
        elif isinstance(stmt, ast.IndexAssign):
            base = self.eval(stmt.base)
            if not isinstance(base, list):
                self.fail("type", "only list elements can be assigned by index")
            idx = self._list_index(base, self.eval(stmt.index))
            base[idx] = self.eval(stmt.value)
        elif isinstance(stmt, ast.ForRange):
            self._exec_for(stmt)
        elif isinstance(stmt, ast.IfChain):
            for cond, body in stmt.branches:
                if self._truthy(self.eval(cond)):
                    for inner in body:
                        self.exec_stmt(inner)
                    return
            if stmt.orelse is not None:
                for inner in stmt.orelse:
                    self.exec_stmt(inner)
        elif isinstance(stmt, ast.ExprStmt):
            self.eval(stmt.value)
        else:
            self.fail("type", f"cannot execute {type(stmt).__name__}")

    def _exec_for(self, stmt: ast.ForRange) -> None:
        start = self._int_arg(self.eval(stmt.start), "range() start")
        stop = self._int_arg(self.eval(stmt.stop), "range() stop")
        step = self._int_arg(self.eval(stmt.step), "range() step")
        if step == 0:
            self.fail("type", "range() step must not be zero")
        i = start
        while (step > 0 and i < stop) or (step < 0 and i > stop):
            self.charge()
            self.env[stmt.var] = float(i)
            for inner in stmt.body:
                self.exec_stmt(inner)
            i += step

    # --- expressions ---

    def eval(self, node: ast.Expr):
        self.line = node.line or self.line
        self.charge()
        if isinstance(node, ast.Literal):
            return node.value
        if isinstance(node, ast.ListLit):
            if len(node.items) > self.max_list_len:
                self.fail("budget", "list size limit exceeded")
            return [self.eval(item) for item in node.items]
        if isinstance(node, ast.Var):
            try:
                return self.env[node.name]
            except KeyError:
                self.fail("name", f"name '{node.name}' is not defined")
        if isinstance(node, ast.Index):
            return self._eval_index(node)
        if isinstance(node, ast.Slice):
            return self._eval_slice(node)
        if isinstance(node, ast.Unary):
            return self._eval_unary(node)
        if isinstance(node, ast.Binary):
            return self._eval_binary(node)
        if isinstance(node, ast.Call):
            fn = self.builtins.get(node.name)
            if fn is None:
                self.fail("name", f"unknown function '{node.name}'")
            args = [self.eval(a) for a in node.args]
            try:
                return fn(*args)
            except TypeError:
                self.fail("type", f"wrong number of arguments for {node.name}()")
        if isinstance(node, ast.MethodCall):
            return self._eval_method(node)
        self.fail("type", f"cannot evaluate {type(node).__name__}")

    def _eval_index(self, node: ast.Index):
        base = self.eval(node.base)
        if not isinstance(base, list):
            self.fail("type", "only lists can be indexed")
        return base[self._list_index(base, self.eval(node.index))]

    def _eval_slice(self, node: ast.Slice):
        base = self.eval(node.base)
        if not isinstance(base, list):
            self.fail("type", "only lists can be sliced")
        lo = None if node.lower is None else self._int_arg(self.eval(node.lower), "slice bound")
        hi = None if node.upper is None else self._int_arg(self.eval(node.upper), "slice bound")
        return base[lo:hi]

    def _eval_unary(self, node: ast.Unary):
        value = self.eval(node.operand)
        if node.op == "not":
            return not self._truthy(value)
        if not self._is_number(value):
            self.fail("type", "unary '-' needs a number")
        return -value

    def _eval_binary(self, node: ast.Binary):
        op = node.op
        if op == "and":
            left = self.eval(node.left)
            if not self._truthy(left):
                return False
            return self._truthy(self.eval(node.right))
        if op == "or":
            left = self.eval(node.left)
            if self._truthy(left):
                return True
            return self._truthy(self.eval(node.right))
        left = self.eval(node.left)
        right = self.eval(node.right)
        if op in ("==", "!="):
            equal = self._deep_equal(left, right)
            return equal if op == "==" else not equal
        if op in ("<", "<=", ">", ">="):
            if not (self._is_number(left) and self._is_number(right)):
                self.fail("type", f"'{op}' compares numbers")
            if op == "<":
                return left < right
            if op == "<=":
                return left <= right
            if op == ">":
                return left > right
            return left >= right
        if op == "+" and isinstance(left, list) and isinstance(right, list):
            if len(left) + len(right) > self.max_list_len:
                self.fail("budget", "list size limit exceeded")
            self.charge(len(left) + len(right))
            return left + right
        if op == "+" and isinstance(left, str) and isinstance(right, str):
            return left + right
        if not (self._is_number(left) and self._is_number(right)):
            self.fail("type", f"'{op}' needs numeric operands")
        try:
            if op == "+":
                result = left + right
            elif op == "-":
                result = left - right
            elif op == "*":
                result = left * right
            elif op == "/":
                result = left / right
            elif op == "%":
                result = left % right
            elif op == "**":
                result = math.pow(left, right)
            else:
                self.fail("type", f"unknown operator '{op}'")
        except ZeroDivisionError:
            self.fail("numeric", "division by zero")
        except (OverflowError, ValueError):
            self.fail("numeric", f"invalid arithmetic result for '{op}'")
        if not math.isfinite(result):
            self.fail("numeric", f"non-finite arithmetic result for '{op}'")
        return result

    def _eval_method(self, node: ast.MethodCall):
        base = self.eval(node.base)
        if not isinstance(base, list):
            self.fail("type", f".{node.method}() exists only on lists")
        args = [self.eval(a) for a in node.args]
        if node.method == "append":
            if len(args) != 1:
                self.fail("type", ".append() takes exactly one argument")
            if len(base) + 1 > self.max_list_len:
                self.fail("budget", "list size limit exceeded")
            base.append(args[0])
            return None
        if len(args) != 1:
            self.fail("type", ".extend() takes exactly one argument")
        if not isinstance(args[0], list):
            self.fail("type", ".extend() takes a list")
        if len(base) + len(args[0]) > self.max_list_len:
            self.fail("budget", "list size limit exceeded")
        self.charge(len(args[0]))
        base.extend(args[0])
        return None

    # --- helpers ---

    @staticmethod
    def _is_number(value) -> bool:
        return isinstance(value, float) and not isinstance(value, bool)

    def _truthy(self, value) -> bool:
        if value is None:
            return False
        if isinstance(value, bool):
            return value
        if isinstance(value, float):
            return value != 0.0
        if isinstance(value, (str, list)):
            return len(value) > 0
        return True

    def _deep_equal(self, a, b) -> bool:
        if isinstance(a, bool) or isinstance(b, bool):
            return isinstance(a, bool) and isinstance(b, bool) and a == b
        if a is None or b is None:
            return a is None and b is None
        if isinstance(a, float) and isinstance(b, float):
            return a == b
        if isinstance(a, str) and isinstance(b, str):
            return a == b
        if isinstance(a, list) and isinstance(b, list):
            return len(a) == len(b) and all(
                self._deep_equal(x, y) for x, y in zip(a, b)
            )
        return False

    def _int_arg(self, value, what: str) -> int:
        if not self._is_number(value):
            self.fail("type", f"{what} must be a number")
        rounded = round(value)
        if abs(value - rounded) > 1e-9:
            self.fail("type", f"{what} must be an integer, got {value}")
        return int(rounded)

    def _list_index(self, base: list, value) -> int:
        idx = self._int_arg(value, "list index")
        if idx < 0:
            idx += len(base)
        if not 0 <= idx < len(base):
            self.fail("index", f"list index {self._int_arg(value, 'index')} out of range")
        return idx


def execute(
    program: ast.Program,
    scene: Scene,
    traj: Trajectory,
    limits: SandboxLimits = SandboxLimits(),
) -> ExecOutcome:
    """Run a parsed program and read back ``modified_trajectory``."""
    interp = _Interp(scene, traj, limits)
    try:
        interp.run(program)
    except _Abort as abort:
        return ExecOutcome(error=abort.error)
    except RecursionError:
        return ExecOutcome(error=ScriptError("budget", "evaluation nested too deeply", interp.line))
    if "modified_trajectory" not in interp.env:
        return ExecOutcome(
            error=ScriptError(
                "missing_output", "script never assigned 'modified_trajectory'"
            )
        )
    value = interp.env["modified_trajectory"]
    shaped, problem = _as_trajectory(value)
    if shaped is None:
        return ExecOutcome(error=ScriptError("bad_output_shape", problem))
    return ExecOutcome(modified=shaped)


def run_source(
    source: str,
    scene: Scene,
    traj: Trajectory,
    limits: SandboxLimits = SandboxLimits(),
) -> ExecOutcome:
    """Tokenize, parse and execute script source, mapping front-end errors."""
    try:
        program = parse(tokenize(source))
    except LexError as exc:
        return ExecOutcome(error=ScriptError("lex", exc.message, exc.line))
    except ParseError as exc:
        return ExecOutcome(error=ScriptError("parse", exc.message, exc.line))
    return execute(program, scene, traj, limits)


def _as_trajectory(value) -> tuple[Trajectory | None, str]:
    if not isinstance(value, list):
        return None, "modified_trajectory must be a list of [x, y, z, v] rows"
    if len(value) < 2:
        return None, f"modified_trajectory needs at least 2 waypoints, got {len(value)}"
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != 4:
            return None, f"waypoint {i} must be a list of 4 numbers"
        for c in row:
            if isinstance(c, bool) or not isinstance(c, float):
                return None, f"waypoint {i} must contain only numbers"
            if not math.isfinite(c):
                return None, f"waypoint {i} contains a non-finite number"
        if row[3] < 0:
            return None, f"waypoint {i} has negative speed {row[3]}"
        rows.append(row)
    return Trajectory.from_rows(rows), ""
