"""Prompt assembly for the plan-plus-code request.

The prompt is a single block of task-agnostic guidance (role, available
functions, coordinate system, rules, script-language subset, output
structure, two worked examples) followed by the scene description, any
review feedback so far, and the instruction itself.  Building it is a pure
function of the request, which makes the full pipeline snapshot-testable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import Scene
from ..script import BUILTIN_SIGNATURES

DEFAULT_COORDINATE_SYSTEM = """\
The positive X axis is left, the negative X axis is right.
The positive Y axis is front, the negative Y axis is back.
The positive Z axis is up, the negative Z axis is down."""

_ROLE = """\
You are an intelligent assistant that modifies robotic trajectories according to a user's instruction.
Your task is to produce a JSON object with two parts:
1) A high-level plan describing which points need to be changed based on the instruction. Think step by step.
2) Code in the script language described below that changes the waypoints in accordance with the high-level plan."""

_FUNCTIONS = """\
FUNCTIONS AVAILABLE:
detect_objects(object_name): returns the [x, y, z] coordinates of the object if it is present, else returns None
get_trajectory(): returns the trajectory as a list of [x, y, z, velocity] waypoints"""

_RULES = """\
RULES:
1. Use only the provided functions for getting required data; do not implement dummy functions.
2. Shift the points gradually if needed to ensure a smooth trajectory.
3. Deduce from the instruction if the goal point should be changed.
4. Waypoints can be added or removed. Ensure that waypoints do not violate any constraints.
5. Intermediate waypoints shall be modified to ensure a smooth trajectory.
6. Store the new trajectory in a variable called modified_trajectory.
7. If required, the changes in the velocity should be with respect to the original velocity, and velocity changes shall be smooth."""

_LANGUAGE_HEADER = """\
SCRIPT LANGUAGE:
Write the code in the following restricted, indentation-delimited subset (no other constructs exist):
- statements: assignment (x = expr, xs[i] = expr), for i in range(...) loops, if/elif/else, expression statements
- expressions: numbers, strings, True/False/None, list literals [a, b], arithmetic + - * / % **, comparisons < <= > >= == !=, and/or/not, indexing xs[i], slicing xs[i:j], and the list methods .append(x) and .extend(xs)
- there are no function definitions, while loops, imports, dict literals, or attributes other than .append/.extend
- the only callable functions are the builtins listed here:"""

_OUTPUT_STRUCTURE = """\
OUTPUT STRUCTURE:
Return a single top-level JSON object of the form:
{
  "high_level_plan": "the numbered plan steps as one string",
  "code": "the script as a single string"
}"""

_EXAMPLES = """\
EXAMPLE 1:
Instruction: Go left
High-level plan:
1) Shift the goal position left.
2) Keep the start position the same.
3) Modify the points in the middle to ensure a gradual and smooth change in the trajectory, preserving the shape of the trajectory.

EXAMPLE 2:
Instruction: Walk further away from the box / walk closer to the box
High-level plan:
1) Keep the goal position the same.
2) Keep the starting position the same.
3) Identify the location of the box. Iterate over all the intermediate points increasing/decreasing their distance from the box.
4) Ensure that the shape of the trajectory is preserved. Smoothen the trajectory to remove abrupt changes."""

_FINAL = (
    "The functions detect_objects() and get_trajectory() are predefined and must NOT be "
    "implemented; use them as they are.\n"
    "Return a valid high-level plan and code for the following instruction:\n"
    "[INSTRUCTION]: "
)


@dataclass(frozen=True)
class PromptRequest:
    instruction: str
    scene: Scene = field(default_factory=Scene)
    feedback_history: tuple[str, ...] = ()
    coordinate_system: str | None = None
    environment_description: str | None = None

    def __post_init__(self) -> None:
        if not self.instruction or not self.instruction.strip():
            raise ValueError("instruction must be nonempty")
        object.__setattr__(self, "feedback_history", tuple(self.feedback_history))


def _format_number(value: float) -> str:
    return f"{value:g}"


def render_environment(scene: Scene, override: str | None = None) -> str | None:
    """Environment section body, or None when there is nothing to describe."""
    if override is not None:
        return override
    parts = []
    if scene.description:
        parts.append(scene.description)
    for obj in scene.objects:
        coords = ", ".join(_format_number(c) for c in obj.position)
        parts.append(f"{obj.label} at [{coords}]")
    if not parts:
        return None
    return "\n".join(parts)


def build_prompt(req: PromptRequest) -> str:
    sections = [_ROLE, _FUNCTIONS]

    coords = req.coordinate_system or DEFAULT_COORDINATE_SYSTEM
    sections.append("COORDINATE SYSTEM:\n" + coords)

    environment = render_environment(req.scene, req.environment_description)
    if environment is not None:
        sections.append("ENVIRONMENT DESCRIPTION:\n" + environment)

    sections.append(_RULES)

    signatures = "\n".join(f"  {sig}" for sig in BUILTIN_SIGNATURES)
    sections.append(_LANGUAGE_HEADER + "\n" + signatures)

    sections.append(_OUTPUT_STRUCTURE)
    sections.append(_EXAMPLES)

    if req.feedback_history:
        lines = ["FEEDBACK:"]
        for i, entry in enumerate(req.feedback_history, start=1):
            lines.append(
                f'{i}. For the instruction "{req.instruction}", the reviewer responded: {entry}'
            )
        lines.append("Address every point above together with the original instruction.")
        sections.append("\n".join(lines))

    sections.append(_FINAL + req.instruction)
    return "\n\n".join(sections)
