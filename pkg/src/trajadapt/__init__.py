"""trajadapt: natural-language trajectory adaptation with reviewable plans.

An instruction like "go left by 20" is turned into a high-level plan plus a
small adaptation script by an LLM; the script runs in a sandboxed
interpreter against the scene and trajectory, the result is checked against
machine-readable constraints, and a human approves the plan or sends the
loop another round of feedback.
"""

__version__ = "0.1.0"
