"""Interactive equational proof assistant: kernel, theories, matcher, engine."""

from .errors import EqProofError
from .focus import Focused, focus_at, replace_focus
from .matcher import Direction, MatchResult, applicable_laws, apply_law, match_pattern
from .engine import (
    ProofState,
    Strategy,
    parse_script,
    promote,
    proof_step,
    render_proof,
    replay,
    start_proof,
    undo,
)
from .seed import seed_stack
from .syntax import parse_path, parse_term, render_path, render_term
from .terms import Binding, SideCondition, Term, alpha_equal, free_vars, substitute
from .theory import TheoryStack, load_stack, save_stack, visible_laws

__all__ = [
    "Binding",
    "Direction",
    "EqProofError",
    "Focused",
    "MatchResult",
    "ProofState",
    "SideCondition",
    "Strategy",
    "Term",
    "TheoryStack",
    "alpha_equal",
    "applicable_laws",
    "apply_law",
    "focus_at",
    "free_vars",
    "load_stack",
    "match_pattern",
    "parse_path",
    "parse_script",
    "parse_term",
    "promote",
    "proof_step",
    "render_path",
    "render_proof",
    "render_term",
    "replace_focus",
    "replay",
    "save_stack",
    "seed_stack",
    "start_proof",
    "substitute",
    "undo",
    "visible_laws",
]

__version__ = "0.1.0"
