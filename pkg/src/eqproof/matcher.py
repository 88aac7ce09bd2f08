"""Law matching: pattern match the focus, rank applicable laws, apply one.

A law whose schema is a top-level ``==`` or ``=`` can be applied in either
direction: L-to-R matches the left side and replaces it with the right,
R-to-L the reverse.  Matching is first-order and structural, modulo alpha
for bound variables; type checking prunes spurious matches afterwards.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from .errors import (
    EqProofError,
    IncompleteBinding,
    SideConditionViolated,
    TermTypeError,
)
from .focus import Focused, replace_focus
from .inference import analyze, infer, types_compatible
from .terms import (
    EXPR,
    PRED,
    App,
    Binding,
    Connective,
    PredConst,
    Quantifier,
    SchematicVar,
    Term,
    Var,
    alpha_equal,
    all_var_names,
    check_side_condition,
    fresh_name,
    node_count,
    substitute,
)
from .theory import Law, TheoryStack, visible_laws


class Direction(enum.Enum):
    LTOR = "L-to-R"
    RTOL = "R-to-L"

    @property
    def label(self) -> str:
        return self.value


def parse_direction(text: str) -> Direction:
    for d in Direction:
        if d.value == text:
            return d
    raise EqProofError(f"bad direction {text!r}")


def law_sides(law: Law, direction: Direction) -> Optional[Tuple[Term, Term]]:
    """(pattern, replacement) for the given direction; None if not rewritable."""
    schema = law.schema
    if isinstance(schema, Connective) and schema.op == "==":
        left, right = schema.args
    elif isinstance(schema, App) and schema.op == "=":
        left, right = schema.args
    else:
        return None
    return (left, right) if direction is Direction.LTOR else (right, left)


def _class_matches(klass: str, subject: Term) -> bool:
    if klass == EXPR:
        return isinstance(subject, (Var, App))
    # A predicate metavariable also matches boolean-valued applications;
    # the type check rejects non-boolean ones afterwards.
    return isinstance(subject, (PredConst, Connective, Quantifier, App))


def match_pattern(
    pattern: Term, subject: Term, binding: Optional[Binding] = None
) -> Optional[Binding]:
    """First-order structural match; None on failure.

    Repeated schematic variables must bind alpha-equal terms; pattern
    binders bind positionally to subject binders.
    """
    b = binding.copy() if binding is not None else Binding()

    def mp(p: Term, s: Term, pbound: frozenset) -> bool:
        if isinstance(p, SchematicVar):
            if not _class_matches(p.klass, s):
                return False
            if p.name in b.terms:
                return alpha_equal(b.terms[p.name], s)
            b.terms[p.name] = s
            return True
        if isinstance(p, Var):
            if not isinstance(s, Var):
                return False
            if p.name in pbound:
                return b.binders.get(p.name) == s.name
            return p.name == s.name
        if type(p) is not type(s):
            return False
        if isinstance(p, PredConst):
            return p.name == s.name
        if isinstance(p, (Connective, App)):
            if p.op != s.op or len(p.args) != len(s.args):
                return False
            return all(mp(pa, sa, pbound) for pa, sa in zip(p.args, s.args))
        if isinstance(p, Quantifier):
            if p.kind != s.kind or len(p.binders) != len(s.binders):
                return False
            for pb, sb in zip(p.binders, s.binders):
                if pb in b.binders and b.binders[pb] != sb:
                    return False
                b.binders[pb] = sb
            return mp(p.body, s.body, pbound | frozenset(p.binders))
        return False

    return b if mp(pattern, subject, frozenset()) else None


def unbound_vars(replacement: Term, binding: Binding) -> Tuple[Tuple[str, str], ...]:
    """(name, kind) pairs needing user instantiation, in first-use order.

    Kind is "binder" for quantifier binders of the replacement side, else
    the schematic class.
    """
    out: List[Tuple[str, str]] = []
    seen = set()

    def go(t: Term):
        if isinstance(t, SchematicVar):
            if t.name not in binding.terms and t.name not in seen:
                seen.add(t.name)
                out.append((t.name, t.klass))
        elif isinstance(t, Quantifier):
            for name in t.binders:
                if name not in binding.binders and name not in seen:
                    seen.add(name)
                    out.append((name, "binder"))
            go(t.body)
        else:
            from .terms import children

            for c in children(t):
                go(c)

    go(replacement)
    return tuple(out)


@dataclass
class MatchResult:
    """One menu entry: a law, a direction, and how it would rewrite the focus."""

    law: Law
    direction: Direction
    path: Tuple[int, ...]
    binding: Binding
    unbound: Tuple[Tuple[str, str], ...]  # (name, kind)
    defaults: Binding
    preview: Term
    score: tuple = ()

    @property
    def unbound_names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.unbound)


def default_instantiation(
    unbound: Tuple[Tuple[str, str], ...], goal_root: Term
) -> Binding:
    """Reasonable defaults: binders and expression metavariables become
    fresh variables named after themselves; predicate ones become TRUE."""
    avoid = set(all_var_names(goal_root))
    defaults = Binding()
    for name, kind in unbound:
        if kind == PRED:
            defaults.terms[name] = PredConst("TRUE")
            continue
        chosen = fresh_name(name, avoid)
        avoid.add(chosen)
        if kind == "binder":
            defaults.binders[name] = chosen
        else:
            defaults.terms[name] = Var(chosen)
    return defaults


# Selectable ranking heuristics; all end with deterministic tie-breakers.
def _score_default(m: MatchResult, theory_rank: int) -> tuple:
    return (
        len(m.unbound),
        node_count(m.preview),
        -node_count(m.law.schema),
        theory_rank,
        m.law.name,
        m.direction.value,
    )


def _score_smallest_preview(m: MatchResult, theory_rank: int) -> tuple:
    return (node_count(m.preview),) + _score_default(m, theory_rank)


def _score_alphabetical(m: MatchResult, theory_rank: int) -> tuple:
    return (m.law.name, m.direction.value, theory_rank)


HEURISTICS: Dict[str, Callable[[MatchResult, int], tuple]] = {
    "default": _score_default,
    "smallest-preview": _score_smallest_preview,
    "alphabetical": _score_alphabetical,
}


def applicable_laws(
    goal: Focused,
    stack: TheoryStack,
    from_theory: str,
    limit: int = 20,
    heuristic: str = "default",
) -> List[MatchResult]:
    """Ranked menu of law applications at the focus, at most ``limit`` long."""
    score = HEURISTICS[heuristic]
    analysis = analyze(goal.root, goal.path)
    top = stack.index_of(from_theory)
    results: List[MatchResult] = []
    for law in visible_laws(stack, from_theory):
        theory_rank = top - stack.index_of(law.theory)
        for direction in Direction:
            sides = law_sides(law, direction)
            if sides is None:
                continue
            pattern, replacement = sides
            binding = match_pattern(pattern, goal.focus)
            if binding is None:
                continue
            if not types_compatible(binding, law.schema, analysis.env_at_focus):
                continue
            unbound = unbound_vars(replacement, binding)
            if not unbound:
                try:
                    if not check_side_condition(law.side_condition, binding):
                        continue
                except IncompleteBinding:
                    continue
            defaults = default_instantiation(unbound, goal.root)
            completed = binding.merged(defaults)
            try:
                preview = replace_focus(goal, substitute(replacement, completed))
                infer(preview)
            except (IncompleteBinding, TermTypeError):
                continue
            m = MatchResult(
                law=law,
                direction=direction,
                path=goal.path,
                binding=binding,
                unbound=unbound,
                defaults=defaults,
                preview=preview,
            )
            m.score = score(m, theory_rank)
            results.append(m)
    results.sort(key=lambda m: m.score)
    return results[:limit]


def apply_law(goal: Focused, m: MatchResult, inst: Optional[Binding] = None) -> Term:
    """Rewrite the focus with the law; raises when the application is illegal."""
    completed = m.binding.merged(inst if inst is not None else m.defaults)
    sides = law_sides(m.law, m.direction)
    assert sides is not None
    _, replacement = sides
    if not completed.is_complete_for(replacement):
        missing = [n for n, _ in unbound_vars(replacement, completed)]
        raise IncompleteBinding(f"unbound: {', '.join(missing)}")
    if not check_side_condition(m.law.side_condition, completed):
        raise SideConditionViolated(
            f"side condition of {m.law.name!r} fails under this instantiation"
        )
    env = analyze(goal.root, goal.path).env_at_focus
    if not types_compatible(completed, m.law.schema, env):
        raise TermTypeError(f"instantiation of {m.law.name!r} is ill-typed")
    return replace_focus(goal, substitute(replacement, completed))
