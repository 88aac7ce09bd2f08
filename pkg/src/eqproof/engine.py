"""Proof sessions: strategies, step application, undo, promotion, transcripts.

A proof starts from a stored conjecture under one of three strategies:
Reduce (rewrite the whole goal to TRUE), left-to-right (rewrite the left
side until it equals the right), or reduce-both (rewrite either side until
both agree).  Completed proofs render to a fixed text transcript and can
be promoted into the owning theory's THEOREMS table.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace as d_replace
from typing import Dict, List, Optional, Tuple

from .errors import (
    EqProofError,
    NotComplete,
    NothingToUndo,
    ProofAlreadyComplete,
    ReplayError,
    StrategyInapplicable,
    UnknownTheory,
)
from .focus import Focused, focus_at, path_valid
from .matcher import (
    Direction,
    MatchResult,
    apply_law,
    default_instantiation,
    law_sides,
    match_pattern,
    parse_direction,
    unbound_vars,
)
from .syntax import parse_path, parse_term, render_path, render_term
from .terms import (
    App,
    Binding,
    Connective,
    SideCondition,
    Term,
    Var,
    alpha_equal,
)
from .theory import (
    Conjecture,
    DuplicateName,
    Law,
    ProofRecord,
    StepRecord,
    Theorem,
    Theory,
    TheoryStack,
    find_conjecture,
    visible_laws,
)

TRUE_TERM = parse_term("TRUE")


class Strategy(enum.Enum):
    REDUCE = "Reduce"
    LEFT_TO_RIGHT = "left-to-right"
    REDUCE_BOTH = "reduce-both"

    @property
    def phrase(self) -> str:
        return _PHRASES[self]


_PHRASES = {
    Strategy.REDUCE: "Reduce to TRUE",
    Strategy.LEFT_TO_RIGHT: "LHS to RHS",
    Strategy.REDUCE_BOTH: "Reduce both sides",
}


def parse_strategy(text: str) -> Strategy:
    for s in Strategy:
        if text in (s.value, s.phrase):
            return s
    raise StrategyInapplicable(f"unknown strategy {text!r}")


@dataclass(frozen=True)
class Step:
    law_name: str
    direction: Direction
    path: Tuple[int, ...]
    instantiation: Binding
    goal_before: Term
    goal_after: Term
    side: Optional[str] = None  # "L"/"R" for reduce-both


@dataclass(frozen=True)
class ProofState:
    theory: str
    name: str
    schema: Term
    side_condition: SideCondition
    strategy: Strategy
    target: Optional[Term]  # None for Reduce (TRUE) and reduce-both
    current: Term
    other: Optional[Term] = None  # inactive side under reduce-both
    active_side: str = "L"
    focus_path: Tuple[int, ...] = ()
    steps: Tuple[Step, ...] = ()
    complete: bool = False

    def focused(self) -> Focused:
        return focus_at(self.current, self.focus_path)


def _equational_sides(schema: Term) -> Optional[Tuple[Term, Term]]:
    if isinstance(schema, Connective) and schema.op == "==":
        return schema.args[0], schema.args[1]
    if isinstance(schema, App) and schema.op == "=":
        return schema.args[0], schema.args[1]
    return None


def _completion(strategy: Strategy, state: "ProofState") -> bool:
    if strategy is Strategy.REDUCE:
        return alpha_equal(state.current, TRUE_TERM)
    if strategy is Strategy.LEFT_TO_RIGHT:
        return alpha_equal(state.current, state.target)
    left = state.current if state.active_side == "L" else state.other
    right = state.other if state.active_side == "L" else state.current
    return alpha_equal(left, right)


def start_proof(
    stack: TheoryStack, theory: str, conjecture: str, strategy: Strategy
) -> ProofState:
    conj = find_conjecture(stack, theory, conjecture)
    sides = _equational_sides(conj.schema)
    if strategy is not Strategy.REDUCE and sides is None:
        raise StrategyInapplicable(
            f"{strategy.value} needs an equality or equivalence goal"
        )
    if strategy is Strategy.REDUCE:
        current, other, target = conj.schema, None, None
    elif strategy is Strategy.LEFT_TO_RIGHT:
        current, other, target = sides[0], None, sides[1]
    else:
        current, other, target = sides[0], sides[1], None
    state = ProofState(
        theory=theory,
        name=conjecture,
        schema=conj.schema,
        side_condition=conj.side_condition,
        strategy=strategy,
        target=target,
        current=current,
        other=other,
    )
    return d_replace(state, complete=_completion(strategy, state))


def proof_step(
    state: ProofState, m: MatchResult, inst: Optional[Binding] = None
) -> ProofState:
    """Apply a matched law at its focus; appends a Step and rechecks completion."""
    if state.complete:
        raise ProofAlreadyComplete(f"proof of {state.name!r} is already complete")
    goal = focus_at(state.current, m.path)
    after = apply_law(goal, m, inst)
    used = m.binding.merged(inst if inst is not None else m.defaults)
    step = Step(
        law_name=m.law.name,
        direction=m.direction,
        path=m.path,
        instantiation=used,
        goal_before=state.current,
        goal_after=after,
        side=state.active_side if state.strategy is Strategy.REDUCE_BOTH else None,
    )
    focus = m.path if path_valid(after, m.path) else ()
    state = d_replace(
        state, current=after, steps=state.steps + (step,), focus_path=focus
    )
    return d_replace(state, complete=_completion(state.strategy, state))


def switch_side(state: ProofState) -> ProofState:
    """Reduce-both only: make the other side the one being rewritten."""
    if state.strategy is not Strategy.REDUCE_BOTH:
        raise StrategyInapplicable("only reduce-both has two sides")
    return d_replace(
        state,
        current=state.other,
        other=state.current,
        active_side="R" if state.active_side == "L" else "L",
        focus_path=(),
    )


def undo(state: ProofState) -> ProofState:
    if not state.steps:
        raise NothingToUndo("no steps to undo")
    last = state.steps[-1]
    if last.side is not None and last.side != state.active_side:
        state = switch_side(state)
    state = d_replace(
        state,
        current=last.goal_before,
        steps=state.steps[:-1],
        focus_path=last.path if path_valid(last.goal_before, last.path) else (),
    )
    return d_replace(state, complete=_completion(state.strategy, state))


def promote(stack: TheoryStack, state: ProofState) -> TheoryStack:
    """Move the proven conjecture into its theory's THEOREMS table."""
    if not state.complete:
        raise NotComplete(f"proof of {state.name!r} is not complete")
    theory = stack.theory(state.theory)
    if any(t.name == state.name for t in theory.theorems):
        raise DuplicateName(f"theorem {state.name!r} already exists")
    conjectures = tuple(c for c in theory.conjectures if c.name != state.name)
    record = ProofRecord(
        strategy=state.strategy.value,
        transcript=render_proof(state),
        steps=tuple(
            StepRecord(
                law_name=s.law_name,
                direction=s.direction.value,
                path=s.path,
                terms=tuple(
                    sorted((k, render_term(v)) for k, v in s.instantiation.terms.items())
                ),
                binders=tuple(sorted(s.instantiation.binders.items())),
            )
            for s in state.steps
        ),
    )
    theorem = Theorem(
        name=state.name,
        schema=state.schema,
        side_condition=state.side_condition,
        proof=record,
    )
    return stack.with_theory(
        d_replace(
            theory, conjectures=conjectures, theorems=theory.theorems + (theorem,)
        )
    )


def render_proof(state: ProofState) -> str:
    """Bit-exact transcript of a completed proof."""
    if not state.complete:
        raise NotComplete("cannot render an incomplete proof")
    lines = [
        f"Complete Proof for '{state.theory}${state.name}",
        f"Goal : {render_term(state.schema)}",
        f"Strategy: {state.strategy.phrase}",
        "",
    ]
    if state.steps:
        lines.append(f"     {render_term(state.steps[0].goal_before)}")
        for step in state.steps:
            lines.append(
                f' ===   " {step.law_name} ({step.direction.value}) '
                f'{render_path(step.path)} "'
            )
            lines.append(f"     {render_term(step.goal_after)}")
    else:
        lines.append(f"     {render_term(state.current)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Scripted replay

@dataclass(frozen=True)
class ScriptStep:
    law_name: str
    direction: Direction
    path: Tuple[int, ...]
    instantiation: Dict[str, str]  # name -> concrete-syntax term


@dataclass(frozen=True)
class ProofScript:
    theory: str
    conjecture: str
    strategy: Strategy
    steps: Tuple[ScriptStep, ...]


_STEP_RE = re.compile(
    r"^(?P<law>\S+) \((?P<dir>L-to-R|R-to-L)\) (?P<path>@[0-9.]*)"
    r"(?: with (?P<inst>.+))?$"
)
_JUSTIFICATION_RE = re.compile(r'^ ===   " (?P<body>.*) "$')


def parse_script(text: str) -> ProofScript:
    """Parse a replay script.

    The header gives theory, conjecture and strategy (``key: value``
    lines); step lines reuse the transcript's justification grammar, so a
    completed transcript replays after a two-line header is prepended.
    """
    header: Dict[str, str] = {}
    steps: List[ScriptStep] = []
    for raw in text.splitlines():
        if not raw.strip() or raw.startswith("Complete Proof") or raw.startswith("Goal :"):
            continue
        if raw.startswith("     "):
            continue  # transcript goal line
        m = _JUSTIFICATION_RE.match(raw)
        line = m.group("body") if m else raw.strip()
        if ":" in line and not steps:
            key, _, value = line.partition(":")
            key = key.strip().lower()
            if key in ("theory", "conjecture", "strategy"):
                header[key] = value.strip()
                continue
        sm = _STEP_RE.match(line)
        if sm is None:
            raise EqProofError(f"bad script line: {raw!r}")
        inst: Dict[str, str] = {}
        if sm.group("inst"):
            for part in sm.group("inst").split(","):
                name, _, value = part.partition("=")
                if not name.strip() or not value.strip():
                    raise EqProofError(f"bad instantiation in line: {raw!r}")
                inst[name.strip()] = value.strip()
        steps.append(
            ScriptStep(
                law_name=sm.group("law"),
                direction=parse_direction(sm.group("dir")),
                path=parse_path(sm.group("path")),
                instantiation=inst,
            )
        )
    for key in ("theory", "conjecture", "strategy"):
        if key not in header:
            raise EqProofError(f"script header is missing {key!r}")
    return ProofScript(
        theory=header["theory"],
        conjecture=header["conjecture"],
        strategy=parse_strategy(header["strategy"]),
        steps=tuple(steps),
    )


def resolve_step(
    state: ProofState, stack: TheoryStack, law_name: str,
    direction: Direction, path: Tuple[int, ...]
) -> MatchResult:
    """Match one named law at a path against the current goal."""
    law = next(
        (l for l in visible_laws(stack, state.theory) if l.name == law_name), None
    )
    if law is None:
        raise EqProofError(f"no visible law named {law_name!r}")
    sides = law_sides(law, direction)
    if sides is None:
        raise EqProofError(f"law {law_name!r} is not rewritable")
    pattern, replacement = sides
    goal = focus_at(state.current, path)
    binding = match_pattern(pattern, goal.focus)
    if binding is None:
        raise EqProofError(
            f"{law_name} ({direction.value}) does not match at {render_path(path)}"
        )
    unbound = unbound_vars(replacement, binding)
    return MatchResult(
        law=law,
        direction=direction,
        path=path,
        binding=binding,
        unbound=unbound,
        defaults=default_instantiation(unbound, state.current),
        preview=state.current,  # placeholder; replay does not need previews
    )


def _script_binding(m: MatchResult, inst: Dict[str, str]) -> Binding:
    binding = m.defaults.copy()
    kinds = dict(m.unbound)
    for name, value in inst.items():
        term = parse_term(value)
        if kinds.get(name) == "binder":
            if not isinstance(term, Var):
                raise EqProofError(f"binder {name!r} needs a variable, got {value!r}")
            binding.binders[name] = term.name
        else:
            binding.terms[name] = term
    return binding


def replay(stack: TheoryStack, script: ProofScript) -> ProofState:
    """Run a script to completion; raises ReplayError naming the failing step."""
    state = start_proof(stack, script.theory, script.conjecture, script.strategy)
    for i, s in enumerate(script.steps, start=1):
        try:
            m = resolve_step(state, stack, s.law_name, s.direction, s.path)
            state = proof_step(state, m, _script_binding(m, s.instantiation))
        except EqProofError as e:
            raise ReplayError(i, str(e)) from e
    if not state.complete:
        raise ReplayError(
            len(script.steps), "script ended but the proof is not complete"
        )
    return state
