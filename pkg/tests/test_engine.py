"""Proof sessions: strategies, stepping, undo, promotion, transcripts, replay."""

import pytest

from eqproof.engine import (
    ProofState,
    Strategy,
    parse_script,
    promote,
    proof_step,
    render_proof,
    replay,
    resolve_step,
    start_proof,
    switch_side,
    undo,
)
from eqproof.errors import (
    NotComplete,
    NothingToUndo,
    ProofAlreadyComplete,
    ReplayError,
    StrategyInapplicable,
    UnknownConjecture,
)
from eqproof.focus import focus_at
from eqproof.matcher import Direction, applicable_laws
from eqproof.seed import INTSCT_COMM_SCRIPT
from eqproof.syntax import parse_term, render_term
from eqproof.terms import alpha_equal


def run_transcript_steps(stack):
    script = parse_script(INTSCT_COMM_SCRIPT)
    return replay(stack, script)


class TestStartProof:
    def test_reduce(self, stack):
        state = start_proof(stack, "Sets", "intsct-comm", Strategy.REDUCE)
        assert state.strategy.phrase == "Reduce to TRUE"
        assert render_term(state.current) == "e1 intsct e2 = e2 intsct e1"
        assert not state.complete

    def test_left_to_right(self, stack):
        state = start_proof(stack, "Sets", "intsct-comm", Strategy.LEFT_TO_RIGHT)
        assert render_term(state.current) == "e1 intsct e2"
        assert render_term(state.target) == "e2 intsct e1"

    def test_strategy_inapplicable(self, stack):
        # in-both is an equivalence, empty-conj is not equational at the top
        with pytest.raises(StrategyInapplicable):
            start_proof(stack, "Sets", "empty-conj", Strategy.LEFT_TO_RIGHT)

    def test_unknown_conjecture(self, stack):
        with pytest.raises(UnknownConjecture):
            start_proof(stack, "Sets", "no-such", Strategy.REDUCE)

    def test_trivial_conjecture_completes_immediately(self, stack):
        state = start_proof(stack, "Sets", "empty-conj", Strategy.REDUCE)
        assert state.complete

    def test_reduce_both(self, stack):
        state = start_proof(stack, "Sets", "intsct-comm", Strategy.REDUCE_BOTH)
        assert state.active_side == "L"
        assert render_term(state.current) == "e1 intsct e2"
        assert render_term(state.other) == "e2 intsct e1"


class TestStepping:
    def test_six_steps_complete(self, stack):
        state = run_transcript_steps(stack)
        assert state.complete
        assert len(state.steps) == 6
        assert render_term(state.current) == "TRUE"

    def test_step_on_complete_proof(self, stack):
        state = run_transcript_steps(stack)
        m = resolve_step(state, stack, "Ax-==-id", Direction.LTOR, ())
        with pytest.raises(ProofAlreadyComplete):
            proof_step(state, m)

    def test_step_then_undo_identity(self, stack):
        state = start_proof(stack, "Sets", "intsct-comm", Strategy.REDUCE)
        menu = applicable_laws(state.focused(), stack, "Sets")
        for m in menu:
            after = proof_step(state, m)
            back = undo(after)
            assert back.current == state.current
            assert back.steps == state.steps
            assert back.complete == state.complete

    def test_undo_at_start(self, stack):
        state = start_proof(stack, "Sets", "intsct-comm", Strategy.REDUCE)
        with pytest.raises(NothingToUndo):
            undo(state)

    def test_undo_restores_sixth_goal(self, stack):
        state = run_transcript_steps(stack)
        back = undo(state)
        assert render_term(back.current) == "forall x @ TRUE"
        assert not back.complete

    def test_step_changes_only_under_path(self, stack):
        from eqproof.focus import subterm_at
        from termgen import all_paths

        state = run_transcript_steps(stack)
        for step in state.steps:
            for path in all_paths(step.goal_before):
                on_spine = (
                    path[: len(step.path)] == step.path
                    or step.path[: len(path)] == path
                )
                if not on_spine:
                    assert subterm_at(step.goal_before, path) == subterm_at(
                        step.goal_after, path
                    )

    def test_left_to_right_completion(self, stack):
        # prove in-both left-to-right with a single /\-comm step
        state = start_proof(stack, "Sets", "in-both", Strategy.LEFT_TO_RIGHT)
        m = resolve_step(state, stack, "/\\-comm", Direction.LTOR, ())
        state = proof_step(state, m)
        assert state.complete

    def test_reduce_both_switch_and_complete(self, stack):
        state = start_proof(stack, "Sets", "in-both", Strategy.REDUCE_BOTH)
        state = switch_side(state)
        assert state.active_side == "R"
        m = resolve_step(state, stack, "/\\-comm", Direction.LTOR, ())
        state = proof_step(state, m)
        assert state.complete


class TestPromotion:
    def test_theorem_added_as_proven(self, stack):
        state = run_transcript_steps(stack)
        after = promote(stack, state)
        theorems = after.theory("Sets").theorems
        assert [t.name for t in theorems] == ["intsct-comm"]
        from eqproof.theory import visible_laws

        law = next(l for l in visible_laws(after, "Sets") if l.name == "intsct-comm")
        assert law.provenance == "proven"

    def test_promote_incomplete(self, stack):
        state = start_proof(stack, "Sets", "intsct-comm", Strategy.REDUCE)
        with pytest.raises(NotComplete):
            promote(stack, state)

    def test_promoted_law_appears_in_menu(self, stack):
        state = run_transcript_steps(stack)
        after = promote(stack, state)
        goal = focus_at(parse_term("a intsct b = b intsct a"), (1,))
        menu = applicable_laws(goal, after, "Sets")
        entry = next(m for m in menu if m.law.name == "intsct-comm")
        assert entry.direction is Direction.LTOR
        assert render_term(entry.preview) == "b intsct a = b intsct a"


class TestTranscript:
    def test_golden(self, stack, golden_transcript):
        state = run_transcript_steps(stack)
        assert render_proof(state) == golden_transcript

    def test_zero_step_proof(self, stack):
        state = start_proof(stack, "Sets", "empty-conj", Strategy.REDUCE)
        assert render_proof(state) == (
            "Complete Proof for 'Sets$empty-conj\n"
            "Goal : TRUE\n"
            "Strategy: Reduce to TRUE\n"
            "\n"
            "     TRUE\n"
        )

    def test_incomplete_not_renderable(self, stack):
        state = start_proof(stack, "Sets", "intsct-comm", Strategy.REDUCE)
        with pytest.raises(NotComplete):
            render_proof(state)

    def test_transcript_replays_itself(self, stack, golden_transcript):
        # re-parse every goal line and replay every justification line
        header = "theory: Sets\nconjecture: intsct-comm\n"
        script = parse_script(header + golden_transcript)
        state = replay(stack, script)
        goals = [
            line[5:]
            for line in golden_transcript.splitlines()
            if line.startswith("     ")
        ]
        seq = [state.steps[0].goal_before] + [s.goal_after for s in state.steps]
        assert [render_term(t) for t in seq] == goals
        assert alpha_equal(state.current, parse_term(goals[-1]))

    def test_render_reproducible(self, stack):
        a = render_proof(run_transcript_steps(stack))
        b = render_proof(run_transcript_steps(stack))
        assert a == b


class TestReplayErrors:
    def test_wrong_path_names_step(self, stack):
        bad = INTSCT_COMM_SCRIPT.replace(
            "in-intersect (L-to-R) @1.1", "in-intersect (L-to-R) @2.1"
        )
        with pytest.raises(ReplayError) as e:
            replay(stack, parse_script(bad))
        assert e.value.step == 2

    def test_side_condition_diagnostic(self, stack):
        script = parse_script(
            "theory: Sets\nconjecture: in-both\nstrategy: Reduce\n"
            "/\\-comm (L-to-R) @1\n"
            "Ax-==-id (R-to-L) @\n"
        )
        # fabricate a failing forall-vac by proving under a binder where x is free
        bad = parse_script(
            "theory: Sets\nconjecture: union-comm\nstrategy: Reduce\n"
            "set-extensionality (L-to-R) @\n"
            "forall-vac (L-to-R) @\n"
        )
        with pytest.raises(ReplayError) as e:
            replay(stack, bad)
        assert e.value.step == 2
        assert "side condition" in str(e.value).lower()

    def test_incomplete_script(self, stack):
        script = parse_script(
            "theory: Sets\nconjecture: intsct-comm\nstrategy: Reduce\n"
            "set-extensionality (L-to-R) @\n"
        )
        with pytest.raises(ReplayError):
            replay(stack, script)

    def test_instantiation_override(self, stack):
        script = parse_script(
            "theory: Sets\nconjecture: intsct-comm\nstrategy: Reduce\n"
            "set-extensionality (L-to-R) @ with x=y\n"
        )
        state = None
        with pytest.raises(ReplayError):
            replay(stack, script)  # incomplete, but the step itself applies
        from eqproof.engine import start_proof as sp

        state = sp(stack, "Sets", "intsct-comm", Strategy.REDUCE)
        from eqproof.engine import _script_binding

        m = resolve_step(state, stack, "set-extensionality", Direction.LTOR, ())
        state = proof_step(state, m, _script_binding(m, {"x": "y"}))
        assert render_term(state.current) == (
            "forall y @ (y in (e1 intsct e2)) == (y in (e2 intsct e1))"
        )
