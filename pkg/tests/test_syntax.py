"""Parser and canonical renderer round trips, precedence, focus paths."""

import random

import pytest

from eqproof.errors import TermSyntaxError
from eqproof.syntax import (
    parse_path,
    parse_term,
    render_path,
    render_term,
    render_term_with_spans,
)
from eqproof.terms import App, Connective, PredConst, Quantifier, Var, alpha_equal
from termgen import all_paths, random_goal


class TestParse:
    def test_goal_line(self):
        t = parse_term("e1 intsct e2 = e2 intsct e1")
        assert t == App(
            "=",
            (
                App("intsct", (Var("e1"), Var("e2"))),
                App("intsct", (Var("e2"), Var("e1"))),
            ),
        )

    def test_true(self):
        assert parse_term("TRUE") == PredConst("TRUE")

    def test_conjunction_binds_tighter_than_equiv(self):
        # reference parse with explicit full parenthesisation
        loose = parse_term("(x in e1) /\\ (x in e2) == (x in e2) /\\ (x in e1)")
        explicit = parse_term(
            "(((x in e1)) /\\ ((x in e2))) == (((x in e2)) /\\ ((x in e1)))"
        )
        assert loose == explicit
        assert isinstance(loose, Connective) and loose.op == "=="

    def test_quantifier_body_extends_right(self):
        t = parse_term("forall x @ x in e1 == x in e2")
        assert isinstance(t, Quantifier)
        assert isinstance(t.body, Connective) and t.body.op == "=="

    def test_not_looser_than_equals(self):
        t = parse_term("~x = y")
        assert isinstance(t, Connective) and t.op == "~"
        assert t.args[0] == parse_term("x = y")

    def test_multiple_binders(self):
        t = parse_term("forall x,y @ TRUE")
        assert t.binders == ("x", "y")

    def test_error_position_and_expectations(self):
        with pytest.raises(TermSyntaxError) as e:
            parse_term("e1 intsct")
        assert e.value.line == 1
        assert e.value.column == 10
        assert e.value.expected

    def test_unbalanced_paren(self):
        with pytest.raises(TermSyntaxError):
            parse_term("(x in e1")

    def test_nonassociative_equals_does_not_chain(self):
        with pytest.raises(TermSyntaxError):
            parse_term("x = y = z")


class TestRender:
    def test_goal_line(self):
        t = App(
            "=",
            (
                App("intsct", (Var("e1"), Var("e2"))),
                App("intsct", (Var("e2"), Var("e1"))),
            ),
        )
        assert render_term(t) == "e1 intsct e2 = e2 intsct e1"

    def test_true(self):
        assert render_term(PredConst("TRUE")) == "TRUE"

    def test_extensionality_goal(self):
        text = "forall x @ (x in (e1 intsct e2)) == (x in (e2 intsct e1))"
        assert render_term(parse_term(text)) == text

    def test_membership_always_parenthesised_as_subterm(self):
        text = "(x in e1) /\\ (x in e2)"
        assert render_term(parse_term(text)) == "(x in e1) /\\ (x in e2)"

    def test_round_trip_structural(self):
        rng = random.Random(31)
        for _ in range(300):
            t = random_goal(rng, 4)
            rendered = render_term(t)
            again = parse_term(rendered)
            assert again == t, rendered
            assert alpha_equal(again, t)

    def test_render_deterministic(self):
        rng = random.Random(32)
        for _ in range(50):
            t = random_goal(rng)
            assert render_term(t) == render_term(t)

    def test_spans_cover_subterms(self):
        t = parse_term("forall x @ (x in (e1 intsct e2)) == (x in (e2 intsct e1))")
        text, spans = render_term_with_spans(t)
        by_path = {s.path: s for s in spans}
        assert by_path[()].start == 0 and by_path[()].end == len(text)
        focus = by_path[(1, 1)]
        assert text[focus.start:focus.end] == "(x in (e1 intsct e2))"
        assert set(by_path) == set(all_paths(t))


class TestPaths:
    @pytest.mark.parametrize(
        "text,path",
        [("@", ()), ("@1", (1,)), ("@1.2", (1, 2)), ("@3.1.2", (3, 1, 2))],
    )
    def test_parse_and_render(self, text, path):
        assert parse_path(text) == path
        assert render_path(path) == text

    def test_round_trip_all_short_paths(self):
        import itertools

        for n in range(0, 4):
            for path in itertools.product((1, 2, 3), repeat=n):
                assert parse_path(render_path(path)) == path

    def test_non_numeric_segment(self):
        with pytest.raises(TermSyntaxError):
            parse_path("@1.x")

    def test_zero_index_rejected(self):
        with pytest.raises(TermSyntaxError):
            parse_path("@0")
