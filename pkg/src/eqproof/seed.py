"""Preloaded theory stack: _ROOT, Logic, Equality and Sets.

The law tables are the minimal set/logic axioms needed for the shipped
example proofs, plus a few spare conjectures to experiment with.
"""

from __future__ import annotations

from .syntax import parse_term
from .terms import SideCondition, schematize
from .theory import Conjecture, Law, Theory, TheoryStack


def _law(name, schema, theory, provenance="axiom", not_free_in=()):
    return Law(
        name=name,
        provenance=provenance,
        side_condition=SideCondition(tuple(not_free_in)),
        schema=schematize(parse_term(schema)),
        theory=theory,
    )


def _conjecture(name, schema, not_free_in=()):
    return Conjecture(
        name=name,
        schema=parse_term(schema),
        side_condition=SideCondition(tuple(not_free_in)),
    )


def seed_stack() -> TheoryStack:
    logic = Theory(
        name="Logic",
        laws=(
            _law("/\\-comm", "P /\\ Q == Q /\\ P", "Logic"),
            _law("Ax-==-id", "TRUE == (P == P)", "Logic"),
            _law(
                "forall-vac",
                "(forall x @ P) == P",
                "Logic",
                not_free_in=(("x", "P"),),
            ),
            _law("or-absorb", "A \\/ (A /\\ B) == A", "Logic"),
        ),
    )
    equality = Theory(
        name="Equality",
        laws=(_law("=-refl", "(e = e) == TRUE", "Equality"),),
    )
    sets = Theory(
        name="Sets",
        laws=(
            _law(
                "set-extensionality",
                "(S = T) == (forall x @ (x in S) == (x in T))",
                "Sets",
                not_free_in=(("x", "S"), ("x", "T")),
            ),
            _law(
                "in-intersect",
                "(x in (S intsct T)) == ((x in S) /\\ (x in T))",
                "Sets",
            ),
            _law(
                "in-union",
                "(x in (S union T)) == ((x in S) \\/ (x in T))",
                "Sets",
            ),
        ),
        conjectures=(
            _conjecture("empty-conj", "TRUE"),
            _conjecture("union-assoc", "(e1 union e2) union e3 = e1 union (e2 union e3)"),
            _conjecture("in-both", "(x in e1) /\\ (x in e2) == (x in e2) /\\ (x in e1)"),
            _conjecture("union-comm", "e1 union e2 = e2 union e1"),
            _conjecture("intsct-comm", "e1 intsct e2 = e2 intsct e1"),
            _conjecture("intsct-idem", "e1 intsct e1 = e1"),
        ),
    )
    return TheoryStack((Theory(name="_ROOT"), logic, equality, sets))


INTSCT_COMM_SCRIPT = """\
theory: Sets
conjecture: intsct-comm
strategy: Reduce
set-extensionality (L-to-R) @
in-intersect (L-to-R) @1.1
in-intersect (L-to-R) @1.2
/\\-comm (R-to-L) @1.2
Ax-==-id (R-to-L) @1
forall-vac (L-to-R) @
"""
