"""Seeded random term generators for property tests.

Generated goals are class-correct (predicates where predicates belong)
but not necessarily well-typed; the kernel operations under test do not
require typing.  Patterns additionally contain schematic variables.
"""

import random

from eqproof.terms import (
    App,
    Binding,
    Connective,
    PredConst,
    Quantifier,
    SchematicVar,
    Var,
    children,
)

VARS = ["x", "y", "z", "e1", "e2", "s"]
SCHEMATIC_EXPR = ["S", "T", "E"]
SCHEMATIC_PRED = ["P", "Q", "R"]


def random_expr(rng: random.Random, depth: int):
    if depth <= 0 or rng.random() < 0.4:
        return Var(rng.choice(VARS))
    op = rng.choice(["intsct", "union"])
    return App(op, (random_expr(rng, depth - 1), random_expr(rng, depth - 1)))


def random_pred(rng: random.Random, depth: int):
    if depth <= 0:
        return rng.choice([PredConst("TRUE"), PredConst("FALSE")])
    kind = rng.randrange(6)
    if kind == 0:
        return rng.choice([PredConst("TRUE"), PredConst("FALSE")])
    if kind == 1:
        op = rng.choice(["/\\", "\\/", "=>", "=="])
        return Connective(op, (random_pred(rng, depth - 1), random_pred(rng, depth - 1)))
    if kind == 2:
        return Connective("~", (random_pred(rng, depth - 1),))
    if kind == 3:
        return Quantifier(
            rng.choice(["forall", "exists"]),
            (rng.choice(VARS),),
            random_pred(rng, depth - 1),
        )
    if kind == 4:
        return App("in", (random_expr(rng, depth - 1), random_expr(rng, depth - 1)))
    return App("=", (random_expr(rng, depth - 1), random_expr(rng, depth - 1)))


def random_goal(rng: random.Random, depth: int = 3):
    """A schematic-free term, predicate-shaped at the top."""
    return random_pred(rng, depth)


def random_pattern_expr(rng: random.Random, depth: int):
    if depth <= 0 or rng.random() < 0.3:
        if rng.random() < 0.5:
            return SchematicVar(rng.choice(SCHEMATIC_EXPR), "expr")
        return Var(rng.choice(VARS))
    op = rng.choice(["intsct", "union"])
    return App(
        op, (random_pattern_expr(rng, depth - 1), random_pattern_expr(rng, depth - 1))
    )


def random_pattern(rng: random.Random, depth: int = 3):
    """A law-schema-like pattern with schematic variables."""
    if depth <= 0 or rng.random() < 0.2:
        return SchematicVar(rng.choice(SCHEMATIC_PRED), "pred")
    kind = rng.randrange(5)
    if kind == 0:
        return rng.choice([PredConst("TRUE"), PredConst("FALSE")])
    if kind == 1:
        op = rng.choice(["/\\", "\\/", "=="])
        return Connective(
            op, (random_pattern(rng, depth - 1), random_pattern(rng, depth - 1))
        )
    if kind == 2:
        return Quantifier(
            "forall", (rng.choice(["u", "v"]),), random_pattern(rng, depth - 1)
        )
    if kind == 3:
        return App(
            "in",
            (random_pattern_expr(rng, depth - 1), random_pattern_expr(rng, depth - 1)),
        )
    return SchematicVar(rng.choice(SCHEMATIC_PRED), "pred")


def random_binding_for(rng: random.Random, pattern) -> Binding:
    """A complete, class-correct binding over the pattern's metavariables."""
    from eqproof.terms import binder_names, schematic_vars

    b = Binding()
    for name, klass in schematic_vars(pattern).items():
        if klass == "expr":
            b.terms[name] = random_expr(rng, 2)
        else:
            b.terms[name] = random_pred(rng, 2)
    for i, binder in enumerate(binder_names(pattern)):
        b.binders[binder] = rng.choice(["a", "b", "c"]) + str(i)
    return b


def all_paths(t):
    """Every valid path of t, root first."""
    out = [()]
    for i, c in enumerate(children(t), start=1):
        out.extend((i,) + p for p in all_paths(c))
    return out


def random_path(rng: random.Random, t):
    return rng.choice(all_paths(t))
