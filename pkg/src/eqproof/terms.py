"""Term language: predicates and expressions with binders and metavariables.

Terms are immutable values; every operation builds new terms.  Plain
variables (``Var``) occur in goals; ``SchematicVar`` is the metavariable
form that occurs only inside law schemas and matches whole terms of its
syntactic class (``expr`` or ``pred``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Optional, Set, Tuple

from .errors import IncompleteBinding, TermTypeError

PRIME = "′"  # suffix used when generating fresh variable names

CONNECTIVE_ARITY = {"~": 1, "/\\": 2, "\\/": 2, "=>": 2, "==": 2}

EXPR = "expr"
PRED = "pred"


class Term:
    """Base class; concrete forms are the frozen dataclasses below."""

    __slots__ = ()


@dataclass(frozen=True)
class PredConst(Term):
    name: str  # "TRUE" or "FALSE"

    def __post_init__(self):
        if self.name not in ("TRUE", "FALSE"):
            raise ValueError(f"bad predicate constant {self.name!r}")


@dataclass(frozen=True)
class Connective(Term):
    op: str
    args: Tuple[Term, ...]

    def __post_init__(self):
        arity = CONNECTIVE_ARITY.get(self.op)
        if arity is None:
            raise ValueError(f"unknown connective {self.op!r}")
        if len(self.args) != arity:
            raise ValueError(f"{self.op!r} expects {arity} args, got {len(self.args)}")


@dataclass(frozen=True)
class Quantifier(Term):
    kind: str  # "forall" or "exists"
    binders: Tuple[str, ...]
    body: Term

    def __post_init__(self):
        if self.kind not in ("forall", "exists"):
            raise ValueError(f"bad quantifier kind {self.kind!r}")
        if not self.binders:
            raise ValueError("quantifier needs at least one binder")
        if len(set(self.binders)) != len(self.binders):
            raise ValueError(f"duplicate binders in {self.binders}")


@dataclass(frozen=True)
class App(Term):
    op: str  # "in", "intsct", "union", "="
    args: Tuple[Term, ...]


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class SchematicVar(Term):
    name: str
    klass: str  # EXPR or PRED

    def __post_init__(self):
        if self.klass not in (EXPR, PRED):
            raise ValueError(f"bad schematic class {self.klass!r}")


TRUE = PredConst("TRUE")
FALSE = PredConst("FALSE")


def children(t: Term) -> Tuple[Term, ...]:
    """Navigable children, in written order; a quantifier's only child is its body."""
    if isinstance(t, (Connective, App)):
        return t.args
    if isinstance(t, Quantifier):
        return (t.body,)
    return ()


def with_children(t: Term, new: Tuple[Term, ...]) -> Term:
    if isinstance(t, Connective):
        return Connective(t.op, tuple(new))
    if isinstance(t, App):
        return App(t.op, tuple(new))
    if isinstance(t, Quantifier):
        (body,) = new
        return Quantifier(t.kind, t.binders, body)
    if new:
        raise ValueError(f"{type(t).__name__} has no children")
    return t


def node_count(t: Term) -> int:
    return 1 + sum(node_count(c) for c in children(t))


def free_vars(t: Term) -> Set[str]:
    """Names of plain variables with a free occurrence in t."""

    def go(t: Term, bound: FrozenSet[str]) -> Set[str]:
        if isinstance(t, Var):
            return set() if t.name in bound else {t.name}
        if isinstance(t, Quantifier):
            return go(t.body, bound | frozenset(t.binders))
        out: Set[str] = set()
        for c in children(t):
            out |= go(c, bound)
        return out

    return go(t, frozenset())


def all_var_names(t: Term) -> Set[str]:
    """Every plain-variable name occurring in t, free or bound."""
    out: Set[str] = set()

    def go(t: Term):
        if isinstance(t, Var):
            out.add(t.name)
        elif isinstance(t, Quantifier):
            out.update(t.binders)
            go(t.body)
        else:
            for c in children(t):
                go(c)

    go(t)
    return out


def schematic_vars(t: Term) -> Dict[str, str]:
    """Schematic names occurring in t, mapped to their class, in first-use order."""
    out: Dict[str, str] = {}

    def go(t: Term):
        if isinstance(t, SchematicVar):
            out.setdefault(t.name, t.klass)
        else:
            for c in children(t):
                go(c)

    go(t)
    return out


def binder_names(t: Term) -> Tuple[str, ...]:
    """Quantifier binder names occurring in t, in first-use order."""
    out = []

    def go(t: Term):
        if isinstance(t, Quantifier):
            for b in t.binders:
                if b not in out:
                    out.append(b)
        for c in children(t):
            go(c)

    go(t)
    return tuple(out)


def syntactic_class(t: Term) -> str:
    """PRED for logical forms, EXPR for variables and applications."""
    if isinstance(t, (PredConst, Connective, Quantifier)):
        return PRED
    if isinstance(t, SchematicVar):
        return t.klass
    return EXPR


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """Smallest prime-suffixed variant of base not in avoid (base itself first)."""
    avoid = set(avoid)
    name = base
    while name in avoid:
        name += PRIME
    return name


@dataclass
class Binding:
    """Match/instantiation result: schematic name -> term, law binder -> name."""

    terms: Dict[str, Term] = field(default_factory=dict)
    binders: Dict[str, str] = field(default_factory=dict)

    def copy(self) -> "Binding":
        return Binding(dict(self.terms), dict(self.binders))

    def merged(self, other: "Binding") -> "Binding":
        out = self.copy()
        out.terms.update(other.terms)
        out.binders.update(other.binders)
        return out

    def is_complete_for(self, t: Term) -> bool:
        """True when every schematic var and binder of t is mapped."""
        if any(n not in self.terms for n in schematic_vars(t)):
            return False
        return all(b in self.binders for b in binder_names(t))


@dataclass(frozen=True)
class SideCondition:
    """Conjunction of freeness constraints; empty means trivially true."""

    not_free_in: Tuple[Tuple[str, str], ...] = ()  # (variable, schematic name)

    def is_trivial(self) -> bool:
        return not self.not_free_in


def check_side_condition(sc: SideCondition, b: Binding) -> bool:
    """Each (v, M) demands: the (possibly renamed) v is not free in b(M)."""
    for var, target in sc.not_free_in:
        if target not in b.terms:
            raise IncompleteBinding(f"side condition mentions unbound {target!r}")
        actual = b.binders.get(var, var)
        if actual in free_vars(b.terms[target]):
            return False
    return True


def substitute(t: Term, b: Binding) -> Term:
    """Simultaneous, capture-avoiding replacement of schematic vars and binders.

    Bound variables are renamed (prime suffix) when a substituted term's
    free variable would otherwise be captured.
    """

    def go(t: Term, ren: Dict[str, str]) -> Term:
        if isinstance(t, SchematicVar):
            if t.name not in b.terms:
                raise IncompleteBinding(f"no binding for schematic {t.name!r}")
            return b.terms[t.name]
        if isinstance(t, Var):
            return Var(ren.get(t.name, t.name))
        if isinstance(t, Quantifier):
            # Free variables that substitution will introduce under this binder.
            incoming: Set[str] = set()
            for name in schematic_vars(t.body):
                if name in b.terms:
                    incoming |= free_vars(b.terms[name])
            avoid = incoming | all_var_names(t.body) | set(ren.values())
            ren2 = dict(ren)
            new_binders = []
            for binder in t.binders:
                target = b.binders.get(binder, binder)
                # An explicit binder mapping is authoritative: terms bound to
                # schematic variables under this binder may mention the target
                # name, and the quantifier is meant to capture it.  Only
                # unmapped binders are renamed away from incoming free
                # variables; either kind is renamed on a sibling collision.
                capture_ok = binder in b.binders
                if (not capture_ok and target in incoming) or target in new_binders:
                    target = fresh_name(target + PRIME, avoid)
                avoid.add(target)
                new_binders.append(target)
                ren2[binder] = target
            return Quantifier(t.kind, tuple(new_binders), go(t.body, ren2))
        kids = children(t)
        if kids:
            return with_children(t, tuple(go(c, ren) for c in kids))
        return t

    return go(t, {})


def rename_free(t: Term, mapping: Dict[str, str]) -> Term:
    """Rename free plain variables; target names must not be captured."""

    def go(t: Term, shadowed: FrozenSet[str]) -> Term:
        if isinstance(t, Var):
            if t.name in shadowed or t.name not in mapping:
                return t
            return Var(mapping[t.name])
        if isinstance(t, Quantifier):
            for binder in t.binders:
                for old, new in mapping.items():
                    if new == binder and old not in shadowed:
                        raise TermTypeError(
                            f"renaming {old!r} to {new!r} would be captured"
                        )
            return Quantifier(
                t.kind, t.binders, go(t.body, shadowed | frozenset(t.binders))
            )
        kids = children(t)
        if kids:
            return with_children(t, tuple(go(c, shadowed) for c in kids))
        return t

    return go(t, frozenset())


def alpha_equal(a: Term, b: Term) -> bool:
    """Structural equality up to consistent renaming of bound variables."""

    def go(a: Term, b: Term, ea: Dict[str, int], eb: Dict[str, int]) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, Var):
            la, lb = ea.get(a.name), eb.get(b.name)
            if la is None and lb is None:
                return a.name == b.name
            return la == lb
        if isinstance(a, PredConst):
            return a.name == b.name
        if isinstance(a, SchematicVar):
            return a.name == b.name and a.klass == b.klass
        if isinstance(a, Quantifier):
            if a.kind != b.kind or len(a.binders) != len(b.binders):
                return False
            level = len(ea)
            ea2, eb2 = dict(ea), dict(eb)
            for i, (x, y) in enumerate(zip(a.binders, b.binders)):
                ea2[x] = level + i
                eb2[y] = level + i
            return go(a.body, b.body, ea2, eb2)
        if isinstance(a, (Connective, App)):
            if a.op != b.op or len(a.args) != len(b.args):
                return False
            return all(go(x, y, ea, eb) for x, y in zip(a.args, b.args))
        raise TypeError(f"unknown term {a!r}")

    return go(a, b, {}, {})


def schematize(t: Term) -> Term:
    """Turn a law schema's free variables into schematic variables.

    The class of each metavariable follows its position: operands of
    connectives and quantifier bodies are predicates, arguments of named
    operators are expressions.  A name used in both positions is rejected.
    """
    classes: Dict[str, str] = {}

    def go(t: Term, ctx: str, bound: FrozenSet[str]) -> Term:
        if isinstance(t, Var):
            if t.name in bound:
                return t
            seen = classes.setdefault(t.name, ctx)
            if seen != ctx:
                raise TermTypeError(
                    f"{t.name!r} used as both {seen} and {ctx} in schema"
                )
            return SchematicVar(t.name, ctx)
        if isinstance(t, Quantifier):
            return Quantifier(
                t.kind, t.binders, go(t.body, PRED, bound | frozenset(t.binders))
            )
        if isinstance(t, Connective):
            return Connective(t.op, tuple(go(a, PRED, bound) for a in t.args))
        if isinstance(t, App):
            return App(t.op, tuple(go(a, EXPR, bound) for a in t.args))
        return t

    return go(t, PRED, frozenset())
