"""On-the-fly type inference for goals and law schemas.

Types are booleans, homogeneous sets, and inference variables.  Operator
signatures are built in: ``in : (t, Set(t)) -> B``, ``intsct``/``union`` :
``(Set(t), Set(t)) -> Set(t)``, ``= : (t, t) -> B``; connective operands
and quantifier bodies are boolean.  Inference is monomorphic per goal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import OccursCheck, TermTypeError, UnifyFail
from .terms import (
    EXPR,
    PRED,
    App,
    Connective,
    PredConst,
    Quantifier,
    SchematicVar,
    Term,
    Var,
)


class Type:
    __slots__ = ()


@dataclass(frozen=True)
class Bool(Type):
    pass


@dataclass(frozen=True)
class SetOf(Type):
    elem: Type


@dataclass(frozen=True)
class TypeVar(Type):
    name: str


BOOL = Bool()


def resolve(t: Type, subst: Dict[str, Type]) -> Type:
    """Chase substitution links and rebuild the fully resolved type."""
    while isinstance(t, TypeVar) and t.name in subst:
        t = subst[t.name]
    if isinstance(t, SetOf):
        return SetOf(resolve(t.elem, subst))
    return t


def _occurs(name: str, t: Type, subst: Dict[str, Type]) -> bool:
    t = resolve(t, subst)
    if isinstance(t, TypeVar):
        return t.name == name
    if isinstance(t, SetOf):
        return _occurs(name, t.elem, subst)
    return False


def unify_into(a: Type, b: Type, subst: Dict[str, Type]) -> None:
    """Extend subst with a most general unifier of a and b, or raise."""
    while isinstance(a, TypeVar) and a.name in subst:
        a = subst[a.name]
    while isinstance(b, TypeVar) and b.name in subst:
        b = subst[b.name]
    if isinstance(a, TypeVar) and isinstance(b, TypeVar) and a.name == b.name:
        return
    if isinstance(a, TypeVar):
        if _occurs(a.name, b, subst):
            raise OccursCheck(f"{a.name} occurs in {b}")
        subst[a.name] = b
        return
    if isinstance(b, TypeVar):
        unify_into(b, a, subst)
        return
    if isinstance(a, Bool) and isinstance(b, Bool):
        return
    if isinstance(a, SetOf) and isinstance(b, SetOf):
        unify_into(a.elem, b.elem, subst)
        return
    raise UnifyFail(f"cannot unify {a} with {b}")


def unify(a: Type, b: Type) -> Dict[str, Type]:
    """Most general unifier as a substitution over TypeVar names."""
    subst: Dict[str, Type] = {}
    unify_into(a, b, subst)
    return subst


@dataclass
class TypeAssignment:
    """Result of inferring a goal: per-variable types plus the focus view."""

    var_types: Dict[str, Type]
    focus_class: str  # "EXPR" or "PRED"
    focus_type: Optional[Type]  # meaningful when focus_class == "EXPR"


class Inference:
    """One inference run; owns its fresh-variable counter and substitution."""

    def __init__(self):
        self._counter = itertools.count(1)
        self.subst: Dict[str, Type] = {}
        self.var_types: Dict[str, Type] = {}  # free plain variables
        self.schematics: Dict[str, Tuple[str, Optional[Type]]] = {}

    def fresh(self) -> TypeVar:
        return TypeVar(f"t{next(self._counter)}")

    def unify(self, a: Type, b: Type, path: Tuple[int, ...]) -> None:
        try:
            unify_into(a, b, self.subst)
        except TermTypeError as e:
            raise type(e)(e.message, path) from None

    def _boolish(self, cls: str, ty: Optional[Type], path: Tuple[int, ...]) -> None:
        if cls == "EXPR":
            self.unify(ty, BOOL, path)

    def infer(
        self,
        t: Term,
        env: Optional[Dict[str, Type]] = None,
        path: Tuple[int, ...] = (),
        trace: Optional[dict] = None,
    ) -> Tuple[str, Optional[Type]]:
        """Return (syntactic class, type) of t; records free-var types.

        ``env`` maps bound variables in scope.  When ``trace`` is given
        and its ``path`` matches the current position, the class, type
        and in-scope environment are snapshotted into it.
        """
        env = {} if env is None else env
        result = self._infer(t, env, path, trace)
        if trace is not None and trace.get("path") == path:
            trace["class"], trace["type"] = result
            trace["env"] = dict(self.var_types)
            trace["env"].update(env)
        return result

    def _infer(self, t, env, path, trace):
        if isinstance(t, PredConst):
            return "PRED", None
        if isinstance(t, Var):
            if t.name in env:
                return "EXPR", env[t.name]
            ty = self.var_types.setdefault(t.name, self.fresh())
            return "EXPR", ty
        if isinstance(t, SchematicVar):
            if t.name not in self.schematics:
                ty = self.fresh() if t.klass == EXPR else None
                self.schematics[t.name] = (t.klass, ty)
            klass, ty = self.schematics[t.name]
            if klass != t.klass:
                raise TermTypeError(f"schematic {t.name!r} class conflict", path)
            if klass == EXPR:
                return "EXPR", ty
            return "PRED", None
        if isinstance(t, Connective):
            for i, arg in enumerate(t.args, start=1):
                cls, ty = self.infer(arg, env, path + (i,), trace)
                self._boolish(cls, ty, path + (i,))
            return "PRED", None
        if isinstance(t, Quantifier):
            inner = dict(env)
            for binder in t.binders:
                inner[binder] = self.fresh()
            cls, ty = self.infer(t.body, inner, path + (1,), trace)
            self._boolish(cls, ty, path + (1,))
            return "PRED", None
        if isinstance(t, App):
            if len(t.args) != 2:
                raise TermTypeError(f"{t.op!r} expects 2 arguments", path)
            lc, lt = self.infer(t.args[0], env, path + (1,), trace)
            rc, rt = self.infer(t.args[1], env, path + (2,), trace)
            if t.op == "in":
                if lc == "PRED" or rc == "PRED":
                    raise TermTypeError("'in' takes expressions", path)
                self.unify(rt, SetOf(lt), path)
                return "EXPR", BOOL
            if t.op in ("intsct", "union"):
                if lc == "PRED" or rc == "PRED":
                    raise TermTypeError(f"{t.op!r} takes expressions", path)
                self.unify(lt, SetOf(self.fresh()), path)
                self.unify(lt, rt, path)
                return "EXPR", lt
            if t.op == "=":
                # Both sides must have unifiable types; predicates count as B.
                lt = BOOL if lc == "PRED" else lt
                rt = BOOL if rc == "PRED" else rt
                self.unify(lt, rt, path)
                return "EXPR", BOOL
            raise TermTypeError(f"unknown operator {t.op!r}", path)
        raise TermTypeError(f"cannot type {t!r}", path)

    def resolved(self, t: Optional[Type]) -> Optional[Type]:
        return None if t is None else resolve(t, self.subst)


@dataclass
class FocusAnalysis:
    """Whole-goal inference plus the view at one focus path."""

    assignment: TypeAssignment
    env_at_focus: Dict[str, Type]  # free vars and binders in scope, resolved


def analyze(root: Term, path: Tuple[int, ...] = ()) -> FocusAnalysis:
    inf = Inference()
    trace: dict = {"path": tuple(path)}
    inf.infer(root, path=(), trace=trace)
    if "class" not in trace:
        raise TermTypeError(f"no subterm at path {path}", path)
    assignment = TypeAssignment(
        var_types={n: inf.resolved(t) for n, t in inf.var_types.items()},
        focus_class=trace["class"],
        focus_type=inf.resolved(trace["type"]),
    )
    env = {n: inf.resolved(t) for n, t in trace["env"].items()}
    return FocusAnalysis(assignment, env)


def infer(t: Term) -> TypeAssignment:
    """Infer the whole term; the 'focus' view is the term itself."""
    return analyze(t, ()).assignment


def _import_type(t: Type, ren: Dict[str, Type], inf: Inference) -> Type:
    """Copy a type from another inference run, freshening its variables."""
    if isinstance(t, TypeVar):
        if t.name not in ren:
            ren[t.name] = inf.fresh()
        return ren[t.name]
    if isinstance(t, SetOf):
        return SetOf(_import_type(t.elem, ren, inf))
    return t


def types_compatible(binding, law_schema: Term, goal_env: Dict[str, Type]) -> bool:
    """True iff each bound schematic's goal-side type fits its law-side type.

    One shared substitution is used across all schematic variables.
    """
    inf = Inference()
    try:
        inf.infer(law_schema)
    except TermTypeError:
        return False
    ren: Dict[str, Type] = {}
    env = {name: _import_type(ty, ren, inf) for name, ty in goal_env.items()}
    try:
        for name, term in binding.terms.items():
            if name not in inf.schematics:
                continue
            law_cls, law_ty = inf.schematics[name]
            cls, ty = inf.infer(term, env=env)
            if law_cls == PRED:
                if cls == "EXPR":
                    unify_into(ty, BOOL, inf.subst)
            else:
                if cls == "PRED":
                    return False
                unify_into(law_ty, ty, inf.subst)
    except TermTypeError:
        return False
    return True


def render_type(t: Type, names: Optional[Dict[str, str]] = None) -> str:
    """Display form: ``B``, ``Set(t1)``, ``t1``; names in first-use order."""
    names = {} if names is None else names

    def go(t: Type) -> str:
        if isinstance(t, Bool):
            return "B"
        if isinstance(t, SetOf):
            return f"Set({go(t.elem)})"
        if t.name not in names:
            names[t.name] = f"t{len(names) + 1}"
        return names[t.name]

    return go(t)
