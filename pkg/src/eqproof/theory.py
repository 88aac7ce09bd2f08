"""Theory stack: ordered theories with LAWS / CONJECTURES / THEOREMS tables.

The bottom theory is always ``_ROOT``; every theory sees the laws of the
theories below it.  Stacks are immutable values; edits return new stacks.
Persistence is a single JSON document with terms stored as concrete
syntax, so the parser is the single source of truth for the format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

from .errors import (
    DuplicateName,
    FormatError,
    UnknownRow,
    UnknownTheory,
)
from .syntax import parse_path, parse_term, render_path, render_term
from .terms import Binding, SideCondition, Term, schematize

PROVENANCES = ("axiom", "proven", "asserted")

ROOT_THEORY = "_ROOT"


@dataclass(frozen=True)
class Law:
    """Named rewritable schema; ``schema`` holds schematic variables."""

    name: str
    provenance: str  # axiom | proven | asserted
    side_condition: SideCondition
    schema: Term
    theory: str = ""


@dataclass(frozen=True)
class Conjecture:
    """Unproven goal; its schema is a plain term (no schematic variables)."""

    name: str
    schema: Term
    side_condition: SideCondition = SideCondition()


@dataclass(frozen=True)
class ProofRecord:
    """Structured, replayable record of a finished proof."""

    strategy: str
    transcript: str
    steps: Tuple["StepRecord", ...]


@dataclass(frozen=True)
class StepRecord:
    law_name: str
    direction: str  # "L-to-R" | "R-to-L"
    path: Tuple[int, ...]
    terms: Tuple[Tuple[str, str], ...] = ()  # schematic name -> rendered term
    binders: Tuple[Tuple[str, str], ...] = ()  # law binder -> chosen name


@dataclass(frozen=True)
class Theorem:
    name: str
    schema: Term
    side_condition: SideCondition
    proof: ProofRecord


@dataclass(frozen=True)
class Theory:
    name: str
    version: int = 0
    laws: Tuple[Law, ...] = ()
    conjectures: Tuple[Conjecture, ...] = ()
    theorems: Tuple[Theorem, ...] = ()

    def display_name(self) -> str:
        return f"{self.name}${self.version}"


@dataclass(frozen=True)
class TheoryStack:
    """Theories ordered bottom-up; index 0 is ``_ROOT``."""

    theories: Tuple[Theory, ...]

    def __post_init__(self):
        if not self.theories or self.theories[0].name != ROOT_THEORY:
            raise FormatError(f"stack must have {ROOT_THEORY} at the bottom")
        names = [t.name for t in self.theories]
        if len(set(names)) != len(names):
            raise FormatError("duplicate theory names in stack")

    def index_of(self, name: str) -> int:
        for i, t in enumerate(self.theories):
            if t.name == name:
                return i
        raise UnknownTheory(f"no theory named {name!r}")

    def theory(self, name: str) -> Theory:
        return self.theories[self.index_of(name)]

    def with_theory(self, updated: Theory) -> "TheoryStack":
        out = tuple(
            updated if t.name == updated.name else t for t in self.theories
        )
        return TheoryStack(out)


def theorem_as_law(theorem: Theorem, theory: str) -> Law:
    """Wrap a theorem for use in matching; free variables become schematic."""
    return Law(
        name=theorem.name,
        provenance="proven",
        side_condition=theorem.side_condition,
        schema=schematize(theorem.schema),
        theory=theory,
    )


def visible_laws(stack: TheoryStack, from_theory: str) -> List[Law]:
    """Laws (and theorems, usable as laws) of ``from_theory`` and all below,
    nearest theory first, table order within a theory."""
    top = stack.index_of(from_theory)
    out: List[Law] = []
    for t in reversed(stack.theories[: top + 1]):
        out.extend(replace(law, theory=t.name) for law in t.laws)
        out.extend(theorem_as_law(thm, t.name) for thm in t.theorems)
    return out


def find_conjecture(stack: TheoryStack, theory: str, name: str) -> Conjecture:
    for c in stack.theory(theory).conjectures:
        if c.name == name:
            return c
    from .errors import UnknownConjecture

    raise UnknownConjecture(f"no conjecture {name!r} in {theory!r}")


def _names(theory: Theory) -> set:
    out = {law.name for law in theory.laws}
    out |= {c.name for c in theory.conjectures}
    out |= {t.name for t in theory.theorems}
    return out


def edit_table(
    stack: TheoryStack,
    theory_name: str,
    table: str,
    action: str,
    row: dict,
) -> TheoryStack:
    """Add, update or delete a law or conjecture row.

    ``row`` uses the wire shape: name, schema (concrete syntax),
    sideConditions, and provenance for laws (defaulting to ``asserted``).
    """
    theory = stack.theory(theory_name)
    if table not in ("laws", "conjectures"):
        raise UnknownRow(f"table {table!r} is not editable")
    if action not in ("add", "update", "delete"):
        raise UnknownRow(f"unknown action {action!r}")
    name = row.get("name")
    if not name:
        raise FormatError("row needs a name")
    rows = list(getattr(theory, table))
    index = next((i for i, r in enumerate(rows) if r.name == name), None)

    if action == "delete":
        if index is None:
            raise UnknownRow(f"no {table} row named {name!r}")
        del rows[index]
    else:
        if action == "add" and name in _names(theory):
            raise DuplicateName(f"{name!r} already exists in {theory_name!r}")
        if action == "update" and index is None:
            raise UnknownRow(f"no {table} row named {name!r}")
        sc = side_condition_from_json(row.get("sideConditions", []))
        schema = parse_term(row["schema"])
        if table == "laws":
            new_row: object = Law(
                name=name,
                provenance=row.get("provenance", "asserted"),
                side_condition=sc,
                schema=schematize(schema),
                theory=theory_name,
            )
            from .inference import infer

            infer(new_row.schema)  # reject ill-typed schemas
        else:
            from .inference import infer

            infer(schema)
            new_row = Conjecture(name=name, schema=schema, side_condition=sc)
        if action == "add":
            rows.append(new_row)
        else:
            rows[index] = new_row

    return stack.with_theory(replace(theory, **{table: tuple(rows)}))


# ---------------------------------------------------------------------------
# JSON persistence

def side_condition_to_json(sc: SideCondition) -> list:
    return [{"notFreeIn": [v, m]} for v, m in sc.not_free_in]


def side_condition_from_json(data) -> SideCondition:
    try:
        return SideCondition(tuple((d["notFreeIn"][0], d["notFreeIn"][1]) for d in data))
    except (KeyError, IndexError, TypeError) as e:
        raise FormatError(f"bad side condition {data!r}") from e


def step_to_json(s: StepRecord) -> dict:
    out = {
        "law": s.law_name,
        "direction": s.direction,
        "path": render_path(s.path),
    }
    if s.terms:
        out["terms"] = {k: v for k, v in s.terms}
    if s.binders:
        out["binders"] = {k: v for k, v in s.binders}
    return out


def step_from_json(data: dict) -> StepRecord:
    return StepRecord(
        law_name=data["law"],
        direction=data["direction"],
        path=parse_path(data["path"]),
        terms=tuple(sorted(data.get("terms", {}).items())),
        binders=tuple(sorted(data.get("binders", {}).items())),
    )


def stack_to_json(stack: TheoryStack) -> dict:
    theories = []
    for t in stack.theories:
        theories.append(
            {
                "name": t.name,
                "version": t.version,
                "laws": [
                    {
                        "name": law.name,
                        "provenance": law.provenance,
                        "schema": render_term(law.schema),
                        "sideConditions": side_condition_to_json(law.side_condition),
                    }
                    for law in t.laws
                ],
                "conjectures": [
                    {
                        "name": c.name,
                        "schema": render_term(c.schema),
                        "sideConditions": side_condition_to_json(c.side_condition),
                    }
                    for c in t.conjectures
                ],
                "theorems": [
                    {
                        "name": thm.name,
                        "schema": render_term(thm.schema),
                        "sideConditions": side_condition_to_json(thm.side_condition),
                        "proof": {
                            "strategy": thm.proof.strategy,
                            "transcript": thm.proof.transcript,
                            "steps": [step_to_json(s) for s in thm.proof.steps],
                        },
                    }
                    for thm in t.theorems
                ],
            }
        )
    return {"theories": theories}


def stack_from_json(doc: dict) -> TheoryStack:
    try:
        raw = doc["theories"]
    except (KeyError, TypeError) as e:
        raise FormatError("document needs a 'theories' list") from e
    theories = []
    for entry in raw:
        try:
            name = entry["name"]
            laws = tuple(
                Law(
                    name=lw["name"],
                    provenance=lw["provenance"],
                    side_condition=side_condition_from_json(lw.get("sideConditions", [])),
                    schema=schematize(parse_term(lw["schema"])),
                    theory=name,
                )
                for lw in entry.get("laws", [])
            )
            conjectures = tuple(
                Conjecture(
                    name=c["name"],
                    schema=parse_term(c["schema"]),
                    side_condition=side_condition_from_json(c.get("sideConditions", [])),
                )
                for c in entry.get("conjectures", [])
            )
            theorems = tuple(
                Theorem(
                    name=tm["name"],
                    schema=parse_term(tm["schema"]),
                    side_condition=side_condition_from_json(tm.get("sideConditions", [])),
                    proof=ProofRecord(
                        strategy=tm["proof"]["strategy"],
                        transcript=tm["proof"]["transcript"],
                        steps=tuple(step_from_json(s) for s in tm["proof"]["steps"]),
                    ),
                )
                for tm in entry.get("theorems", [])
            )
        except (KeyError, TypeError) as e:
            raise FormatError(f"bad theory entry: {e}") from e
        theories.append(
            Theory(
                name=name,
                version=int(entry.get("version", 0)),
                laws=laws,
                conjectures=conjectures,
                theorems=theorems,
            )
        )
    return TheoryStack(tuple(theories))


def dumps_stack(stack: TheoryStack) -> str:
    return json.dumps(stack_to_json(stack), indent=2, ensure_ascii=False) + "\n"


def loads_stack(text: str) -> TheoryStack:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"not valid JSON: {e}") from e
    return stack_from_json(doc)


def load_stack(path) -> TheoryStack:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_stack(fh.read())


def save_stack(stack: TheoryStack, path) -> TheoryStack:
    """Write the stack; bump the version of each theory whose content changed.

    Returns the stack as written (with any version bumps applied), so a
    second save of the same value is byte-stable.
    """
    import os

    previous: Optional[TheoryStack] = None
    if os.path.exists(path):
        try:
            previous = load_stack(path)
        except FormatError:
            previous = None
    if previous is not None:
        bumped = []
        old = {t.name: t for t in previous.theories}
        for t in stack.theories:
            before = old.get(t.name)
            if before is not None and _content_equal(before, t):
                bumped.append(replace(t, version=before.version))
            elif before is not None:
                bumped.append(replace(t, version=before.version + 1))
            else:
                bumped.append(t)
        stack = TheoryStack(tuple(bumped))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_stack(stack))
    return stack


def _content_equal(a: Theory, b: Theory) -> bool:
    return replace(a, version=0) == replace(b, version=0)
