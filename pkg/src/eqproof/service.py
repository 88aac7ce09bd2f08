"""Session-oriented HTTP+JSON API for the proof assistant.

Sessions live in memory; each one owns a single proof over the server's
current theory stack.  Every state-changing response embeds the full new
proof view, and terms cross the wire as concrete syntax plus a
position-annotated span list for click-to-focus mapping in the UI.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from . import engine, matcher
from .errors import (
    AtRoot,
    EqProofError,
    FocusError,
    NoSibling,
    NoSuchChild,
    ProofAlreadyComplete,
    TermSyntaxError,
    TermTypeError,
    UnknownConjecture,
    UnknownRow,
    UnknownTheory,
)
from .focus import ascend, descend, focus_at, next_sibling, prev_sibling
from .inference import analyze, render_type
from .syntax import parse_path, render_path, render_term, render_term_with_spans
from .terms import free_vars
from .theory import (
    TheoryStack,
    edit_table,
    side_condition_to_json,
    theorem_as_law,
    visible_laws,
)


@dataclass
class Session:
    id: str
    state: engine.ProofState


def _error_response(e: EqProofError) -> JSONResponse:
    if isinstance(e, (UnknownTheory, UnknownConjecture, UnknownRow)):
        status = 404
    elif isinstance(e, ProofAlreadyComplete):
        status = 409
    else:
        status = 400
    body = {"code": e.code, "message": str(e)}
    if isinstance(e, TermSyntaxError):
        body["position"] = {"line": e.line, "column": e.column}
    elif isinstance(e, TermTypeError) and e.path:
        body["position"] = {"path": render_path(e.path)}
    return JSONResponse(status_code=status, content=body)


def proof_view(session: Session, blocked: bool = False) -> dict:
    state = session.state
    goal_text, spans = render_term_with_spans(state.current)
    analysis = analyze(state.current, state.focus_path)
    names: Dict[str, str] = {}
    focus_type = (
        render_type(analysis.assignment.focus_type, names)
        if analysis.assignment.focus_type is not None
        else None
    )
    view = {
        "id": session.id,
        "theory": state.theory,
        "conjecture": state.name,
        "strategy": state.strategy.value,
        "strategyPhrase": state.strategy.phrase,
        "goal": goal_text,
        "schema": render_term(state.schema),
        "target": render_term(state.target) if state.target is not None else "TRUE"
        if state.strategy is engine.Strategy.REDUCE
        else None,
        "focusPath": render_path(state.focus_path),
        "focus": render_term(state.focused().focus),
        "focusClass": analysis.assignment.focus_class,
        "focusType": focus_type,
        "freeVars": sorted(free_vars(state.current)),
        "varTypes": {
            name: render_type(ty, names)
            for name, ty in sorted(analysis.assignment.var_types.items())
        },
        "complete": state.complete,
        "steps": [
            {
                "law": s.law_name,
                "direction": s.direction.value,
                "path": render_path(s.path),
                "goalAfter": render_term(s.goal_after),
            }
            for s in state.steps
        ],
        "spans": [
            {"path": render_path(s.path), "start": s.start, "end": s.end}
            for s in spans
        ],
    }
    if state.strategy is engine.Strategy.REDUCE_BOTH:
        view["activeSide"] = state.active_side
        view["otherSide"] = render_term(state.other)
    if blocked:
        view["blocked"] = True
    return view


def _law_row(law) -> dict:
    return {
        "name": law.name,
        "provenance": law.provenance,
        "sideConditions": side_condition_to_json(law.side_condition),
        "schema": render_term(law.schema),
    }


def create_app(stack: TheoryStack) -> FastAPI:
    app = FastAPI(title="eqproof", version="0.1.0")
    app.state.stack = stack
    app.state.sessions = {}
    counter = itertools.count(1)

    @app.exception_handler(EqProofError)
    async def handle_eqproof_error(request: Request, exc: EqProofError):
        return _error_response(exc)

    def get_session(proof_id: str) -> Session:
        session = app.state.sessions.get(proof_id)
        if session is None:
            raise UnknownRow(f"no session {proof_id!r}")
        return session

    @app.get("/theories")
    def list_theories():
        return {
            "theories": [
                {
                    "name": t.name,
                    "version": t.version,
                    "display": t.display_name(),
                    "laws": len(t.laws),
                    "conjectures": len(t.conjectures),
                    "theorems": len(t.theorems),
                }
                for t in app.state.stack.theories
            ]
        }

    @app.get("/theories/{name}/{table}")
    def get_table(name: str, table: str):
        theory = app.state.stack.theory(name)
        if table == "laws":
            return {"rows": [_law_row(law) for law in theory.laws]}
        if table == "conjectures":
            return {
                "rows": [
                    {
                        "name": c.name,
                        "sideConditions": side_condition_to_json(c.side_condition),
                        "schema": render_term(c.schema),
                    }
                    for c in theory.conjectures
                ]
            }
        if table == "theorems":
            return {
                "rows": [
                    {
                        "name": t.name,
                        "provenance": "proven",
                        "sideConditions": side_condition_to_json(t.side_condition),
                        "schema": render_term(t.schema),
                        "strategy": t.proof.strategy,
                    }
                    for t in theory.theorems
                ]
            }
        raise UnknownRow(f"no table {table!r}")

    @app.get("/theories/{name}/theorems/{theorem}/transcript")
    def get_theorem_transcript(name: str, theorem: str):
        theory = app.state.stack.theory(name)
        for t in theory.theorems:
            if t.name == theorem:
                return PlainTextResponse(t.proof.transcript)
        raise UnknownRow(f"no theorem {theorem!r} in {name!r}")

    @app.post("/theories/{name}/{table}")
    def post_table(name: str, table: str, body: dict):
        app.state.stack = edit_table(
            app.state.stack, name, table, body.get("action", "add"), body.get("row", {})
        )
        return get_table(name, table)

    @app.post("/proofs")
    def start_proof(body: dict):
        strategy = engine.parse_strategy(body.get("strategy", "Reduce"))
        state = engine.start_proof(
            app.state.stack, body["theory"], body["conjecture"], strategy
        )
        session = Session(id=f"p{next(counter)}", state=state)
        app.state.sessions[session.id] = session
        return proof_view(session)

    @app.get("/proofs/{proof_id}")
    def get_proof(proof_id: str):
        return proof_view(get_session(proof_id))

    @app.post("/proofs/{proof_id}/focus")
    def move_focus(proof_id: str, body: dict):
        session = get_session(proof_id)
        state = session.state
        if "path" in body:
            path = parse_path(body["path"])
            try:
                focus_at(state.current, path)
            except NoSuchChild:
                return proof_view(session, blocked=True)
            session.state = engine.d_replace(state, focus_path=path)
            return proof_view(session)
        move = body.get("move")
        moves = {
            "down": lambda f: descend(f, 1),
            "up": ascend,
            "left": prev_sibling,
            "right": next_sibling,
        }
        if move not in moves:
            raise EqProofError(f"bad move {move!r}")
        try:
            f = moves[move](state.focused())
        except (NoSuchChild, AtRoot, NoSibling):
            return proof_view(session, blocked=True)
        session.state = engine.d_replace(state, focus_path=f.path)
        return proof_view(session)

    @app.get("/proofs/{proof_id}/matches")
    def get_matches(proof_id: str):
        session = get_session(proof_id)
        state = session.state
        results = matcher.applicable_laws(
            state.focused(), app.state.stack, state.theory
        )
        return {
            "matches": [
                {
                    "lawName": m.law.name,
                    "theory": m.law.theory,
                    "provenance": m.law.provenance,
                    "direction": m.direction.value,
                    "path": render_path(m.path),
                    "preview": render_term(m.preview),
                    "unbound": list(m.unbound_names),
                    "defaults": _defaults_json(m),
                }
                for m in results
            ]
        }

    @app.post("/proofs/{proof_id}/apply")
    def apply_step(proof_id: str, body: dict):
        session = get_session(proof_id)
        state = session.state
        direction = matcher.parse_direction(body.get("direction", "L-to-R"))
        m = engine.resolve_step(
            state, app.state.stack, body["lawName"], direction, state.focus_path
        )
        inst = body.get("instantiation")
        if m.unbound and inst is None:
            return {
                "needsInstantiation": [
                    {"name": name, "kind": kind, "default": _default_text(m, name)}
                    for name, kind in m.unbound
                ]
            }
        binding = engine._script_binding(m, inst or {})
        session.state = engine.proof_step(state, m, binding)
        return proof_view(session)

    @app.post("/proofs/{proof_id}/undo")
    def undo_step(proof_id: str):
        session = get_session(proof_id)
        session.state = engine.undo(session.state)
        return proof_view(session)

    @app.post("/proofs/{proof_id}/side")
    def switch(proof_id: str):
        session = get_session(proof_id)
        session.state = engine.switch_side(session.state)
        return proof_view(session)

    @app.post("/proofs/{proof_id}/promote")
    def promote_proof(proof_id: str):
        session = get_session(proof_id)
        app.state.stack = engine.promote(app.state.stack, session.state)
        return {"promoted": session.state.name, "theory": session.state.theory}

    @app.get("/proofs/{proof_id}/transcript")
    def get_transcript(proof_id: str):
        session = get_session(proof_id)
        return PlainTextResponse(engine.render_proof(session.state))

    return app


def _defaults_json(m: matcher.MatchResult) -> dict:
    out = {}
    for name, kind in m.unbound:
        out[name] = _default_text(m, name)
    return out


def _default_text(m: matcher.MatchResult, name: str) -> str:
    if name in m.defaults.binders:
        return m.defaults.binders[name]
    return render_term(m.defaults.terms[name])
