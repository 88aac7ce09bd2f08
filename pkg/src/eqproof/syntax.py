"""Concrete syntax: parser and canonical renderer for the predicate language.

The grammar (loosest to tightest): ``==`` < ``=>`` < ``\\/`` < ``/\\`` <
``~`` < ``=`` < ``in`` < ``intsct``/``union``; a quantifier body extends
maximally to the right.  The canonical renderer always parenthesises
``in`` applications (except at the very top) and the set-valued arguments
of ``in``, so rendered goals match the proof-transcript notation exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import TermSyntaxError
from .terms import (
    App,
    Connective,
    PredConst,
    Quantifier,
    SchematicVar,
    Term,
    Var,
    children,
)

# ---------------------------------------------------------------------------
# Lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_′]*)
  | (?P<op>==|=>|=|/\\|\\/|~|\(|\)|@|,)
    """,
    re.VERBOSE,
)

_KEYWORDS = {"forall", "exists", "in", "intsct", "union", "TRUE", "FALSE"}


@dataclass(frozen=True)
class Token:
    kind: str  # keyword/op text, "ident", or "eof"
    text: str
    line: int
    column: int


def tokenize(source: str) -> List[Token]:
    tokens: List[Token] = []
    line, col = 1, 1
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise TermSyntaxError(f"unexpected character {source[pos]!r}", line, col)
        text = m.group(0)
        if m.lastgroup != "ws":
            if m.lastgroup == "ident" and text in _KEYWORDS:
                tokens.append(Token(text, text, line, col))
            elif m.lastgroup == "ident":
                tokens.append(Token("ident", text, line, col))
            else:
                tokens.append(Token(text, text, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Parser

# op -> (precedence, associativity)
_BINOPS: Dict[str, Tuple[int, str]] = {
    "==": (1, "right"),
    "=>": (2, "right"),
    "\\/": (3, "left"),
    "/\\": (4, "left"),
    "=": (6, "none"),
    "in": (7, "none"),
    "intsct": (8, "left"),
    "union": (8, "left"),
}

_NOT_PREC = 5
_CONNECTIVES = {"==", "=>", "\\/", "/\\"}


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            self.fail(f"unexpected {tok.text or 'end of input'!r}", [kind])
        return self.advance()

    def fail(self, message: str, expected=()):
        tok = self.peek()
        raise TermSyntaxError(message, tok.line, tok.column, expected)

    def parse_term(self) -> Term:
        t = self.parse_expr(0)
        if self.peek().kind != "eof":
            self.fail(f"trailing input {self.peek().text!r}", ["eof"])
        return t

    def parse_expr(self, min_prec: int) -> Term:
        tok = self.peek()
        if tok.kind in ("forall", "exists"):
            return self.parse_quantifier()
        left = self.parse_unary()
        while True:
            tok = self.peek()
            info = _BINOPS.get(tok.kind)
            if info is None or info[0] < min_prec:
                return left
            prec, assoc = info
            self.advance()
            if self.peek().kind in ("forall", "exists"):
                right: Term = self.parse_quantifier()
            elif assoc == "left":
                right = self.parse_expr(prec + 1)
            elif assoc == "right":
                right = self.parse_expr(prec)
            else:  # non-associative
                right = self.parse_expr(prec + 1)
            if tok.kind in _CONNECTIVES:
                left = Connective(tok.kind, (left, right))
            else:
                left = App(tok.kind, (left, right))
            if assoc == "none" and self.peek().kind == tok.kind:
                self.fail(f"{tok.kind!r} does not chain", [])

    def parse_quantifier(self) -> Term:
        tok = self.advance()  # forall/exists
        binders = [self.expect("ident").text]
        while self.peek().kind == ",":
            self.advance()
            binders.append(self.expect("ident").text)
        if len(set(binders)) != len(binders):
            raise TermSyntaxError("duplicate binder", tok.line, tok.column)
        self.expect("@")
        body = self.parse_expr(0)
        return Quantifier(tok.kind, tuple(binders), body)

    def parse_unary(self) -> Term:
        tok = self.peek()
        if tok.kind == "~":
            self.advance()
            return Connective("~", (self.parse_expr(_NOT_PREC + 1),))
        return self.parse_atom()

    def parse_atom(self) -> Term:
        tok = self.peek()
        if tok.kind == "(":
            self.advance()
            inner = self.parse_expr(0)
            self.expect(")")
            return inner
        if tok.kind in ("TRUE", "FALSE"):
            self.advance()
            return PredConst(tok.kind)
        if tok.kind == "ident":
            self.advance()
            return Var(tok.text)
        if tok.kind in ("forall", "exists"):
            return self.parse_quantifier()
        self.fail(
            f"unexpected {tok.text or 'end of input'!r}",
            ["(", "TRUE", "FALSE", "identifier", "forall", "exists", "~"],
        )


def parse_term(source: str) -> Term:
    """Parse concrete syntax into a Term; raises TermSyntaxError with position."""
    return _Parser(tokenize(source)).parse_term()


# ---------------------------------------------------------------------------
# Renderer

@dataclass(frozen=True)
class Span:
    """Character range of a subterm in the rendered string (half-open)."""

    path: Tuple[int, ...]
    start: int
    end: int


class _Renderer:
    def __init__(self):
        self.out: List[str] = []
        self.length = 0
        self.spans: List[Span] = []

    def emit(self, text: str):
        self.out.append(text)
        self.length += len(text)

    def render(self, t: Term, parent_prec: int, path: Tuple[int, ...], root: bool,
               force_parens: bool = False):
        start = self.length
        self._render(t, parent_prec, path, root, force_parens)
        self.spans.append(Span(path, start, self.length))

    def _render(self, t: Term, parent_prec: int, path, root: bool, force_parens: bool):
        if isinstance(t, (Var, SchematicVar)):
            self.emit(t.name)
            return
        if isinstance(t, PredConst):
            self.emit(t.name)
            return
        if isinstance(t, Quantifier):
            wrap = not root
            if wrap:
                self.emit("(")
            self.emit(f"{t.kind} {','.join(t.binders)} @ ")
            self.render(t.body, 0, path + (1,), True)
            if wrap:
                self.emit(")")
            return
        if isinstance(t, Connective) and t.op == "~":
            wrap = _NOT_PREC < parent_prec
            if wrap:
                self.emit("(")
            self.emit("~")
            self.render(t.args[0], _NOT_PREC + 1, path + (1,), False)
            if wrap:
                self.emit(")")
            return
        # binary connective or application
        op = t.op
        prec, assoc = _BINOPS[op]
        wrap = force_parens or prec < parent_prec or (op == "in" and not root)
        if wrap:
            self.emit("(")
        lprec = prec if assoc == "left" else prec + 1
        rprec = prec if assoc == "right" else prec + 1
        force_left = op == "in" and _is_setop(t.args[0])
        force_right = op == "in" and _is_setop(t.args[1])
        self.render(t.args[0], lprec, path + (1,), False, force_left)
        self.emit(f" {op} ")
        self.render(t.args[1], rprec, path + (2,), False, force_right)
        if wrap:
            self.emit(")")


def _is_setop(t: Term) -> bool:
    return isinstance(t, App) and t.op in ("intsct", "union")


def render_term(t: Term) -> str:
    """Canonical rendering; parse_term(render_term(t)) == t."""
    r = _Renderer()
    r.render(t, 0, (), True)
    return "".join(r.out)


def render_term_with_spans(t: Term) -> Tuple[str, List[Span]]:
    """Rendering plus the character span of every subterm, for UI highlighting."""
    r = _Renderer()
    r.render(t, 0, (), True)
    return "".join(r.out), sorted(r.spans, key=lambda s: s.path)


# ---------------------------------------------------------------------------
# Focus paths

def parse_path(source: str) -> Tuple[int, ...]:
    """``@`` is the root; ``@1.2`` addresses child 2 of child 1 (1-based)."""
    s = source.strip()
    if not s.startswith("@"):
        raise TermSyntaxError("path must start with '@'", 1, 1, ["@"])
    rest = s[1:]
    if not rest:
        return ()
    segments = []
    for i, part in enumerate(rest.split(".")):
        if not part.isdigit() or int(part) < 1:
            raise TermSyntaxError(
                f"bad path segment {part!r}", 1, 2 + i, ["positive integer"]
            )
        segments.append(int(part))
    return tuple(segments)


def render_path(path: Tuple[int, ...]) -> str:
    return "@" + ".".join(str(i) for i in path)
