"""Zipper over terms: directional focus moves and focused replacement.

Paths are tuples of 1-based child indices.  A quantifier exposes exactly
one child, its body, at index 1; binders are not navigable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .errors import AtRoot, NoSibling, NoSuchChild
from .terms import Term, children, with_children


@dataclass(frozen=True)
class Focused:
    """A root term plus the currently focused subterm and its path."""

    root: Term
    path: Tuple[int, ...]
    focus: Term


def subterm_at(root: Term, path: Tuple[int, ...]) -> Term:
    t = root
    for depth, index in enumerate(path):
        kids = children(t)
        if not 1 <= index <= len(kids):
            raise NoSuchChild(
                f"no child {index} at depth {depth} (node has {len(kids)})"
            )
        t = kids[index - 1]
    return t


def focus_at(root: Term, path: Tuple[int, ...] = ()) -> Focused:
    return Focused(root, tuple(path), subterm_at(root, path))


def descend(f: Focused, child: int = 1) -> Focused:
    kids = children(f.focus)
    if not 1 <= child <= len(kids):
        raise NoSuchChild(f"focus has {len(kids)} children, asked for {child}")
    return Focused(f.root, f.path + (child,), kids[child - 1])


def ascend(f: Focused) -> Focused:
    if not f.path:
        raise AtRoot("already at the root")
    return focus_at(f.root, f.path[:-1])


def _sibling(f: Focused, delta: int) -> Focused:
    if not f.path:
        raise NoSibling("root has no siblings")
    parent = subterm_at(f.root, f.path[:-1])
    index = f.path[-1] + delta
    if not 1 <= index <= len(children(parent)):
        raise NoSibling(f"no sibling at index {index}")
    return focus_at(f.root, f.path[:-1] + (index,))


def next_sibling(f: Focused) -> Focused:
    return _sibling(f, +1)


def prev_sibling(f: Focused) -> Focused:
    return _sibling(f, -1)


def replace_at(root: Term, path: Tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    kids = children(root)
    index = path[0]
    if not 1 <= index <= len(kids):
        raise NoSuchChild(f"no child {index}")
    rebuilt = list(kids)
    rebuilt[index - 1] = replace_at(kids[index - 1], path[1:], new)
    return with_children(root, tuple(rebuilt))


def replace_focus(f: Focused, new: Term) -> Term:
    """New root with the focused subterm replaced by ``new``."""
    return replace_at(f.root, f.path, new)


def path_valid(root: Term, path: Tuple[int, ...]) -> bool:
    try:
        subterm_at(root, path)
        return True
    except NoSuchChild:
        return False
