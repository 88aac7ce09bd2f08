"""Headless driver: replay scripted proofs, print match menus, serve the API.

Exit codes: 0 success, 1 proof/replay failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .engine import parse_script, promote, render_proof, replay
from .errors import EqProofError, ReplayError
from .focus import focus_at
from .matcher import applicable_laws
from .seed import INTSCT_COMM_SCRIPT, seed_stack
from .syntax import parse_path, parse_term, render_path, render_term
from .theory import dumps_stack, load_stack, save_stack


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqproof", description="Equational proof assistant (headless driver)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_replay = sub.add_parser("replay", help="replay a scripted proof")
    p_replay.add_argument("stack_pos", nargs="?", metavar="STACK")
    p_replay.add_argument("script_pos", nargs="?", metavar="SCRIPT")
    p_replay.add_argument("--stack", dest="stack")
    p_replay.add_argument("--script", dest="script")
    p_replay.add_argument("--out", help="write the transcript here as well")
    p_replay.add_argument(
        "--promote",
        dest="promote_to",
        metavar="STACKFILE",
        help="save the stack with the proven theorem to this file",
    )

    p_menu = sub.add_parser("menu", help="print the ranked law menu for a goal")
    p_menu.add_argument("stack_pos", nargs="?", metavar="STACK")
    p_menu.add_argument("theory")
    p_menu.add_argument("goal", help="goal term, concrete syntax")
    p_menu.add_argument("path", nargs="?", default="@", help="focus path, e.g. @1.2")
    p_menu.add_argument("--stack", dest="stack")
    p_menu.add_argument("--limit", type=int, default=20)
    p_menu.add_argument("--heuristic", default="default")

    p_seed = sub.add_parser("seed", help="write the preloaded theory stack")
    p_seed.add_argument("--out", default="seed.stack")
    p_seed.add_argument(
        "--with-script", action="store_true",
        help="also write intsct-comm.script next to the stack",
    )

    p_serve = sub.add_parser("serve", help="run the HTTP session API")
    p_serve.add_argument("--stack", required=True)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


def _pick(parser, pos, flag, name):
    value = flag or pos
    if value is None:
        parser.error(f"missing {name} (give it positionally or with --{name})")
    return value


def cmd_replay(parser, args) -> int:
    stack_file = _pick(parser, args.stack_pos, args.stack, "stack")
    script_file = _pick(parser, args.script_pos, args.script, "script")
    stack = load_stack(stack_file)
    with open(script_file, "r", encoding="utf-8") as fh:
        script = parse_script(fh.read())
    try:
        state = replay(stack, script)
    except ReplayError as e:
        print(f"replay failed at {e}", file=sys.stderr)
        return 1
    transcript = render_proof(state)
    sys.stdout.write(transcript)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(transcript)
    if args.promote_to:
        save_stack(promote(stack, state), args.promote_to)
    return 0


def cmd_menu(parser, args) -> int:
    stack = load_stack(_pick(parser, args.stack_pos, args.stack, "stack"))
    goal = parse_term(args.goal)
    path = parse_path(args.path)
    matches = applicable_laws(
        focus_at(goal, path), stack, args.theory,
        limit=args.limit, heuristic=args.heuristic,
    )
    for i, m in enumerate(matches, start=1):
        needs = ""
        if m.unbound:
            needs = "  needs " + ", ".join("?" + n for n in m.unbound_names)
        print(
            f"{i:2}. {m.law.name} ({m.direction.value}) "
            f"{render_path(m.path)} -> {render_term(m.preview)}{needs}"
        )
    return 0


def cmd_seed(parser, args) -> int:
    stack = seed_stack()
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(dumps_stack(stack))
    print(f"wrote {args.out}")
    if args.with_script:
        import os

        script_path = os.path.join(os.path.dirname(args.out) or ".", "intsct-comm.script")
        with open(script_path, "w", encoding="utf-8") as fh:
            fh.write(INTSCT_COMM_SCRIPT)
        print(f"wrote {script_path}")
    return 0


def cmd_serve(parser, args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(load_stack(args.stack))
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "replay":
            return cmd_replay(parser, args)
        if args.command == "menu":
            return cmd_menu(parser, args)
        if args.command == "seed":
            return cmd_seed(parser, args)
        if args.command == "serve":
            return cmd_serve(parser, args)
    except EqProofError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
