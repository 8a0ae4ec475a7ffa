"""Command line front end.

Subcommands: construct, verify, search, exact, bounds, render, serve.
Exit codes: 0 success, 1 domain failure (verify fails, target missed,
budget exhausted, infeasible solve), 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from . import boardfile
from .battle import counts, is_peaceful
from .board import Topology, make_board
from .bounds_nlp import ModelKind, build_model, export_model, solve_multistart
from .constructions import ainley, argyle, best_plaid, plaid
from .exact import exact_value
from .svg import render_svg
from .swap_search import SearchConfig, run


def _err(message: str) -> None:
    print(message, file=sys.stderr)


def _cmd_construct(args: argparse.Namespace) -> int:
    try:
        if args.type == "plaid":
            if (args.a is None) != (args.b is None):
                _err("plaid takes both --a and --b, or neither")
                return 2
            if args.a is None:
                _, battle = best_plaid(args.n)
            else:
                battle = plaid(args.n, args.a, args.b)
        elif args.type == "argyle":
            battle = argyle(args.n)
        else:
            battle = ainley(args.n)
    except ValueError as exc:
        _err(str(exc))
        return 2
    boardfile.save(battle, args.output)
    c = counts(battle)
    print(f"{args.type} n={args.n}: black={c.black} white={c.white} min={c.min}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        battle = boardfile.load(args.file)
    except (OSError, ValueError) as exc:
        _err(str(exc))
        return 1
    verdict = is_peaceful(battle)
    if verdict.peaceful:
        print(f"peaceful min={counts(battle).min}")
        return 0
    print(
        f"not peaceful: {verdict.line} "
        f"black={verdict.black_cell} white={verdict.white_cell}"
    )
    return 1


def _cmd_search(args: argparse.Namespace) -> int:
    budget = args.budget
    if budget is None and args.restarts is None:
        budget = 60.0  # an unreachable target must not hang the command
    try:
        config = SearchConfig(
            board=make_board(args.n, args.topology),
            target=args.target,
            seed=args.seed,
            max_restarts=args.restarts,
            time_budget=budget,
        )
    except ValueError as exc:
        _err(str(exc))
        return 2
    result = run(config)
    boardfile.save(result.battle, args.output)
    c = counts(result.battle)
    status = "reached target" if result.reached_target else "budget exhausted"
    print(
        f"{status}: min={c.min} (black={c.black} white={c.white}) "
        f"restarts={result.restarts} iterations={result.inner_iterations} "
        f"elapsed={result.elapsed:.1f}s"
    )
    return 0 if result.reached_target else 1


def _cmd_exact(args: argparse.Namespace) -> int:
    try:
        board = make_board(args.n, args.topology)
    except ValueError as exc:
        _err(str(exc))
        return 2
    result = exact_value(board, node_budget=args.node_budget)
    if not result.complete:
        _err(
            f"node budget {args.node_budget} exhausted after {result.nodes} nodes; "
            f"best found min={result.value}"
        )
        return 1
    print(
        f"{args.topology} n={args.n}: exact min={result.value} "
        f"nodes={result.nodes} elapsed={result.elapsed:.1f}s"
    )
    return 0


def _cmd_bounds(args: argparse.Namespace) -> int:
    model = build_model(ModelKind(args.model))
    if args.export is not None:
        export_model(model, args.export)
    report = solve_multistart(model, seed=args.seed, n_starts=args.starts)
    print(
        f"{args.model}: best objective {report.best_objective:.12f} "
        f"({report.converged_starts}/{report.starts} starts converged, "
        f"violation {report.constraint_violation:.2e})"
    )
    if not report.feasible:
        _err("no feasible point found")
        return 1
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    try:
        battle = boardfile.load(args.file)
    except (OSError, ValueError) as exc:
        _err(str(exc))
        return 1
    with open(args.output, "w", encoding="ascii") as fh:
        fh.write(render_svg(battle))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    port = args.port
    if port is None:
        port = int(os.environ.get("PEACEABLE_PORT", "8000"))
    uvicorn.run(create_app(), host=args.host, port=port, log_level="warning")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="peaceable")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write a construction to a board file")
    p.add_argument("--type", required=True, choices=("plaid", "argyle", "ainley"))
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--a", type=int, help="plaid row-block width (with --b)")
    p.add_argument("--b", type=int, help="plaid column-block width (with --a)")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="check a board file for peacefulness")
    p.add_argument("file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search", help="run the swap search to a target quality")
    p.add_argument("--topology", required=True, choices=("grid", "torus"))
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--target", required=True, type=int)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--budget", type=float, help="time budget in seconds")
    p.add_argument("--restarts", type=int, help="restart budget")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("exact", help="exact optimum by branch and bound")
    p.add_argument("--topology", required=True, choices=("grid", "torus"))
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--node-budget", type=int, default=10**9)
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("bounds", help="solve an upper-bound density model")
    p.add_argument(
        "--model", required=True, choices=[k.value for k in ModelKind]
    )
    p.add_argument("--starts", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--export", help="also write the model in solver text form")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("render", help="render a board file to SVG")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("serve", help="start the HTTP session service")
    p.add_argument("--port", type=int, help="default $PEACEABLE_PORT or 8000")
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
