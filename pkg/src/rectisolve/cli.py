"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 guard exceeded, 4 internal
infeasibility (a solver bug, never expected on valid instances).
"""

from __future__ import annotations

import argparse
import sys

from .bench import run_bench
from .errors import GuardExceeded, InputError, InternalInfeasibleError
from .generate import gen_instance
from .geometry import parse_instance, write_instance
from .oracle import steiner_oracle, tsp_bruteforce
from .render import render_svg
from .solution import format_solution, parse_solution, resolve_edges
from .states import count_states, encode_state, enumerate_states, render_state
from .steiner import solve_steiner
from .tsp import solve_tsp


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok]


def _load_instance(args) -> object:
    return parse_instance(_read_text(args.input))


def _print_stats(stats, engine: str):
    print(
        f"stats layers={stats.layer_count} max_states={stats.max_layer_states} "
        f"expansions={stats.total_expansions} wall_ms={stats.wall_ms:.1f} "
        f"engine={engine}"
    )


def _cmd_solve_tsp(args) -> int:
    instance = _load_instance(args)
    sol = solve_tsp(
        instance,
        engine=args.engine,
        trace=not args.no_trace,
        debug=args.debug,
        threads=args.threads,
    )
    print(f"length {sol.length}")
    if sol.tour is not None:
        print("tour " + " ".join(f"({p.x},{p.y})" for p in sol.tour))
    _print_stats(sol.stats, sol.engine)
    if sol.subgraph is not None:
        text = format_solution(list(sol.subgraph.edges), sol.length)
        if args.output:
            _write_text(args.output, text)
        if args.svg:
            _write_text(args.svg, render_svg(instance, list(sol.subgraph.edges)))
    return 0


def _cmd_solve_steiner(args) -> int:
    instance = _load_instance(args)
    sol = solve_steiner(
        instance,
        engine=args.engine,
        trace=not args.no_trace,
        debug=args.debug,
        threads=args.threads,
        force_adjacent_terminals=args.force_adjacent_terminals,
    )
    print(f"length {sol.length}")
    _print_stats(sol.stats, sol.engine)
    if sol.tree is not None:
        text = format_solution(list(sol.tree.edges), sol.length)
        if args.output:
            _write_text(args.output, text)
        if args.svg:
            _write_text(args.svg, render_svg(instance, list(sol.tree.edges)))
    return 0


def _cmd_oracle_tsp(args) -> int:
    print(tsp_bruteforce(_load_instance(args)))
    return 0


def _cmd_oracle_steiner(args) -> int:
    print(steiner_oracle(_load_instance(args)))
    return 0


def _cmd_states(args) -> int:
    states = sorted(enumerate_states(args.h, args.problem), key=encode_state)
    text = "\n".join(render_state(s) for s in states) + "\n"
    _write_text(args.output, text)
    return 0


def _cmd_count(args) -> int:
    print(count_states(args.h, args.problem))
    return 0


def _cmd_gen(args) -> int:
    xmax = args.xmax if args.xmax is not None else max(4 * args.n, args.n)
    ymax = args.ymax if args.ymax is not None else max(4 * args.h, args.h)
    instance = gen_instance(args.n, args.h, xmax, ymax, args.seed)
    _write_text(args.output, write_instance(instance))
    return 0


def _cmd_bench(args) -> int:
    configs = [
        (problem, n, h)
        for problem in args.problem
        for n in args.n
        for h in args.h
        if h <= n
    ]
    if not configs:
        raise InputError("bench configuration is empty (need h <= n)")
    csv = run_bench(
        configs,
        instances=args.instances,
        seed_base=args.seed_base,
        xmax=args.xmax,
        ymax=args.ymax,
        engine=args.engine,
    )
    _write_text(args.csv, csv)
    return 0


def _cmd_render(args) -> int:
    instance = _load_instance(args)
    edges = None
    if args.solution:
        _, raw = parse_solution(_read_text(args.solution))
        edges = resolve_edges(instance, raw)
    _write_text(args.svg, render_svg(instance, edges))
    return 0


def _add_solver_flags(p: argparse.ArgumentParser):
    p.add_argument("--input", required=True, help="instance file ('-' = stdin)")
    p.add_argument("--output", help="write the solution edge list here")
    p.add_argument("--svg", help="render the solution to this SVG file")
    p.add_argument("--no-trace", action="store_true",
                   help="cost-only rolling mode (no solution reconstruction)")
    p.add_argument("--engine", default="auto", choices=["auto", "dict", "vector"])
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--debug", action="store_true",
                   help="validate every generated state (dict engine)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rectisolve",
        description="Exact rectilinear TSP and Steiner tree solvers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-tsp", help="exact minimum rectilinear tour")
    _add_solver_flags(p)
    p.set_defaults(fn=_cmd_solve_tsp)

    p = sub.add_parser("solve-steiner", help="exact minimum rectilinear Steiner tree")
    _add_solver_flags(p)
    p.add_argument("--force-adjacent-terminals", action="store_true",
                   help="join adjacent terminals by their direct segment")
    p.set_defaults(fn=_cmd_solve_steiner)

    p = sub.add_parser("oracle-tsp", help="brute-force tour length (small n)")
    p.add_argument("--input", required=True)
    p.set_defaults(fn=_cmd_oracle_tsp)

    p = sub.add_parser("oracle-steiner", help="Dreyfus-Wagner tree length (small n)")
    p.add_argument("--input", required=True)
    p.set_defaults(fn=_cmd_oracle_steiner)

    p = sub.add_parser("states", help="enumerate all frontier states for h rows")
    p.add_argument("--problem", required=True, choices=["tsp", "steiner"])
    p.add_argument("--h", required=True, type=int)
    p.add_argument("--output")
    p.set_defaults(fn=_cmd_states)

    p = sub.add_parser("count", help="closed-form state count for h rows")
    p.add_argument("--problem", required=True, choices=["tsp", "steiner"])
    p.add_argument("--h", required=True, type=int)
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("gen", help="generate a seeded random instance")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--h", required=True, type=int)
    p.add_argument("--xmax", type=int)
    p.add_argument("--ymax", type=int)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--output")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("bench", help="timed seeded runs, CSV output")
    p.add_argument("--problem", default=["tsp"], type=lambda s: s.split(","),
                   help="comma list from {tsp,steiner}")
    p.add_argument("--n", default=[50], type=_int_list, help="comma list")
    p.add_argument("--h", default=[4], type=_int_list, help="comma list")
    p.add_argument("--instances", type=int, default=3)
    p.add_argument("--seed-base", type=int, default=1)
    p.add_argument("--xmax", type=int)
    p.add_argument("--ymax", type=int)
    p.add_argument("--engine", default="auto", choices=["auto", "dict", "vector"])
    p.add_argument("--csv", help="write the CSV here (default stdout)")
    p.set_defaults(fn=_cmd_bench)

    p = sub.add_parser("render", help="render an instance (and solution) to SVG")
    p.add_argument("--input", required=True)
    p.add_argument("--solution", help="edge-list file produced by solve --output")
    p.add_argument("--svg", required=True)
    p.set_defaults(fn=_cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return 3
    except InternalInfeasibleError as exc:
        print(f"internal infeasibility (bug): {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
