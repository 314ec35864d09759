"""Command-line interface: solve / generate / check / heuristic / oracle."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from . import __version__
from .graphs import GraphError, Point, edge, is_valid_completion
from .heuristics import mdo_completion
from .instances import (
    InstanceError,
    gen_caveman,
    gen_grid,
    gen_queen,
    load_instance,
    save_instance,
)
from .oracle import EnumerationBudget, OracleBudgetError, brute_force_mccp
from .solver import OPTIMAL, SolverConfig, solve


def _add_solver_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--time-limit", type=float, default=None, metavar="S",
                    help="wall-clock limit in seconds")
    sp.add_argument("--node-limit", type=int, default=None, metavar="N")
    sp.add_argument("--delta", type=float, default=0.5,
                    help="threshold for rounding fractional points (default 0.5)")
    sp.add_argument("--cuts", default="i1,i2,i3,i4", metavar="LIST",
                    help="comma-separated cut families to enable (default all)")
    sp.add_argument("--exact-i2", action="store_true",
                    help="run the exact I2 separator at fractional points")
    sp.add_argument("--exact-i3", action="store_true",
                    help="run the exact I3 separator at fractional points")
    sp.add_argument("--max-cycles", type=int, default=10, metavar="N",
                    help="chordless cycles harvested per separation call")
    sp.add_argument("--all-positions", action="store_true",
                    help="emit every I2/I4 position per cycle, not one")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json-out", default=None, metavar="PATH",
                    help="also write the JSON result to this file")


def _solver_config(args) -> SolverConfig:
    families = tuple(f.strip().upper() for f in args.cuts.split(",") if f.strip())
    return SolverConfig(
        delta=args.delta,
        families_enabled=families,
        exact_i2=args.exact_i2,
        exact_i3=args.exact_i3,
        max_cycles_per_call=args.max_cycles,
        time_limit_s=args.time_limit,
        node_limit=args.node_limit,
        seed=args.seed,
        emit_all_positions=args.all_positions,
    )


def cmd_solve(args) -> int:
    g = load_instance(args.instance)
    cfg = _solver_config(args)
    manifest = {
        "command": "solve",
        "instance": args.instance,
        "config": cfg.as_dict(),
        "version": __version__,
        "seed": args.seed,
        "started_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }
    result = solve(g, cfg)
    payload = {
        "instance": args.instance,
        "n": g.n,
        "m": g.m,
        "mc": g.mc,
        "status": result.status,
        "lb": result.lower_bound,
        "ub": result.upper_bound,
        "fill_edges": sorted([list(g.fill_pair(i)) for i in result.best_fill]),
        "nodes": result.nodes,
        "cuts": {fam.lower(): result.cuts_by_family.get(fam, 0)
                 for fam in ("I1", "I2", "I3", "I4")},
        "time_s": round(result.wall_time_s, 3),
        "config": cfg.as_dict(),
        "manifest": manifest,
    }
    text = json.dumps(payload, indent=2)
    print(text)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
    return 0 if result.status == OPTIMAL else 2


def cmd_generate(args) -> int:
    if args.family == "grid":
        g = gen_grid(args.p1, args.p2)
        default_name = f"grid{args.p1}_{args.p2}.el"
    elif args.family == "queen":
        g = gen_queen(args.p1, args.p2)
        default_name = f"queen{args.p1}_{args.p2}.el"
    else:
        g = gen_caveman(args.p1, args.p2, args.gamma, seed=args.seed)
        default_name = f"caveman{args.p1}_{args.p2}_{args.gamma}_s{args.seed}.el"
    path = args.out or default_name
    save_instance(g, path, fmt=args.format)
    print(f"{g.n} {g.m}")
    print(f"wrote {path}", file=sys.stderr)
    return 0


def _read_completion(path: str, g) -> frozenset[int]:
    fill = set()
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if len(fields) != 2:
                raise InstanceError(f"{path}:{lineno}: expected `u v`, got {line!r}")
            u, v = int(fields[0]), int(fields[1])
            if g.has_edge(u, v):
                raise InstanceError(
                    f"{path}:{lineno}: ({u}, {v}) is already an edge of the graph"
                )
            try:
                fill.add(g.fill_index(u, v))
            except GraphError:
                raise InstanceError(
                    f"{path}:{lineno}: ({u}, {v}) is not a fill edge"
                ) from None
    return frozenset(fill)


def cmd_check(args) -> int:
    g = load_instance(args.instance)
    fill = _read_completion(args.completion, g)
    ok = is_valid_completion(g, fill)
    verdict = "valid" if ok else "invalid"
    print(f"{verdict} chordal completion of size {len(fill)}")
    return 0 if ok else 1


def cmd_heuristic(args) -> int:
    g = load_instance(args.instance)
    fill = mdo_completion(g)
    print(f"size {len(fill)}")
    for i in sorted(fill):
        u, v = g.fill_pair(i)
        print(f"{u} {v}")
    return 0


def cmd_oracle(args) -> int:
    g = load_instance(args.instance)
    budget = EnumerationBudget(max_subsets_evaluated=args.budget)
    fill = brute_force_mccp(g, budget)
    print(f"optimum {len(fill)}")
    for i in sorted(fill):
        u, v = g.fill_pair(i)
        print(f"{u} {v}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fillin",
        description="Exact solver for the minimum chordal completion problem",
    )
    parser.add_argument("--log-level", default="warning",
                        choices=["debug", "info", "warning", "error"])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="solve an instance to optimality")
    sp.add_argument("instance", help="path to a .col (DIMACS) or edge-list file")
    _add_solver_flags(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("generate", help="generate a benchmark instance")
    gen_sub = sp.add_subparsers(dest="family", required=True)
    for fam, helptext in (("grid", "grid graph"), ("queen", "queen graph")):
        fp = gen_sub.add_parser(fam, help=helptext)
        fp.add_argument("p1", type=int, help="rows")
        fp.add_argument("p2", type=int, help="columns")
        fp.add_argument("--out", default=None)
        fp.add_argument("--format", choices=["el", "col"], default=None)
        fp.add_argument("--seed", type=int, default=0)
        fp.set_defaults(func=cmd_generate, family=fam)
    fp = gen_sub.add_parser("caveman", help="relaxed caveman graph")
    fp.add_argument("p1", type=int, help="clique size")
    fp.add_argument("p2", type=int, help="number of cliques")
    fp.add_argument("gamma", type=float, help="rewiring probability in (0, 1)")
    fp.add_argument("--out", default=None)
    fp.add_argument("--format", choices=["el", "col"], default=None)
    fp.add_argument("--seed", type=int, default=0)
    fp.set_defaults(func=cmd_generate, family="caveman")

    sp = sub.add_parser("check", help="validate a completion file")
    sp.add_argument("instance")
    sp.add_argument("completion", help="file with one fill edge `u v` per line")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("heuristic", help="minimum-degree-ordering completion")
    sp.add_argument("instance")
    sp.set_defaults(func=cmd_heuristic)

    sp = sub.add_parser("oracle", help="brute-force optimum (small instances)")
    sp.add_argument("instance")
    sp.add_argument("--budget", type=int, default=10**7,
                    help="maximum fill subsets to enumerate")
    sp.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level.upper()),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (InstanceError, GraphError, OracleBudgetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
