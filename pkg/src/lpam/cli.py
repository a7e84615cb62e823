"""Command-line interface.

Exit codes: 0 success, 1 usage or parameter error, 2 data error,
3 exact solver budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import datasets, metrics
from .cover import DEFAULT_THETA, partition_edges
from .errors import (
    BudgetExceeded,
    DimensionTooSmall,
    InvalidK,
    InvalidParams,
    InvalidProbability,
    InvalidTheta,
    LpamError,
)
from .generators import gen_lattice, gen_planted_partition, gen_sbm
from .graph import Cover, format_cover, format_edge_list, graph_stats, read_cover, read_edge_list, write_text
from .kmedian import DEFAULT_NODE_BUDGET, DEFAULT_NUM_LOCAL

log = logging.getLogger("lpam")

EXIT_USAGE, EXIT_DATA, EXIT_BUDGET = 1, 2, 3
_PARAM_ERRORS = (InvalidK, InvalidParams, InvalidProbability, InvalidTheta, DimensionTooSmall)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunRecord:
    input: str
    k: int
    theta: float
    distance: str
    solver: str
    solver_params: dict
    seed: int
    objective: float
    medoids: list
    scores: Optional[dict] = None
    warnings: list = field(default_factory=list)
    wall_time_ms: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    def tsv_header(self) -> str:
        cols = ["theta", "k", "distance", "solver", "seed", "objective"]
        cols += list(self.scores or {})
        return "\t".join(cols)

    def tsv_row(self) -> str:
        vals = [f"{self.theta:g}", str(self.k), self.distance, self.solver, str(self.seed), repr(self.objective)]
        vals += ["nan" if v is None else f"{v:.6f}" for v in (self.scores or {}).values()]
        return "\t".join(vals)


def _solver_params(args) -> dict:
    if args.solver == "exact":
        return {"node_budget": args.node_budget}
    return {"num_local": args.num_local, "max_neighbor": args.max_neighbor}


def _partition(args, graph):
    return partition_edges(
        graph, args.k, distance=args.distance, solver=args.solver, seed=args.seed, **_solver_params(args)
    )


def _record(args, part, graph, theta, truth, t_start) -> tuple:
    cover = part.cover(graph, theta)
    scores = metrics.compare(cover, truth) if truth is not None else None
    warnings = []
    if part.distances.clamped:
        warnings.append(f"clamped {part.distances.clamped} non-positive distances to 0")
    medoid_edges = [part.lmap.source_edge_endpoints[c] for c in part.solution.medoids]
    empty = sum(1 for c in cover.memberships if not c)
    if empty:
        warnings.append(f"{empty} empty clusters")
    rec = RunRecord(
        input=str(args.input),
        k=args.k,
        theta=theta,
        distance=args.distance,
        solver=args.solver,
        solver_params=_solver_params(args),
        seed=args.seed,
        objective=part.solution.objective,
        medoids=[[graph.label(u), graph.label(v)] for u, v in medoid_edges],
        scores=scores,
        warnings=warnings,
        wall_time_ms=round(1000 * (time.perf_counter() - t_start), 3),
    )
    return cover, rec


def _load(args):
    graph = read_edge_list(args.input)
    truth = read_cover(args.truth, graph) if getattr(args, "truth", None) else None
    return graph, truth


def cmd_run(args) -> int:
    if not (0.0 <= args.theta <= 1.0):
        raise InvalidTheta(f"--theta must be in [0, 1], got {args.theta}")
    t0 = time.perf_counter()
    graph, truth = _load(args)
    part = _partition(args, graph)
    cover, rec = _record(args, part, graph, args.theta, truth, t0)
    if args.out:
        write_text(args.out, format_cover(cover, graph))
    if args.json:
        print(rec.to_json())
    else:
        print(rec.tsv_header())
        print(rec.tsv_row())
    return 0


def parse_theta_grid(text: str) -> list:
    """``start:stop:step`` with inclusive stop; values rounded to 10 decimals."""
    try:
        start, stop, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"bad --theta-grid {text!r}; expected start:stop:step") from None
    if step <= 0 or start > stop or start < 0 or stop > 1:
        raise UsageError(f"bad --theta-grid {text!r}; need 0 <= start <= stop <= 1 and step > 0")
    if step > stop - start and stop > start:
        raise UsageError(f"--theta-grid step {step} exceeds the range {stop - start:g}")
    count = int(round((stop - start) / step, 9)) + 1
    return [round(start + i * step, 10) for i in range(count)]


def _threads() -> int:
    env = os.environ.get("LPAM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"LPAM_THREADS must be an integer, got {env!r}") from None
    return min(8, os.cpu_count() or 1)


def cmd_sweep(args) -> int:
    grid = parse_theta_grid(args.theta_grid)
    t0 = time.perf_counter()
    graph, truth = _load(args)
    part = _partition(args, graph)
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(lambda th: _record(args, part, graph, th, truth, t0), grid))
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for th, (cover, _) in zip(grid, results):
            write_text(out / f"cover_theta_{th:.2f}.txt", format_cover(cover, graph))
    records = [rec for _, rec in results]
    best = None
    if truth is not None:
        scored = [r for r in records if r.scores["onmi"] is not None]
        if scored:
            best = max(scored, key=lambda r: (r.scores["onmi"], -r.theta))
    if args.json:
        for rec in records:
            print(rec.to_json())
        if best is not None:
            print(json.dumps({"best_theta": best.theta, "best_onmi": best.scores["onmi"]}, sort_keys=True))
    else:
        print(records[0].tsv_header())
        for rec in records:
            print(rec.tsv_row())
        if best is not None:
            print(f"# best theta {best.theta:g} onmi {best.scores['onmi']:.6f}")
    return 0


def cmd_generate(args) -> int:
    prefix = Path(args.output)
    truth = None
    if args.model == "lattice":
        graph = gen_lattice(args.rows, args.cols)
    elif args.model == "pp":
        graph, truth = gen_planted_partition(args.clusters, args.size, args.p_in, args.p_out, args.seed)
    elif args.model == "sbm":
        try:
            sizes = [int(s) for s in args.sizes.split(",")]
        except ValueError:
            raise UsageError(f"--sizes must be comma-separated integers, got {args.sizes!r}") from None
        graph, truth = gen_sbm(sizes, args.p_in, args.p_out, args.seed)
    else:  # karate
        edges, truth_text = datasets.karate_files()
        write_text(f"{prefix}.edges", edges)
        write_text(f"{prefix}.truth", truth_text)
        print(f"{prefix}.edges\n{prefix}.truth")
        return 0
    write_text(f"{prefix}.edges", format_edge_list(graph))
    print(f"{prefix}.edges")
    if truth is not None:
        # an edge list cannot carry isolated nodes, so they leave the truth too
        isolated = set(np.flatnonzero(graph.degrees == 0).tolist())
        if isolated:
            log.warning("%d isolated nodes omitted from the edge list and truth cover", len(isolated))
            truth = Cover.from_sets(graph.node_count, [c - isolated for c in truth.memberships])
        write_text(f"{prefix}.truth", format_cover(truth, graph))
        print(f"{prefix}.truth")
    return 0


def cmd_eval(args) -> int:
    graph = read_edge_list(args.input)
    cover = read_cover(args.cover, graph, allow_empty=True)
    truth = read_cover(args.truth, graph, allow_empty=True)
    wanted = [m.strip() for m in args.metrics.split(",") if m.strip()]
    unknown = set(wanted) - set(metrics.COMPARISONS) - set(metrics.QUALITY)
    if unknown:
        raise UsageError(f"unknown metrics: {', '.join(sorted(unknown))}")
    scores = metrics.compare(cover, truth, [m for m in wanted if m in metrics.COMPARISONS])
    scores.update(metrics.quality(graph, cover, [m for m in wanted if m in metrics.QUALITY]))
    scores = {m: scores[m] for m in wanted}
    if args.json:
        print(json.dumps(scores, sort_keys=True))
    else:
        for name, val in scores.items():
            print(f"{name}\t{'nan' if val is None else f'{val:.6f}'}")
    return 0


def cmd_stats(args) -> int:
    graph, truth = _load(args)
    print(json.dumps(asdict(graph_stats(graph, truth)), sort_keys=True))
    return 0


def cmd_largest_component(args) -> int:
    graph = read_edge_list(args.input)
    comps = graph.components()
    sub = graph.subgraph(comps[0])
    write_text(args.output, format_edge_list(sub))
    log.info("kept %d of %d nodes (%d components)", sub.node_count, graph.node_count, len(comps))
    return 0


def _add_pipeline_flags(p, theta: bool):
    p.add_argument("--input", required=True, help="edge-list file")
    p.add_argument("--k", type=int, required=True, help="number of communities")
    if theta:
        p.add_argument("--theta", type=float, default=DEFAULT_THETA)
    p.add_argument("--distance", choices=("cm", "acm"), default="acm")
    p.add_argument("--solver", choices=("exact", "clarans"), default="clarans")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--truth", help="ground-truth cover file")
    p.add_argument("--json", action="store_true", help="JSON lines instead of TSV")
    p.add_argument("--num-local", type=int, default=DEFAULT_NUM_LOCAL)
    p.add_argument("--max-neighbor", type=int, default=None)
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lpam", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="detect communities")
    _add_pipeline_flags(p, theta=True)
    p.add_argument("--out", help="write the cover here")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="detect communities over a grid of theta values")
    _add_pipeline_flags(p, theta=False)
    p.add_argument("--theta-grid", default="0.05:0.95:0.05", help="start:stop:step, stop inclusive")
    p.add_argument("--out-dir", help="write one cover file per theta here")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("generate", help="write a synthetic or bundled instance")
    gen = p.add_subparsers(dest="model", required=True)
    g = gen.add_parser("lattice")
    g.add_argument("--rows", type=int, default=8)
    g.add_argument("--cols", type=int, default=8)
    for name in ("pp", "sbm"):
        g = gen.add_parser(name)
        if name == "pp":
            g.add_argument("--clusters", type=int, required=True)
            g.add_argument("--size", type=int, required=True)
        else:
            g.add_argument("--sizes", required=True, help="comma-separated block sizes")
        g.add_argument("--p-in", type=float, required=True)
        g.add_argument("--p-out", type=float, required=True)
        g.add_argument("--seed", type=int, default=0)
    gen.add_parser("karate")
    for g in gen.choices.values():
        g.add_argument("--output", required=True, help="path prefix; writes PREFIX.edges and PREFIX.truth")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("eval", help="score a cover against ground truth")
    p.add_argument("--input", required=True)
    p.add_argument("--cover", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--metrics", default="onmi,omega,f1")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("stats", help="descriptive statistics of a graph")
    p.add_argument("--input", required=True)
    p.add_argument("--truth")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("largest-component", help="keep only the largest connected component")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_largest_component)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, *_PARAM_ERRORS) as exc:
        print(f"lpam: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"lpam: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (LpamError, OSError) as exc:
        print(f"lpam: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
