"""Command-line front end.

Subcommands: ``stats`` (dataset summary), ``extract`` (regions and their
distributions), ``count`` (per-vertex clique counts), ``run`` (one private
release experiment), ``sweep`` (a grid of them). Flags mirror the
experiment config; ``--config FILE`` loads the same fields from JSON with
flags taking precedence. Contract violations exit nonzero.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields

from . import experiments
from .cohesion import CohesionParams, minimal_p_cohesion
from .counting import split_counts, total_count_report
from .experiments import ExperimentConfig, METHODS
from .graph import load_edge_list


def _add_config_flags(sub: argparse.ArgumentParser, with_dataset: bool = True) -> None:
    if with_dataset:
        sub.add_argument("dataset", nargs="?", help="edge-list file")
    sub.add_argument("--config", help="JSON file with ExperimentConfig fields")
    sub.add_argument("--method", choices=METHODS)
    sub.add_argument("--p", type=float)
    sub.add_argument("--eps", dest="epsilon", type=float)
    sub.add_argument("--eps1", dest="epsilon1", type=float)
    sub.add_argument("--delta", type=float)
    sub.add_argument("--h", type=int)
    sub.add_argument("--k", type=int)
    sub.add_argument("--runs", type=int)
    sub.add_argument("--seed", type=int)
    sub.add_argument("--output", help="CSV output path")
    sub.add_argument("--freeze-phase1", action="store_true", default=None,
                     help="draw the phase-1 scale once and reuse it across runs")
    sub.add_argument("--noiseless", action="store_true", default=None,
                     help="calibration control: release exact counts, no noise")


def _config_from(args: argparse.Namespace) -> ExperimentConfig:
    values: dict = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            values.update(json.load(fh))
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown config fields: {sorted(unknown)}")
    for name in known:
        flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
    if not values.get("dataset"):
        raise ValueError("a dataset path is required (argument or config file)")
    return ExperimentConfig(**values)


def _cmd_stats(args: argparse.Namespace) -> int:
    g = load_edge_list(args.dataset)
    rep = g.load_report
    print(f"dataset: {args.dataset}")
    print(f"vertices: {g.n}")
    print(f"edges: {g.m}")
    print(f"average degree: {g.average_degree():.2f}")
    print(f"max degree: {g.max_degree()}")
    if rep.self_loops_dropped or rep.duplicate_edges_dropped:
        print(f"dropped at load: {rep.self_loops_dropped} self-loops, "
              f"{rep.duplicate_edges_dropped} duplicate edges")
    if rep.header_vertices_added:
        print(f"isolated vertices padded from header: {rep.header_vertices_added}")
    return 0


def _cmd_extract(args: argparse.Namespace) -> int:
    g = load_edge_list(args.dataset)
    method = args.method or experiments.METHOD_COHESION
    p = args.p if args.p is not None else 0.1
    if method == experiments.METHOD_COHESION:
        params = CohesionParams(p=p)
        regions = [minimal_p_cohesion(g, q, params, strict_refresh=args.strict_refresh).members
                   for q in g.vertices()]
    else:
        regions = experiments.extract_regions(g, method, p)
    stats = experiments.stats_report(g, regions)
    print(f"method={method} p={p:g} vertices={g.n}")
    s = stats.sizes
    print(f"size quantiles: min={s.minimum:g} p25={s.p25:g} median={s.median:g} "
          f"p75={s.p75:g} max={s.maximum:g}")
    if stats.densities is not None:
        d = stats.densities
        print(f"density quantiles: min={d.minimum:.4f} p25={d.p25:.4f} "
              f"median={d.median:.4f} p75={d.p75:.4f} max={d.maximum:.4f}")
    print(f"singleton regions: {stats.singletons}")
    if args.output:
        _write_region_csv(args.output, g, regions)
        print(f"per-vertex regions written to {args.output}")
    if args.summary_output:
        with open(args.summary_output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(experiments.stats_csv(stats))
        print(f"quantile summary written to {args.summary_output}")
    return 0


def _write_region_csv(path: str, g, regions) -> None:
    import csv

    from .graph import density, induced

    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["vertex", "label", "size", "density"])
        for v in g.vertices():
            r = regions[v]
            dens = density(induced(g, r)) if len(r) >= 2 else ""
            w.writerow([v, g.labels[v], len(r), dens])


def _cmd_count(args: argparse.Namespace) -> int:
    g = load_edge_list(args.dataset)
    k = args.k or 3
    method = args.method or experiments.METHOD_COHESION
    p = args.p if args.p is not None else 0.1
    regions = experiments.extract_regions(g, method, p)
    counts = [split_counts(g, v, regions[v], k) for v in g.vertices()]
    total = total_count_report(counts, k)
    if args.output:
        import csv

        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["vertex", "label", "k", "total", "inside", "outside"])
            for c in counts:
                w.writerow([c.vertex, g.labels[c.vertex], c.k, c.total, c.inside, c.outside])
        print(f"per-vertex counts written to {args.output}")
    print(f"sum of per-vertex {k}-clique counts: {total}")
    print(f"distinct {k}-cliques: {total // k}")
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    result = experiments.run_experiment(cfg)
    for line in experiments.summary_lines(result):
        print(line)
    if cfg.output:
        print(f"per-run rows written to {cfg.output}")
    else:
        sys.stdout.write(experiments.render_csv([result]))
    return 0


_GRID_ALIASES = {"eps": "epsilon", "eps1": "epsilon1"}


def _parse_grid(entries: list[str]) -> dict[str, list]:
    grid: dict[str, list] = {}
    for entry in entries:
        if "=" not in entry:
            raise ValueError(f"--vary expects NAME=V1,V2,... got {entry!r}")
        name, _, values = entry.partition("=")
        name = _GRID_ALIASES.get(name.strip(), name.strip())
        parts = [v.strip() for v in values.split(",") if v.strip()]
        if not parts:
            raise ValueError(f"--vary {name} has no values")
        if name == "method":
            grid[name] = parts
        elif name in {"h", "k"}:
            grid[name] = [int(v) for v in parts]
        else:
            grid[name] = [float(v) for v in parts]
    return grid


def _cmd_sweep(args: argparse.Namespace) -> int:
    base = _config_from(args)
    grid = _parse_grid(args.vary or [])
    output = base.output
    results = experiments.sweep(base, grid, output=output)
    for result in results:
        cfg = result.config
        kind = "mean MRE" if result.truth > 0 else "mean abs error"
        print(f"method={cfg.method} p={cfg.p:g} eps={cfg.epsilon:g} "
              f"eps1={cfg.epsilon1:g} h={cfg.h} k={cfg.k} -> {kind}={result.mean_mre:.6g}")
    if output:
        print(f"{sum(len(r.records) for r in results)} rows written to {output}")
    else:
        sys.stdout.write(experiments.render_csv(results))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcohesion",
        description="Critical-connection regions and private k-clique count release.")
    subs = parser.add_subparsers(dest="command", required=True)

    p_stats = subs.add_parser("stats", help="dataset size and degree summary")
    p_stats.add_argument("dataset")
    p_stats.set_defaults(func=_cmd_stats)

    p_extract = subs.add_parser("extract", help="per-vertex protection regions")
    p_extract.add_argument("dataset")
    p_extract.add_argument("--method", choices=METHODS)
    p_extract.add_argument("--p", type=float)
    p_extract.add_argument("--strict-refresh", action="store_true",
                           help="recompute all candidate scores every step")
    p_extract.add_argument("--output", help="per-vertex CSV path")
    p_extract.add_argument("--summary-output", help="quantile-summary CSV path")
    p_extract.set_defaults(func=_cmd_extract)

    p_count = subs.add_parser("count", help="per-vertex k-clique counts")
    p_count.add_argument("dataset")
    p_count.add_argument("--k", type=int)
    p_count.add_argument("--method", choices=METHODS)
    p_count.add_argument("--p", type=float)
    p_count.add_argument("--output", help="per-vertex CSV path")
    p_count.set_defaults(func=_cmd_count)

    p_run = subs.add_parser("run", help="one private release experiment")
    _add_config_flags(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = subs.add_parser("sweep", help="experiments over a parameter grid")
    _add_config_flags(p_sweep)
    p_sweep.add_argument("--vary", action="append", metavar="NAME=V1,V2,...",
                         help="grid values, e.g. --vary p=0.1,0.3 --vary eps=1,5,10")
    p_sweep.set_defaults(func=_cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
