"""Experiment orchestration: region extraction, private count release,
error measurement, parameter sweeps, and CSV emission.

The collector's published statistic is the sum of per-vertex responses
(each k-clique counted once per member, in truth and in expectation in
the noisy sum); relative error is measured on that aggregate. When the
true aggregate is zero the error column holds the absolute error and
the ``mre_kind`` column flags it.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import privacy
from .cohesion import CohesionParams, elv, minimal_p_cohesion
from .counting import split_counts, total_count_report
from .graph import Graph, load_edge_list
from .privacy import BudgetReport, LaplaceStreams, PrivacyParams, budget_check

METHOD_COHESION = "p-cohesion"
METHOD_ELV = "elv"
METHODS = (METHOD_COHESION, METHOD_ELV)

CSV_COLUMNS = ("method", "p", "eps", "eps1", "h", "k", "run",
               "reported", "truth", "mre", "mre_kind")


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: dataset, region method, budgets, and averaging."""

    dataset: str
    method: str = METHOD_COHESION
    p: float = 0.1
    epsilon: float = 10.0
    epsilon1: float | None = None  # defaults to 0.1 * epsilon
    delta: float | None = None     # defaults to 1 / n, resolved after loading
    h: int = 3
    k: int = 3
    runs: int = 100
    seed: int = 0
    output: str | None = None
    freeze_phase1: bool = False
    noiseless: bool = False  # calibration control: release the exact counts

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.k not in (3, 4):
            raise ValueError(f"k must be 3 or 4, got {self.k}")
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")

    def resolve(self, n: int) -> "ExperimentConfig":
        """Fill in per-graph defaults so the echoed config re-runs exactly."""
        eps1 = self.epsilon1 if self.epsilon1 is not None else 0.1 * self.epsilon
        delta = self.delta if self.delta is not None else 1.0 / n
        return replace(self, epsilon1=eps1, delta=delta)

    def privacy_params(self) -> PrivacyParams:
        if self.epsilon1 is None or self.delta is None:
            raise ValueError("config must be resolved against a graph first")
        return PrivacyParams(epsilon=self.epsilon, epsilon1=self.epsilon1,
                             delta=self.delta, h=self.h, k=self.k)


@dataclass(frozen=True)
class RunRecord:
    run: int
    reported: float
    mre: float
    mre_kind: str  # "relative", or "absolute" when the true aggregate is 0


@dataclass(frozen=True)
class DistributionSummary:
    count: int
    minimum: float
    p25: float
    median: float
    p75: float
    maximum: float

    @classmethod
    def of(cls, values: Sequence[float]) -> "DistributionSummary | None":
        if not values:
            return None
        qs = np.quantile(np.asarray(values, dtype=float), [0.0, 0.25, 0.5, 0.75, 1.0])
        return cls(count=len(values), minimum=float(qs[0]), p25=float(qs[1]),
                   median=float(qs[2]), p75=float(qs[3]), maximum=float(qs[4]))


@dataclass(frozen=True)
class RegionStats:
    """Size/density distributions of the protection regions.

    Densities skip single-vertex regions (undefined there); those are
    carried in ``singletons`` instead.
    """

    sizes: DistributionSummary
    densities: DistributionSummary | None
    singletons: int


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    truth: int
    records: tuple[RunRecord, ...]
    mean_mre: float
    budget: BudgetReport
    region_stats: RegionStats


def extract_regions(g: Graph, method: str, p: float,
                    strict_refresh: bool = False) -> list[frozenset[int]]:
    """Per-vertex protection regions for the chosen method."""
    if method == METHOD_COHESION:
        params = CohesionParams(p=p)
        return [minimal_p_cohesion(g, q, params, strict_refresh=strict_refresh).members
                for q in g.vertices()]
    if method == METHOD_ELV:
        return [elv(g, q).members for q in g.vertices()]
    raise ValueError(f"method must be one of {METHODS}, got {method!r}")


def region_stats(g: Graph, regions: Sequence[frozenset[int]]) -> RegionStats:
    from .graph import density, induced

    sizes = [float(len(r)) for r in regions]
    densities = [density(induced(g, r)) for r in regions if len(r) >= 2]
    singletons = sum(1 for r in regions if len(r) == 1)
    return RegionStats(sizes=DistributionSummary.of(sizes),
                       densities=DistributionSummary.of(densities),
                       singletons=singletons)


def stats_report(g: Graph, regions: Sequence[frozenset[int]]) -> RegionStats:
    """Distribution summary of region sizes and densities."""
    return region_stats(g, regions)


def stats_csv(stats: RegionStats) -> str:
    """Quantile summary as CSV; the density row is empty for all-singleton
    region sets, with the singleton count carried on every row."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["metric", "count", "min", "p25", "median", "p75", "max", "singletons"])
    s = stats.sizes
    writer.writerow(["size", s.count, repr(s.minimum), repr(s.p25), repr(s.median),
                     repr(s.p75), repr(s.maximum), stats.singletons])
    d = stats.densities
    if d is None:
        writer.writerow(["density", 0, "", "", "", "", "", stats.singletons])
    else:
        writer.writerow(["density", d.count, repr(d.minimum), repr(d.p25), repr(d.median),
                         repr(d.p75), repr(d.maximum), stats.singletons])
    return buf.getvalue()


def _noise_scale_for(g: Graph, regions: Sequence[frozenset[int]],
                     params: PrivacyParams, streams: LaplaceStreams) -> float:
    """Phase-1 scale; order-4 counting reuses the order-3 estimate rescaled."""
    if params.k == 4:
        base = replace(params, k=3)
        lam3 = privacy.phase1(g, regions, base, streams).noise_scale
        return privacy.lambda_for_k4(lam3)
    return privacy.phase1(g, regions, params, streams).noise_scale


def run_experiment(cfg: ExperimentConfig, graph: Graph | None = None,
                   regions: Sequence[frozenset[int]] | None = None) -> ExperimentResult:
    """Execute one experiment end to end.

    Loads the dataset (unless a graph is supplied), extracts one region
    per vertex, counts cliques split by region, then repeats the
    two-phase release ``runs`` times, re-drawing both phases each run
    unless ``freeze_phase1`` holds the scale fixed at the run-0 draw.
    """
    g = graph if graph is not None else load_edge_list(cfg.dataset)
    cfg = cfg.resolve(g.n)
    params = cfg.privacy_params()
    budget = budget_check(params)

    if regions is None:
        regions = extract_regions(g, cfg.method, cfg.p)
    counts = [split_counts(g, v, regions[v], cfg.k) for v in g.vertices()]
    truth = total_count_report(counts, cfg.k)

    records = []
    for run in range(cfg.runs):
        if cfg.noiseless:
            scale = 0.0
        else:
            phase1_streams = LaplaceStreams(cfg.seed, run=0 if cfg.freeze_phase1 else run)
            scale = _noise_scale_for(g, regions, params, phase1_streams)
        responses = privacy.phase2(counts, scale, LaplaceStreams(cfg.seed, run=run))
        reported = sum(r.reported for r in responses)
        if truth > 0:
            records.append(RunRecord(run=run, reported=reported,
                                     mre=abs(reported - truth) / truth, mre_kind="relative"))
        else:
            records.append(RunRecord(run=run, reported=reported,
                                     mre=abs(reported - truth), mre_kind="absolute"))

    mean_mre = math.fsum(r.mre for r in records) / len(records)
    result = ExperimentResult(config=cfg, truth=truth, records=tuple(records),
                              mean_mre=mean_mre, budget=budget,
                              region_stats=region_stats(g, regions))
    if cfg.output:
        write_results_csv(cfg.output, [result])
    return result


def _point_seed(master: int, index: int) -> int:
    """Stable per-point seed derived from the sweep's master seed."""
    return int(np.random.SeedSequence(entropy=[master & (2**63 - 1), index])
               .generate_state(1, np.uint64)[0])


def sweep(base: ExperimentConfig, grid: dict[str, Sequence] | None = None,
          output: str | None = None) -> list[ExperimentResult]:
    """Run one experiment per grid point, in stable grid order.

    The dataset is loaded once and regions are shared between points
    with the same method and p. Each point gets its own seed derived
    from the base seed and the point index.
    """
    grid = dict(grid or {})
    for key in grid:
        if key not in {"method", "p", "epsilon", "epsilon1", "h", "k"}:
            raise ValueError(f"cannot sweep over {key!r}")
        if not grid[key]:
            raise ValueError(f"empty grid for {key!r}")
    g = load_edge_list(base.dataset)
    region_cache: dict[tuple[str, float], list[frozenset[int]]] = {}
    results = []
    names = list(grid.keys())
    for index, values in enumerate(itertools.product(*(grid[k] for k in names))):
        cfg = replace(base, output=None, seed=_point_seed(base.seed, index),
                      **dict(zip(names, values)))
        key = (cfg.method, cfg.p)
        if key not in region_cache:
            region_cache[key] = extract_regions(g, cfg.method, cfg.p)
        results.append(run_experiment(cfg, graph=g, regions=region_cache[key]))
    if output:
        write_results_csv(output, results)
    return results


# -- CSV emission ------------------------------------------------------------


def result_rows(result: ExperimentResult) -> list[dict[str, object]]:
    cfg = result.config
    rows = []
    for rec in result.records:
        rows.append({
            "method": cfg.method, "p": repr(cfg.p), "eps": repr(cfg.epsilon),
            "eps1": repr(cfg.epsilon1), "h": cfg.h, "k": cfg.k, "run": rec.run,
            "reported": repr(rec.reported), "truth": result.truth,
            "mre": repr(rec.mre), "mre_kind": rec.mre_kind,
        })
    return rows


def render_csv(results: Iterable[ExperimentResult]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for result in results:
        writer.writerows(result_rows(result))
    return buf.getvalue()


def write_results_csv(path: str | Path, results: Iterable[ExperimentResult]) -> None:
    Path(path).write_text(render_csv(results), encoding="utf-8", newline="\n")


def summary_lines(result: ExperimentResult) -> list[str]:
    cfg = result.config
    stats = result.region_stats
    lines = [
        f"method={cfg.method} p={cfg.p:g} eps={cfg.epsilon:g} eps1={cfg.epsilon1:g} "
        f"h={cfg.h} k={cfg.k} runs={cfg.runs} seed={cfg.seed}",
        f"privacy claim: {result.budget.claim}",
        f"true aggregate count: {result.truth}",
        f"mean {'relative' if result.truth > 0 else 'absolute'} error over "
        f"{cfg.runs} runs: {result.mean_mre:.6g}",
        f"region sizes: min={stats.sizes.minimum:g} median={stats.sizes.median:g} "
        f"max={stats.sizes.maximum:g}",
    ]
    if stats.densities is not None:
        lines.append(f"region densities: min={stats.densities.minimum:.4f} "
                     f"median={stats.densities.median:.4f} max={stats.densities.maximum:.4f} "
                     f"(singletons skipped: {stats.singletons})")
    else:
        lines.append(f"region densities: none (all {stats.singletons} regions are singletons)")
    return lines
