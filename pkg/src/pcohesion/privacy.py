"""Two-phase decentralized noise calibration and count release.

Phase 1 privately estimates a global sensitivity bound for per-vertex
k-clique counts restricted to each participant's protection region:
every participant reports a noisy upper bound built from its region
degree, the top ``h`` reporters refine theirs with a noisy maximum
common-neighbor count, and the worst surviving bound fixes the Laplace
scale. Phase 2 has each participant release its count with only the
inside-region part perturbed at that scale.

All noise flows through keyed counter-mode streams so results are
reproducible for a master seed no matter how work is scheduled, and a
zero/sequence stub can replace the stream for exact arithmetic tests.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np
from numpy.random import Generator, Philox

from .counting import CliqueCounts, max_common_neighbors_in
from .graph import Graph

logger = logging.getLogger(__name__)

# Substream tags: one namespace per kind of draw a participant makes.
TAG_DEGREE = 1
TAG_COMMON = 2
TAG_COUNT = 3


def laplace_noise(scale: float, rng: Generator, size: int | None = None):
    """Zero-centered Laplace draw(s) at the given scale.

    ``scale == 0`` degenerates to exactly zero noise; negative scales are
    rejected.
    """
    if scale < 0:
        raise ValueError(f"laplace scale must be >= 0, got {scale}")
    if scale == 0:
        return 0.0 if size is None else np.zeros(size)
    return rng.laplace(0.0, scale, size)


class NoiseSource(Protocol):
    def laplace(self, scale: float, vertex: int, tag: int) -> float: ...


class LaplaceStreams:
    """Laplace noise keyed by (master seed, run, vertex, tag).

    Each draw comes from its own counter-mode substream, so per-vertex
    work can be reordered or parallelized without changing any output.
    """

    def __init__(self, seed: int, run: int = 0):
        self._key = seed & ((1 << 128) - 1)
        self._run = run

    def laplace(self, scale: float, vertex: int, tag: int) -> float:
        if scale < 0:
            raise ValueError(f"laplace scale must be >= 0, got {scale}")
        if scale == 0:
            return 0.0
        gen = Generator(Philox(key=self._key, counter=[0, tag, vertex, self._run]))
        return float(gen.laplace(0.0, scale))


class ZeroNoise:
    """Stub source: every draw is exactly zero (for arithmetic tests)."""

    def laplace(self, scale: float, vertex: int = 0, tag: int = 0) -> float:
        if scale < 0:
            raise ValueError(f"laplace scale must be >= 0, got {scale}")
        return 0.0


class SequenceNoise:
    """Stub source replaying a recorded sequence of draws."""

    def __init__(self, values: Sequence[float]):
        self._values = list(values)
        self._next = 0

    def laplace(self, scale: float, vertex: int = 0, tag: int = 0) -> float:
        if self._next >= len(self._values):
            raise ValueError("sequence noise exhausted")
        value = self._values[self._next]
        self._next += 1
        return value


@dataclass(frozen=True)
class PrivacyParams:
    """Budget split and mechanism knobs for one release.

    ``epsilon1`` funds the sensitivity estimate, the remainder funds the
    count release; ``h`` participants get the refined bound; ``delta``
    is split evenly over the ``2h + 2`` phase-1 estimates.
    """

    epsilon: float
    epsilon1: float
    delta: float
    h: int
    k: int

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")
        if not 0 < self.epsilon1 < self.epsilon:
            raise ValueError(
                f"epsilon1 must lie in (0, epsilon): got {self.epsilon1} with epsilon={self.epsilon}")
        if not 0 < self.delta < 1:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if self.h < 1:
            raise ValueError(f"h must be >= 1, got {self.h}")
        if not 3 <= self.k <= 6:
            raise ValueError(f"clique order must be in [3, 6], got {self.k}")

    @property
    def epsilon2(self) -> float:
        return self.epsilon - self.epsilon1

    @property
    def lambda_degree(self) -> float:
        return 2.0 / (0.5 * self.epsilon1)

    @property
    def lambda_common(self) -> float:
        return self.h / (0.5 * self.epsilon1)

    @property
    def delta_prime(self) -> float:
        return self.delta / (2 * self.h + 2)


@dataclass(frozen=True)
class BudgetReport:
    """The composed privacy claim attached to experiment outputs."""

    epsilon1: float
    epsilon2: float
    epsilon_total: float
    delta: float

    @property
    def claim(self) -> str:
        return f"({self.epsilon_total:g}, {self.delta:g})-decentralized-DP"


def budget_check(params: PrivacyParams) -> BudgetReport:
    """Verify the phase budgets compose within the total and report the claim."""
    if params.epsilon1 + params.epsilon2 > params.epsilon + 1e-12:
        raise ValueError("phase budgets exceed the total epsilon")
    if params.epsilon2 <= 0:
        raise ValueError("no budget left for the release phase")
    return BudgetReport(epsilon1=params.epsilon1, epsilon2=params.epsilon2,
                        epsilon_total=params.epsilon1 + params.epsilon2,
                        delta=params.delta)


@dataclass(frozen=True)
class Phase1Outcome:
    """Result of the sensitivity-estimation phase."""

    upper_bounds: tuple[float, ...]
    top_set: tuple[int, ...]
    ls_estimate: int
    noise_scale: float


def _binom_of_floor(x: float, r: int) -> int:
    """Binomial coefficient over the floored (possibly noisy) argument;
    zero whenever the floor falls below ``r``."""
    n = math.floor(x)
    if n < r:
        return 0
    return math.comb(n, r)


def phase1(g: Graph, regions: Sequence[frozenset[int]], params: PrivacyParams,
           noise: NoiseSource) -> Phase1Outcome:
    """Estimate the noise scale for the release phase.

    Every vertex reports its region degree plus Laplace noise plus a
    high-confidence offset; the ``h`` top reporters (ties to the smaller
    id) tighten their bound with a noisy maximum common-neighbor count
    the same way. The sensitivity estimate is ``k * C(B, k-2)`` over the
    floored worst refined bound ``B``, and the scale is that over the
    release budget. A zero estimate yields a zero scale, i.e. an
    unperturbed release, which is logged loudly.
    """
    if g.n == 0:
        raise ValueError("graph has no vertices")
    if len(regions) != g.n:
        raise ValueError(f"expected one region per vertex, got {len(regions)} for n={g.n}")
    lam_d = params.lambda_degree
    lam_c = params.lambda_common
    offset_d = lam_d * math.log(1.0 / (2.0 * params.delta_prime))
    offset_c = lam_c * math.log(1.0 / (2.0 * params.delta_prime))
    adj = g.adjacency_sets

    bounds = []
    for v in g.vertices():
        region = regions[v]
        if v not in region:
            raise ValueError(f"vertex {v} missing from its own region")
        region_degree = len(adj[v] & region)
        bounds.append(region_degree + noise.laplace(lam_d, v, TAG_DEGREE) + offset_d)

    top = sorted(g.vertices(), key=lambda v: (-bounds[v], v))[:min(params.h, g.n)]
    for v in top:
        cn = max_common_neighbors_in(g, v, regions[v])
        refined = cn + noise.laplace(lam_c, v, TAG_COMMON) + offset_c
        bounds[v] = min(refined, bounds[v])

    # The non-top degree bounds only decide who refines; the estimate
    # itself comes from the refined reports.
    worst = max(bounds[v] for v in top)
    ls_estimate = params.k * _binom_of_floor(worst, params.k - 2)
    noise_scale = ls_estimate / params.epsilon2
    if ls_estimate == 0:
        logger.warning(
            "estimated sensitivity is 0: the release phase will add no noise")
    return Phase1Outcome(upper_bounds=tuple(bounds), top_set=tuple(top),
                         ls_estimate=ls_estimate, noise_scale=noise_scale)


@dataclass(frozen=True)
class PerturbedResponse:
    """One participant's released count; the true total is kept for evaluation only."""

    vertex: int
    reported: float
    true_total: int


def phase2(counts: Sequence[CliqueCounts], noise_scale: float,
           noise: NoiseSource) -> list[PerturbedResponse]:
    """Release every count with only its inside-region part perturbed."""
    if noise_scale < 0:
        raise ValueError(f"noise scale must be >= 0, got {noise_scale}")
    responses = []
    for c in counts:
        draw = noise.laplace(noise_scale, c.vertex, TAG_COUNT)
        responses.append(PerturbedResponse(
            vertex=c.vertex, reported=c.inside + draw + c.outside, true_total=c.total))
    return responses


def lambda_for_k4(lambda3: float) -> float:
    """Noise scale for order-4 cliques derived from the order-3 scale.

    Order 3 serves as the building block: the scale is rescaled by the
    clique-order ratio instead of re-running the estimation phase.
    """
    if lambda3 < 0:
        raise ValueError(f"noise scale must be >= 0, got {lambda3}")
    return lambda3 * 4.0 / 3.0
