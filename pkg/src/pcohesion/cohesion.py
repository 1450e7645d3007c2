"""Minimal p-cohesion extraction around a query vertex.

A p-cohesion is a connected subgraph in which every member keeps at
least a fraction ``p`` of its global neighbors inside the subgraph.
Extraction is greedy expand (grow until every member is satisfied,
steering by merit/penalty scores) followed by shrink (delete redundant
vertices while anything can still go). ``elv`` provides the two-hop
baseline region, and ``brute_force_minimal`` an exponential reference
enumerator for small graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .graph import (
    Graph,
    bits,
    component_mask,
    density,
    exact_fraction,
    induced,
    mask_of,
    two_hop_neighborhood,
)


@dataclass(frozen=True)
class CohesionParams:
    """The cohesion fraction ``p`` in (0, 1)."""

    p: float
    _p_exact: Fraction = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"p must lie in (0, 1), got {self.p}")
        object.__setattr__(self, "_p_exact", exact_fraction(self.p))

    def required(self, full_degree: int) -> int:
        """Neighbors a vertex of the given global degree must keep inside."""
        return math.ceil(self._p_exact * full_degree)


@dataclass(frozen=True)
class CohesionResult:
    """A (minimal) p-cohesion around ``query``, with its induced statistics.

    ``density`` is None for single-vertex results, where edge density is
    undefined; distribution reports count singletons separately.
    """

    query: int
    members: frozenset[int]
    is_minimal: bool
    density: float | None
    size: int


@dataclass(frozen=True)
class ScoreBreakdown:
    merit: float
    penalty: float

    @property
    def total(self) -> float:
        return self.merit - self.penalty


def _result(g: Graph, q: int, member_mask: int, is_minimal: bool) -> CohesionResult:
    members = frozenset(bits(member_mask))
    dens = density(induced(g, members)) if len(members) >= 2 else None
    return CohesionResult(query=q, members=members, is_minimal=is_minimal,
                          density=dens, size=len(members))


# -- score functions --------------------------------------------------------


def _requirements(g: Graph, params: CohesionParams) -> list[int]:
    """Per-vertex inside-degree quota, computed once per operation."""
    by_degree: dict[int, int] = {}
    return [by_degree.setdefault(d, params.required(d))
            for d in (len(nbrs) for nbrs in g._adj)]


def _merit(g: Graph, vp_mask: int, q: int, w: int, req: list[int]) -> float:
    masks = g.adjacency_masks
    d_w = g.degree(w)
    w_inside = masks[w] & vp_mask
    inside = w_inside.bit_count()
    if inside == 0:
        return 0.0
    common_with_q = (w_inside & masks[q]).bit_count()
    still_short = 0
    for u in bits(w_inside):
        if (masks[u] & vp_mask).bit_count() < req[u]:
            still_short += 1
    return (inside / d_w) * (common_with_q / d_w) * (still_short / d_w)


def _penalty(g: Graph, vp_mask: int, w: int, req: list[int]) -> float:
    masks = g.adjacency_masks
    d_w = g.degree(w)
    inside = (masks[w] & vp_mask).bit_count()
    shortfall = req[w] - inside
    if shortfall <= 0:
        return 0.0
    # Outside neighbors in support order: highest inside-degree first, then id.
    outside = [(-(masks[o] & vp_mask).bit_count(), o) for o in bits(masks[w] & ~vp_mask)]
    outside.sort()
    support = sum(-neg for neg, _ in outside[:shortfall])
    if support == 0:
        # The formula's denominator vanishes; a cap larger than any merit
        # keeps such candidates ordered last without introducing infinities.
        return float(d_w)
    return (shortfall / d_w) / (support / d_w)


def merit(g: Graph, vp: Iterable[int], q: int, w: int, params: CohesionParams) -> float:
    """Gain score for adding outside vertex ``w``: how much it densifies the
    region around ``q`` and relieves members still short of their quota."""
    vp_mask = mask_of(vp)
    _check_candidate(g, vp_mask, w)
    g._check_vertex(q)
    return _merit(g, vp_mask, q, w, _requirements(g, params))


def penalty(g: Graph, vp: Iterable[int], w: int, params: CohesionParams) -> float:
    """Cost score for adding ``w``: outside neighbors it would drag in,
    discounted by how well those neighbors are already supported inside."""
    vp_mask = mask_of(vp)
    _check_candidate(g, vp_mask, w)
    return _penalty(g, vp_mask, w, _requirements(g, params))


def score_breakdown(g: Graph, vp: Iterable[int], q: int, w: int,
                    params: CohesionParams) -> ScoreBreakdown:
    vp_mask = mask_of(vp)
    _check_candidate(g, vp_mask, w)
    g._check_vertex(q)
    req = _requirements(g, params)
    return ScoreBreakdown(merit=_merit(g, vp_mask, q, w, req),
                          penalty=_penalty(g, vp_mask, w, req))


def _check_candidate(g: Graph, vp_mask: int, w: int) -> None:
    g._check_vertex(w)
    if (vp_mask >> w) & 1:
        raise ValueError(f"candidate {w} is already a member")
    if g.degree(w) == 0:
        raise ValueError(f"candidate {w} has no neighbors")


# -- expand -----------------------------------------------------------------


def expand(g: Graph, q: int, params: CohesionParams, strict_refresh: bool = False) -> CohesionResult:
    """Grow a p-cohesion around ``q`` bottom-up.

    Unsatisfied members are processed highest-inside-degree first; each
    pulls in its best-scoring outside neighbors until it meets its quota.
    Ties break toward the smaller id everywhere, so the result is
    deterministic. Scores are computed lazily at selection time;
    ``strict_refresh`` instead rescores every non-member after each step,
    for cross-checking the lazy path.
    """
    g._check_vertex(q)
    masks = g.adjacency_masks
    req = _requirements(g, params)
    vp_mask = 1 << q
    pending = [q]
    scores: dict[int, float] | None = None
    if strict_refresh:
        scores = _all_scores(g, vp_mask, q, req)

    while pending:
        i = min(range(len(pending)),
                key=lambda j: (-(masks[pending[j]] & vp_mask).bit_count(), pending[j]))
        u = pending.pop(i)
        quota = req[u] - (masks[u] & vp_mask).bit_count()
        if quota <= 0:
            continue
        candidates = list(bits(masks[u] & ~vp_mask))
        if strict_refresh:
            ranked = sorted(candidates, key=lambda w: (-scores[w], w))
        else:
            ranked = sorted(
                candidates,
                key=lambda w: (-(_merit(g, vp_mask, q, w, req)
                                 - _penalty(g, vp_mask, w, req)), w))
        batch = ranked[:quota]
        for w in batch:
            vp_mask |= 1 << w
        for w in batch:
            if (masks[w] & vp_mask).bit_count() < req[w]:
                pending.append(w)
        if strict_refresh:
            scores = _all_scores(g, vp_mask, q, req)

    return _result(g, q, vp_mask, is_minimal=False)


def _all_scores(g: Graph, vp_mask: int, q: int, req: list[int]) -> dict[int, float]:
    out = {}
    for w in g.vertices():
        if (vp_mask >> w) & 1 or g.degree(w) == 0:
            continue
        out[w] = _merit(g, vp_mask, q, w, req) - _penalty(g, vp_mask, w, req)
    return out


# -- shrink -----------------------------------------------------------------


def is_valid_cohesion(g: Graph, members: Iterable[int], q: int, params: CohesionParams) -> bool:
    """Definition check: connected, contains ``q``, every member keeps its quota."""
    mem_mask = mask_of(members)
    if not (mem_mask >> q) & 1:
        return False
    masks = g.adjacency_masks
    for v in bits(mem_mask):
        if (masks[v] & mem_mask).bit_count() < params.required(g.degree(v)):
            return False
    return component_mask(masks, mem_mask, q) == mem_mask


def _trial_delete(g: Graph, s_mask: int, deg_in: dict[int, int], v: int, q: int,
                  req: list[int], pinned: int) -> int | None:
    """Survivor mask after removing ``v`` and cascading quota violations,
    then discarding anything cut off from ``q``'s component.

    Returns None as soon as a pinned vertex falls: the caller would roll
    such a trial back anyway. The cascade closure is order-independent
    (peeling below per-vertex thresholds is confluent), so the work
    queue's order never shows in the result.
    """
    adj = g._adj
    work = s_mask
    deg = deg_in.copy()
    queue = [v]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        ubit = 1 << u
        if not work & ubit:
            continue
        if pinned & ubit:
            return None
        work &= ~ubit
        for w in adj[u]:
            if (work >> w) & 1:
                deg[w] -= 1
                if deg[w] < req[w]:
                    queue.append(w)
    # Fragments cut off from q can never rejoin a connected cohesion of q;
    # dropping them does not change any degree on q's side.
    masks = g.adjacency_masks
    reached = component_mask(masks, work, q)
    if pinned & ~reached:
        return None
    return reached


def shrink(g: Graph, cohesion: CohesionResult, q: int, params: CohesionParams) -> CohesionResult:
    """Reduce a valid p-cohesion containing ``q`` to a minimal one.

    Tries members in ascending id order: tentatively delete, cascade the
    fallout, and keep the deletion unless it knocks out ``q`` or any
    vertex already proven necessary (those are pinned and never retried).
    Passes repeat until every remaining member is pinned.
    """
    if q not in cohesion.members:
        raise ValueError(f"query {q} is not a member of the given cohesion")
    if not is_valid_cohesion(g, cohesion.members, q, params):
        raise ValueError("input is not a valid p-cohesion for the given p")
    masks = g.adjacency_masks
    req = _requirements(g, params)
    s_mask = mask_of(cohesion.members)
    deg_in = {v: (masks[v] & s_mask).bit_count() for v in bits(s_mask)}
    pinned = 1 << q
    processed = 1 << q
    while s_mask & ~processed:
        for v in list(bits(s_mask & ~processed)):
            if not (s_mask >> v) & 1:
                continue
            survivors = _trial_delete(g, s_mask, deg_in, v, q, req, pinned)
            if survivors is None:
                pinned |= 1 << v
                processed |= 1 << v
            else:
                processed |= s_mask & ~survivors
                s_mask = survivors
                deg_in = {u: (masks[u] & s_mask).bit_count() for u in bits(s_mask)}
    return _result(g, q, s_mask, is_minimal=True)


def minimal_p_cohesion(g: Graph, q: int, params: CohesionParams,
                       strict_refresh: bool = False) -> CohesionResult:
    """Expand then shrink: the minimal p-cohesion holding ``q``'s critical connections."""
    return shrink(g, expand(g, q, params, strict_refresh=strict_refresh), q, params)


def elv(g: Graph, q: int) -> CohesionResult:
    """Two-hop-view baseline region around ``q`` (not cohesion-constrained)."""
    members = two_hop_neighborhood(g, q)
    return _result(g, q, mask_of(members), is_minimal=False)


def brute_force_minimal(g: Graph, q: int, params: CohesionParams) -> set[frozenset[int]]:
    """All inclusion-minimal valid p-cohesions containing ``q``, by full
    subset enumeration. Exponential; refuses graphs beyond 16 vertices."""
    if g.n > 16:
        raise ValueError(f"brute force enumeration capped at 16 vertices, graph has {g.n}")
    g._check_vertex(q)
    masks = g.adjacency_masks
    req = [params.required(g.degree(v)) for v in g.vertices()]
    qbit = 1 << q
    valid: list[int] = []
    for sub in range(1 << g.n):
        if not sub & qbit:
            continue
        if all((masks[v] & sub).bit_count() >= req[v] for v in bits(sub)) \
                and component_mask(masks, sub, q) == sub:
            valid.append(sub)
    minimal = [m for m in valid
               if not any(o != m and o & m == o for o in valid)]
    return {frozenset(bits(m)) for m in minimal}
