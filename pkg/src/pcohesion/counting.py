"""Exact per-vertex k-clique counting, split by a protection region.

``inside`` counts cliques whose vertex set lies entirely within the
region; everything else is ``outside``. Counting enumerates ascending
combinations inside the query vertex's neighborhood, probing adjacency
bitsets at desk scale and falling back to set intersections on graphs
too large to keep n-bit masks per vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, bits, mask_of

MIN_CLIQUE_ORDER = 3
MAX_CLIQUE_ORDER = 6

# Above this many vertices, per-vertex bitmasks cost more than set probes save.
_BITSET_VERTEX_LIMIT = 8192


@dataclass(frozen=True)
class CliqueCounts:
    """Cliques of order ``k`` through ``vertex``, split by the region."""

    vertex: int
    k: int
    total: int
    inside: int

    @property
    def outside(self) -> int:
        return self.total - self.inside


def _check_order(k: int) -> None:
    if not MIN_CLIQUE_ORDER <= k <= MAX_CLIQUE_ORDER:
        raise ValueError(
            f"clique order must be in [{MIN_CLIQUE_ORDER}, {MAX_CLIQUE_ORDER}], got {k}")


def _extend_masks(masks: Sequence[int], candidates: int, need: int) -> int:
    if need == 1:
        return candidates.bit_count()
    total = 0
    rest = candidates
    while rest:
        low = rest & -rest
        u = low.bit_length() - 1
        rest ^= low
        total += _extend_masks(masks, masks[u] & rest, need - 1)
    return total


def _extend_sets(adj: Sequence[frozenset[int]], candidates: list[int], need: int) -> int:
    if need == 1:
        return len(candidates)
    total = 0
    for i, u in enumerate(candidates):
        nxt = [w for w in candidates[i + 1:] if w in adj[u]]
        if nxt:
            total += _extend_sets(adj, nxt, need - 1)
    return total


def count_cliques_at(g: Graph, v: int, k: int) -> int:
    """Number of k-cliques of the whole graph containing ``v``."""
    _check_order(k)
    g._check_vertex(v)
    if g.n <= _BITSET_VERTEX_LIMIT:
        masks = g.adjacency_masks
        return _extend_masks(masks, masks[v], k - 1)
    adj = g.adjacency_sets
    return _extend_sets(adj, sorted(adj[v]), k - 1)


def split_counts(g: Graph, v: int, region: Iterable[int], k: int) -> CliqueCounts:
    """Split ``v``'s k-clique count by the region: a clique is inside only
    when every one of its vertices belongs to the region."""
    _check_order(k)
    g._check_vertex(v)
    region_set = frozenset(region)
    if v not in region_set:
        raise ValueError(f"vertex {v} is not in its own region")
    total = count_cliques_at(g, v, k)
    if g.n <= _BITSET_VERTEX_LIMIT:
        masks = g.adjacency_masks
        rmask = mask_of(region_set)
        inside = _extend_masks(masks, masks[v] & rmask, k - 1)
    else:
        adj = g.adjacency_sets
        restricted = [frozenset(adj[u] & region_set) for u in g.vertices()]
        inside = _extend_sets(restricted, sorted(adj[v] & region_set), k - 1)
    return CliqueCounts(vertex=v, k=k, total=total, inside=inside)


def max_common_neighbors_in(g: Graph, v: int, region: Iterable[int]) -> int:
    """Largest count of common neighbors, within the region's induced
    subgraph, between ``v`` and any other region member."""
    g._check_vertex(v)
    region_set = frozenset(region)
    if v not in region_set:
        raise ValueError(f"vertex {v} is not in its own region")
    if g.n <= _BITSET_VERTEX_LIMIT:
        masks = g.adjacency_masks
        rmask = mask_of(region_set)
        nv = masks[v] & rmask
        best = 0
        for u in bits(rmask):
            if u == v:
                continue
            c = (nv & masks[u] & rmask).bit_count()
            if c > best:
                best = c
        return best
    adj = g.adjacency_sets
    nv = adj[v] & region_set
    return max((len(nv & adj[u] & region_set) for u in region_set if u != v), default=0)


def total_count_report(counts: Sequence[CliqueCounts], k: int) -> int:
    """Sum of per-vertex totals; equals ``k`` times the distinct k-clique count,
    since every clique is reported once by each of its members."""
    seen: set[int] = set()
    total = 0
    for c in counts:
        if c.k != k:
            raise ValueError(f"count for vertex {c.vertex} has order {c.k}, expected {k}")
        if c.vertex in seen:
            raise ValueError(f"duplicate count entry for vertex {c.vertex}")
        seen.add(c.vertex)
        total += c.total
    return total
