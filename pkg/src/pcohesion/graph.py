"""Immutable undirected simple graphs with dense vertex ids.

Vertex labels from input files are remapped to dense ids ``0..n-1``
(integer labels sort numerically, anything else lexicographically), so
all algorithms work on contiguous ids and reports translate back through
``Graph.labels`` / ``Graph.id_map``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Sequence


class EdgeListFormatError(ValueError):
    """Raised for malformed edge-list input, carrying the offending line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class LoadReport:
    """What the loader dropped or padded while building a simple graph."""

    self_loops_dropped: int = 0
    duplicate_edges_dropped: int = 0
    header_vertices_added: int = 0


class Graph:
    """Undirected simple graph, immutable after construction.

    Neighbor lists are sorted ascending by dense id, adjacency is
    symmetric, and there are no self-loops or parallel edges. Instances
    are safe to share across threads or processes.
    """

    __slots__ = ("n", "m", "labels", "id_map", "_adj", "_adj_sets", "_adj_masks", "load_report")

    def __init__(self, adjacency: Sequence[Sequence[int]], labels: Sequence[object] | None = None,
                 load_report: LoadReport | None = None):
        n = len(adjacency)
        if n == 0:
            raise ValueError("graph has no vertices")
        self.n = n
        self._adj = tuple(tuple(sorted(nbrs)) for nbrs in adjacency)
        deg_sum = sum(len(a) for a in self._adj)
        if deg_sum % 2 != 0:
            raise ValueError("adjacency is not symmetric")
        self.m = deg_sum // 2
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        if len(self.labels) != n:
            raise ValueError("labels length does not match vertex count")
        self.id_map = {lab: v for v, lab in enumerate(self.labels)}
        self.load_report = load_report or LoadReport()
        self._adj_sets: tuple[frozenset[int], ...] | None = None
        self._adj_masks: list[int] | None = None

    # -- basic queries -------------------------------------------------

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return v in self.adjacency_sets[u]

    def max_degree(self) -> int:
        return max(len(a) for a in self._adj)

    def average_degree(self) -> float:
        return 2.0 * self.m / self.n

    @property
    def adjacency_sets(self) -> tuple[frozenset[int], ...]:
        if self._adj_sets is None:
            self._adj_sets = tuple(frozenset(a) for a in self._adj)
        return self._adj_sets

    @property
    def adjacency_masks(self) -> list[int]:
        """Per-vertex neighbor bitmask; built lazily, O(n^2) bits of memory."""
        if self._adj_masks is None:
            masks = []
            for nbrs in self._adj:
                m = 0
                for u in nbrs:
                    m |= 1 << u
                masks.append(m)
            self._adj_masks = masks
        return self._adj_masks

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex id {v} out of range [0, {self.n})")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- construction ---------------------------------------------------

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[object, object]],
                   isolated: Iterable[object] = ()) -> "Graph":
        """Build a graph from label pairs, dropping self-loops and duplicates."""
        return _build(list(edges), list(isolated))


def _sort_labels(labels: Iterable[object]) -> list[object]:
    labs = list(labels)
    if all(isinstance(x, int) for x in labs):
        return sorted(labs)
    return sorted(labs, key=str)


def _build(edges: list[tuple[object, object]], isolated: list[object]) -> Graph:
    seen: set[frozenset[object]] = set()
    self_loops = 0
    duplicates = 0
    labels_set: set[object] = set(isolated)
    kept: list[tuple[object, object]] = []
    for a, b in edges:
        labels_set.add(a)
        labels_set.add(b)
        if a == b:
            self_loops += 1
            continue
        key = frozenset((a, b))
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        kept.append((a, b))
    if not labels_set:
        raise ValueError("graph has no vertices")
    labels = _sort_labels(labels_set)
    ids = {lab: i for i, lab in enumerate(labels)}
    adj: list[list[int]] = [[] for _ in labels]
    for a, b in kept:
        u, v = ids[a], ids[b]
        adj[u].append(v)
        adj[v].append(u)
    report = LoadReport(self_loops_dropped=self_loops,
                        duplicate_edges_dropped=duplicates,
                        header_vertices_added=len(isolated))
    return Graph(adj, labels=labels, load_report=report)


def _parse_token(tok: str) -> object:
    try:
        return int(tok)
    except ValueError:
        return tok


def load_edge_list(path: str | Path, header: bool | None = None) -> Graph:
    """Load an undirected graph from a whitespace-separated edge list.

    One edge per line as two labels; lines starting with ``%`` or ``#``
    are comments. Directed inputs are read as undirected; self-loops and
    duplicate edges are dropped (counted in ``Graph.load_report``).

    A size header is tolerated: with ``header=None`` (auto) a first data
    line of three integers is treated as ``rows cols nnz`` / ``n n m``;
    ``header=True`` forces the first data line (2 or 3 integers) to be a
    header. Header vertex counts only pad isolated integer-labeled
    vertices; edge structure always comes from the data lines.
    """
    path = Path(path)
    edges: list[tuple[str, str]] = []
    header_n: int | None = None
    saw_data = False
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line[0] in "%#":
                continue
            toks = line.split()
            if not saw_data:
                saw_data = True
                ints = _all_ints(toks)
                if len(toks) == 3 and ints is not None and header is not False:
                    header_n = ints[0]
                    continue
                if header is True:
                    if len(toks) == 2 and ints is not None:
                        header_n = ints[0]
                        continue
                    raise EdgeListFormatError(lineno, "expected an integer size header")
            if len(toks) != 2:
                raise EdgeListFormatError(lineno, f"expected 2 labels, got {len(toks)}")
            edges.append((toks[0], toks[1]))
    typed = _type_labels(edges)
    isolated = _header_padding(typed, header_n)
    graph = _build(typed, isolated)
    return graph


def _all_ints(toks: list[str]) -> list[int] | None:
    try:
        return [int(t) for t in toks]
    except ValueError:
        return None


def _type_labels(edges: list[tuple[str, str]]) -> list[tuple[object, object]]:
    # A file is integer-labeled only if every token parses as an int.
    parsed = [(_parse_token(a), _parse_token(b)) for a, b in edges]
    if all(isinstance(x, int) for pair in parsed for x in pair):
        return parsed
    return [(a, b) for a, b in edges]


def _header_padding(edges: list[tuple[object, object]], header_n: int | None) -> list[int]:
    """Isolated vertices implied by a header: fill the contiguous label range."""
    if header_n is None or header_n <= 0:
        return []
    seen = {x for pair in edges for x in pair}
    if seen and not all(isinstance(x, int) for x in seen):
        return []
    base = min(seen) if seen else 1
    universe = range(base, base + header_n)
    if seen and max(seen) >= base + header_n:
        return []
    return [x for x in universe if x not in seen]


def write_edge_list(graph: Graph, path: str | Path) -> None:
    """Write one ``label label`` line per edge, ascending by dense id pair."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for u in graph.vertices():
            for v in graph.neighbors(u):
                if u < v:
                    fh.write(f"{graph.labels[u]} {graph.labels[v]}\n")


def degree(graph: Graph, v: int) -> int:
    return graph.degree(v)


@dataclass(frozen=True)
class InducedSubgraph:
    """A vertex subset of a parent graph plus its internal degrees."""

    parent: Graph = field(repr=False)
    members: frozenset[int]
    local_degree: dict[int, int] = field(repr=False)
    edge_count: int

    @property
    def size(self) -> int:
        return len(self.members)


def induced(graph: Graph, members: Iterable[int]) -> InducedSubgraph:
    """Induced subgraph on ``members``; edges are exactly those internal to the set."""
    mem = frozenset(members)
    for v in mem:
        graph._check_vertex(v)
    adj_sets = graph.adjacency_sets
    local = {v: len(adj_sets[v] & mem) for v in mem}
    return InducedSubgraph(parent=graph, members=mem, local_degree=local,
                           edge_count=sum(local.values()) // 2)


def density(sub: InducedSubgraph) -> float:
    """Edge density ``2|E| / (|V| (|V|-1))``; undefined below two vertices."""
    size = len(sub.members)
    if size < 2:
        raise ValueError("density is undefined for fewer than 2 vertices")
    return 2.0 * sub.edge_count / (size * (size - 1))


def two_hop_neighborhood(graph: Graph, v: int) -> frozenset[int]:
    """``{v}`` plus everything reachable within two hops."""
    graph._check_vertex(v)
    out = {v}
    for u in graph.neighbors(v):
        out.add(u)
        out.update(graph.neighbors(u))
    return frozenset(out)


def bits(mask: int) -> Iterator[int]:
    """Set-bit indices of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(members: Iterable[int]) -> int:
    m = 0
    for v in members:
        m |= 1 << v
    return m


def component_mask(adjacency_masks: Sequence[int], within: int, start: int) -> int:
    """Connected component of ``start`` inside the vertex set ``within`` (bitmasks)."""
    if not (within >> start) & 1:
        return 0
    reached = 0
    frontier = 1 << start
    while frontier:
        reached |= frontier
        nxt = 0
        for u in bits(frontier):
            nxt |= adjacency_masks[u] & within
        frontier = nxt & ~reached
    return reached


def is_connected_subset(graph: Graph, members: Iterable[int]) -> bool:
    mem_mask = mask_of(members)
    if mem_mask == 0:
        return False
    start = (mem_mask & -mem_mask).bit_length() - 1
    return component_mask(graph.adjacency_masks, mem_mask, start) == mem_mask


def required_degree(full_degree: int, p_exact: Fraction) -> int:
    """Ceiling of ``p * full_degree`` in exact arithmetic."""
    return math.ceil(p_exact * full_degree)


def exact_fraction(p: float) -> Fraction:
    """The decimal value the caller wrote, recovered from its float form.

    ``0.07 * 100`` is ``7.000000000000001`` in binary floating point; taking
    the nearest small-denominator rational restores the intended ``7/100`` so
    ceilings of ``p * degree`` never pick up an extra unit.
    """
    return Fraction(p).limit_denominator(10**6)
