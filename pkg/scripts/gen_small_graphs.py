"""Regenerate tests/data/connected_graphs_upto8.txt.gz.

The file lists every connected graph on 2..8 vertices, one per line as
``n edge_mask`` with bit ``j*(j-1)//2 + i`` set for edge (i, j), i < j,
up to isomorphism. Graphs on up to 7 vertices come straight from the
networkx graph atlas; the 8-vertex classes are produced by attaching an
apex vertex to every 7-vertex graph in all ways and deduplicating by
isomorphism. Expected class counts (connected, by n): 1, 2, 6, 21, 112,
853, 11117.

One-time tooling; needs networkx (dev extra). Runtime a few minutes.
"""

from __future__ import annotations

import gzip
from itertools import combinations
from pathlib import Path

import networkx as nx

OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "connected_graphs_upto8.txt.gz"

EXPECTED_CONNECTED = {2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


def edge_mask(g: nx.Graph) -> int:
    m = 0
    for u, v in g.edges():
        i, j = (u, v) if u < v else (v, u)
        m |= 1 << (j * (j - 1) // 2 + i)
    return m


def invariant(g: nx.Graph):
    degs = dict(g.degree())
    tri = nx.triangles(g)
    local = sorted((degs[v], tri[v], tuple(sorted(degs[w] for w in g[v]))) for v in g)
    return tuple(local)


def eight_vertex_classes(sevens: list[nx.Graph]) -> list[nx.Graph]:
    buckets: dict[object, list[nx.Graph]] = {}
    reps: list[nx.Graph] = []
    for base in sevens:
        for r in range(1, 8):
            for subset in combinations(range(7), r):
                g = base.copy()
                g.add_node(7)
                g.add_edges_from((7, u) for u in subset)
                key = invariant(g)
                bucket = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(g, seen) for seen in bucket):
                    bucket.append(g)
                    reps.append(g)
    return reps


def main() -> None:
    atlas = nx.graph_atlas_g()
    lines: list[str] = []
    counts: dict[int, int] = {}
    for g in atlas:
        n = g.number_of_nodes()
        if 2 <= n <= 7 and nx.is_connected(g):
            lines.append(f"{n} {edge_mask(g)}")
            counts[n] = counts.get(n, 0) + 1
    sevens = [g for g in atlas if g.number_of_nodes() == 7]
    eights = eight_vertex_classes(sevens)
    total8 = len(eights)
    for g in eights:
        if nx.is_connected(g):
            lines.append(f"8 {edge_mask(g)}")
            counts[8] = counts.get(8, 0) + 1
    # 12346 classes exist in total; apex attachment (>=1 edge) cannot produce
    # the edgeless one, which is disconnected and irrelevant here.
    print(f"8-vertex classes found: {total8} (expected 12345 of 12346)")
    for n, want in EXPECTED_CONNECTED.items():
        got = counts.get(n, 0)
        status = "ok" if got == want else "MISMATCH"
        print(f"n={n}: {got} connected classes (expected {want}) {status}")
    assert counts == EXPECTED_CONNECTED, "class counts disagree with the literature"
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with gzip.open(OUT, "wt", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {OUT} ({len(lines)} graphs)")


if __name__ == "__main__":
    main()
