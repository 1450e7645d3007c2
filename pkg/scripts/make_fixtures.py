"""Regenerate the synthetic dataset fixtures under datasets/.

Deterministic: committed fixture files must match this script's output
byte for byte. Needs networkx (dev extra) for the power-law generator.
"""

from __future__ import annotations

import random
from pathlib import Path

import networkx as nx

OUT = Path(__file__).resolve().parents[1] / "datasets"


def write_edges(name: str, edges, comment: str) -> None:
    OUT.mkdir(exist_ok=True)
    path = OUT / name
    lines = [f"# {comment}"]
    for u, v in edges:
        a, b = (u, v) if u <= v else (v, u)
        lines.append(f"{a} {b}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    print(f"wrote {path} ({len(edges)} edges)")


def ring_of_cliques(cliques: int = 8, size: int = 6):
    edges = []
    for c in range(cliques):
        base = c * size
        for i in range(size):
            for j in range(i + 1, size):
                edges.append((base + i, base + j))
        nxt = ((c + 1) % cliques) * size
        edges.append((base + size - 1, nxt))
    return edges


def two_communities(seed: int = 7, size: int = 30, p_in: float = 0.3, p_out: float = 0.02):
    rng = random.Random(seed)
    edges = []
    n = 2 * size
    for u in range(n):
        for v in range(u + 1, n):
            same = (u < size) == (v < size)
            if rng.random() < (p_in if same else p_out):
                edges.append((u, v))
    edges.append((0, size))  # keep the communities attached
    return edges


def synth_powerlaw(seed: int = 11, n: int = 450, m: int = 4, triad: float = 0.6):
    g = nx.powerlaw_cluster_graph(n, m, triad, seed=seed)
    return sorted(g.edges())


def main() -> None:
    write_edges("ring_of_cliques.txt", ring_of_cliques(),
                "eight 6-cliques joined in a ring")
    write_edges("two_communities.txt", two_communities(),
                "two random communities with a sparse bridge")
    write_edges("synth_powerlaw.txt", synth_powerlaw(),
                "seeded power-law graph with clustering (desk-scale stand-in)")


if __name__ == "__main__":
    main()
