import random
from pathlib import Path

import pytest

from pcohesion import Graph

REPO_ROOT = Path(__file__).resolve().parents[1]
DATASET_DIR = REPO_ROOT / "datasets"
TEST_DATA_DIR = Path(__file__).resolve().parent / "data"


def gnp(n: int, edge_prob: float, seed: int) -> Graph:
    """Seeded Erdos-Renyi graph on exactly n vertices (identity label map)."""
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < edge_prob]
    return Graph.from_edges(edges, isolated=range(n))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges([(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)])


@pytest.fixture(scope="session")
def powerlaw_path() -> Path:
    return DATASET_DIR / "synth_powerlaw.txt"


@pytest.fixture(scope="session")
def ring_path() -> Path:
    return DATASET_DIR / "ring_of_cliques.txt"
