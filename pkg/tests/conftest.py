"""Shared fixtures: family definitions from the data files and an independent
all-pairs distance oracle (networkx) for cross-checking the BFS code."""

from __future__ import annotations

from pathlib import Path

import networkx as nx
import pytest

from ti_trees.polycert import parse_family_file
from ti_trees.trees import TreeGraph

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def to_networkx(g: TreeGraph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(g.n))
    for u, nbrs in enumerate(g.neighbors):
        for w in nbrs:
            if w > u:
                graph.add_edge(u, w)
    return graph


def nx_transmissions(g: TreeGraph) -> list[int]:
    """Independent transmission oracle built on networkx shortest paths."""
    graph = to_networkx(g)
    totals = [0] * g.n
    for src, lengths in nx.all_pairs_shortest_path_length(graph):
        totals[src] = sum(lengths.values())
    return totals


@pytest.fixture(scope="session")
def x_families():
    return parse_family_file((DATA_DIR / "x_families.txt").read_text())


@pytest.fixture(scope="session")
def h_families():
    return parse_family_file((DATA_DIR / "h_families.txt").read_text())


@pytest.fixture(scope="session")
def remark_family():
    (family,) = parse_family_file((DATA_DIR / "remark_family.txt").read_text())
    return family
