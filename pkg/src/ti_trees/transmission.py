"""Exact vertex transmissions: BFS oracle plus closed-form branch offsets.

The transmission of a vertex is the sum of its graph distances to all other
vertices.  ``bfs_transmissions`` computes the full table by one breadth-first
search per vertex and is the ground truth everything else is measured
against.  The closed forms express, for the tree classes built here, the
transmission of any branch or spine vertex as an offset from its hub:
walking one step outward along a branch of length L changes the transmission
by ``n - 2L + 2j - 2`` at position j, which telescopes to the quadratic
offsets implemented below.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any

from .trees import DoubleStarlikeSpec, Side, StarlikeSpec, TreeGraph, VertexLabel
from .verdicts import Collision, CollisionWitness, Verdict, label_to_dict


@dataclass(frozen=True)
class TransmissionTable:
    """Per-vertex transmissions, indexed by canonical vertex index."""

    graph: TreeGraph
    values: tuple[int, ...]

    def of_label(self, label: VertexLabel) -> int:
        return self.values[self.graph.index_of(label)]

    def multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.values))

    def entries(self) -> list[dict[str, Any]]:
        return [
            {"label": label_to_dict(self.graph.label_of(i)), "transmission": v}
            for i, v in enumerate(self.values)
        ]


def bfs_transmissions(g: TreeGraph) -> TransmissionTable:
    """Transmission of every vertex via n breadth-first searches."""
    values = []
    for src in range(g.n):
        dist = [-1] * g.n
        dist[src] = 0
        total = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            du = dist[u]
            for w in g.neighbors[u]:
                if dist[w] < 0:
                    dist[w] = du + 1
                    total += du + 1
                    queue.append(w)
        values.append(total)
    return TransmissionTable(g, tuple(values))


def is_ti_bruteforce(g: TreeGraph) -> Verdict:
    """Decide TI directly from the BFS table.

    On failure the witness is the lexicographically smallest index pair among
    all equal-transmission pairs.
    """
    table = bfs_transmissions(g)
    first_seen: dict[int, int] = {}
    best: tuple[int, int] | None = None
    for i, value in enumerate(table.values):
        j = first_seen.setdefault(value, i)
        if j != i:
            pair = (j, i)
            if best is None or pair < best:
                best = pair
    if best is None:
        return Verdict(True)
    i, j = best
    witness = CollisionWitness(g.label_of(i), g.label_of(j), table.values[i])
    return Verdict(False, Collision(witness))


def closed_form_offset_starlike(spec: StarlikeSpec, i: int, j: int) -> int:
    """Transmission of branch-i position-j relative to the hub: j(n - 2Ai + j - 1)."""
    if not 1 <= i <= spec.k:
        raise IndexError(f"branch index {i} out of range 1..{spec.k}")
    length = spec.branches[i - 1]
    if not 0 <= j <= length:
        raise IndexError(f"position {j} out of range 0..{length}")
    n = spec.order
    return j * (n - 2 * length + j - 1)


@dataclass(frozen=True)
class DoubleStarlikeOffsets:
    """All closed-form offsets of a double starlike tree.

    ``a[i-1][j]`` and ``b[i-1][j]`` are offsets from the respective hub;
    ``spine[j]`` is the offset of spine position j from the first hub;
    ``hub_gap`` is the transmission difference (second hub) - (first hub),
    which equals C(A* - B*).
    """

    a: tuple[tuple[int, ...], ...]
    b: tuple[tuple[int, ...], ...]
    spine: tuple[int, ...]
    hub_gap: int


def closed_form_offsets_double(spec: DoubleStarlikeSpec) -> DoubleStarlikeOffsets:
    """Offsets for the given orientation (no normalization is required)."""
    n = spec.order
    a_total = spec.a_total
    a = tuple(
        tuple(j * (n - 2 * length + j - 1) for j in range(length + 1))
        for length in spec.a_branches
    )
    b = tuple(
        tuple(j * (n - 2 * length + j - 1) for j in range(length + 1))
        for length in spec.b_branches
    )
    spine = tuple(
        j * (2 * (1 + a_total) - n + j - 1) for j in range(spec.c + 1)
    )
    return DoubleStarlikeOffsets(a, b, spine, spec.c * (a_total - spec.b_total))


def hub_transmission_starlike(spec: StarlikeSpec) -> int:
    """Transmission of the hub: sum over branches of 1 + 2 + ... + Ai."""
    return sum(a * (a + 1) // 2 for a in spec.branches)


def hub_transmission_double(spec: DoubleStarlikeSpec) -> int:
    """Transmission of the first hub (spine position 0)."""
    own = sum(a * (a + 1) // 2 for a in spec.a_branches)
    spine = spec.c * (spec.c + 1) // 2
    far = spec.c * spec.b_total + sum(b * (b + 1) // 2 for b in spec.b_branches)
    return own + spine + far


def starlike_label_transmission(spec: StarlikeSpec, label: VertexLabel) -> int:
    if label.side is not Side.A:
        raise ValueError(f"starlike trees have no {label.side.value} vertices")
    if label.position == 0:
        return hub_transmission_starlike(spec)
    return hub_transmission_starlike(spec) + closed_form_offset_starlike(
        spec, label.branch, label.position
    )


def double_label_transmission(spec: DoubleStarlikeSpec, label: VertexLabel) -> int:
    hub = hub_transmission_double(spec)
    offsets = closed_form_offsets_double(spec)
    if label.side is Side.SPINE:
        return hub + offsets.spine[label.position]
    if label.side is Side.A:
        return hub + offsets.a[label.branch - 1][label.position]
    return hub + offsets.hub_gap + offsets.b[label.branch - 1][label.position]
