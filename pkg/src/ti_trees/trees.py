"""Starlike and double starlike tree specifications and their explicit graphs.

A starlike tree has exactly one vertex of degree greater than two (the hub)
with pendent paths ("branches") attached to it.  A double starlike tree has
exactly two hubs joined by a path (the spine), each hub carrying its own
pendent paths.

Vertices are addressed through :class:`VertexLabel`: a side (branch of the
first hub, spine, branch of the second hub), a 1-based branch index, and a
position along the branch counted away from its hub.  Position 0 on any
branch denotes the hub itself, so position-0 labels on different branches of
the same hub alias one vertex.  Spine labels exist only for double starlike
trees and run from position 0 (first hub) to position C (second hub).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping


class Side(str, Enum):
    A = "A"
    SPINE = "spine"
    B = "B"


_SIDE_RANK = {Side.A: 0, Side.SPINE: 1, Side.B: 2}


@dataclass(frozen=True)
class VertexLabel:
    side: Side
    branch: int
    position: int

    def sort_key(self) -> tuple[int, int, int]:
        return (_SIDE_RANK[self.side], self.branch, self.position)

    def __str__(self) -> str:
        if self.side is Side.SPINE:
            return f"s.{self.position}"
        return f"{self.side.value.lower()}{self.branch}.{self.position}"


@dataclass(frozen=True)
class StarlikeSpec:
    """Branch lengths A1..Ak of a starlike tree, in caller order."""

    branches: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "branches", tuple(int(a) for a in self.branches))
        if len(self.branches) < 3:
            raise ValueError("a starlike tree needs at least 3 branches")
        if any(a < 1 for a in self.branches):
            raise ValueError("branch lengths must be positive")

    @property
    def k(self) -> int:
        return len(self.branches)

    @property
    def order(self) -> int:
        return 1 + sum(self.branches)

    def __str__(self) -> str:
        return "S:" + ",".join(str(a) for a in self.branches)


@dataclass(frozen=True)
class DoubleStarlikeSpec:
    """Hub distance C plus the branch lengths on each hub.

    The first hub carries ``a_branches`` (lengths A1..Ak), the second hub
    carries ``b_branches`` (lengths B1..Bm).  No ordering between the two
    sides is required at construction; see :func:`normalize_double_starlike`.
    """

    c: int
    a_branches: tuple[int, ...]
    b_branches: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", int(self.c))
        object.__setattr__(self, "a_branches", tuple(int(a) for a in self.a_branches))
        object.__setattr__(self, "b_branches", tuple(int(b) for b in self.b_branches))
        if self.c < 1:
            raise ValueError("hub distance must be positive")
        if len(self.a_branches) < 2 or len(self.b_branches) < 2:
            raise ValueError(
                "each hub needs at least 2 branches; a tree with a lone branch "
                "on one side is starlike, not double starlike"
            )
        if any(a < 1 for a in self.a_branches + self.b_branches):
            raise ValueError("branch lengths must be positive")

    @property
    def k(self) -> int:
        return len(self.a_branches)

    @property
    def m(self) -> int:
        return len(self.b_branches)

    @property
    def a_total(self) -> int:
        return sum(self.a_branches)

    @property
    def b_total(self) -> int:
        return sum(self.b_branches)

    @property
    def order(self) -> int:
        return (self.c + 1) + self.a_total + self.b_total

    def __str__(self) -> str:
        return "DS:{};{};{}".format(
            self.c,
            ",".join(str(a) for a in self.a_branches),
            ",".join(str(b) for b in self.b_branches),
        )


TreeSpec = StarlikeSpec | DoubleStarlikeSpec


def order_starlike(spec: StarlikeSpec) -> int:
    return spec.order


def order_double_starlike(spec: DoubleStarlikeSpec) -> int:
    return spec.order


def normalize_double_starlike(spec: DoubleStarlikeSpec) -> DoubleStarlikeSpec:
    """Swap the two sides so the first hub carries the larger branch total.

    Ties keep the given orientation.  The result describes a tree isomorphic
    to the input, and the operation is idempotent.
    """
    if spec.b_total > spec.a_total:
        return DoubleStarlikeSpec(spec.c, spec.b_branches, spec.a_branches)
    return spec


@dataclass(frozen=True)
class TreeGraph:
    """Explicit labeled tree with deterministic canonical vertex indices.

    ``labels[i]`` is the canonical label of vertex ``i``; ``index`` maps every
    valid label (including position-0 aliases) to its vertex index, so it is
    a bijection once aliases are collapsed.
    """

    n: int
    neighbors: tuple[tuple[int, ...], ...]
    labels: tuple[VertexLabel, ...]
    index: Mapping[VertexLabel, int] = field(repr=False)

    def index_of(self, label: VertexLabel) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise ValueError(f"no vertex labeled {label}") from None

    def label_of(self, i: int) -> VertexLabel:
        return self.labels[i]

    def degree(self, i: int) -> int:
        return len(self.neighbors[i])

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.neighbors) // 2


def build_starlike(spec: StarlikeSpec) -> TreeGraph:
    """Materialize a starlike tree.

    Index order: hub first (index 0), then each branch in spec order with
    positions ascending.
    """
    n = spec.order
    adjacency: list[list[int]] = [[] for _ in range(n)]
    labels = [VertexLabel(Side.A, 1, 0)]
    index: dict[VertexLabel, int] = {
        VertexLabel(Side.A, i, 0): 0 for i in range(1, spec.k + 1)
    }
    idx = 1
    for i, length in enumerate(spec.branches, start=1):
        prev = 0
        for j in range(1, length + 1):
            label = VertexLabel(Side.A, i, j)
            labels.append(label)
            index[label] = idx
            adjacency[prev].append(idx)
            adjacency[idx].append(prev)
            prev = idx
            idx += 1
    return TreeGraph(n, tuple(map(tuple, adjacency)), tuple(labels), index)


def build_double_starlike(spec: DoubleStarlikeSpec) -> TreeGraph:
    """Materialize a double starlike tree.

    Index order: first hub (0), second hub (1), the first hub's branches in
    spec order, the spine interior, then the second hub's branches.
    """
    n = spec.order
    c = spec.c
    adjacency: list[list[int]] = [[] for _ in range(n)]
    hub_a = VertexLabel(Side.SPINE, 0, 0)
    hub_b = VertexLabel(Side.SPINE, 0, c)
    labels = [hub_a, hub_b]
    index: dict[VertexLabel, int] = {hub_a: 0, hub_b: 1}
    for i in range(1, spec.k + 1):
        index[VertexLabel(Side.A, i, 0)] = 0
    for i in range(1, spec.m + 1):
        index[VertexLabel(Side.B, i, 0)] = 1

    idx = 2

    def grow_branch(hub_idx: int, side: Side, branch: int, length: int) -> None:
        nonlocal idx
        prev = hub_idx
        for j in range(1, length + 1):
            label = VertexLabel(side, branch, j)
            labels.append(label)
            index[label] = idx
            adjacency[prev].append(idx)
            adjacency[idx].append(prev)
            prev = idx
            idx += 1

    for i, length in enumerate(spec.a_branches, start=1):
        grow_branch(0, Side.A, i, length)
    prev = 0
    for j in range(1, c):
        label = VertexLabel(Side.SPINE, 0, j)
        labels.append(label)
        index[label] = idx
        adjacency[prev].append(idx)
        adjacency[idx].append(prev)
        prev = idx
        idx += 1
    adjacency[prev].append(1)
    adjacency[1].append(prev)
    for i, length in enumerate(spec.b_branches, start=1):
        grow_branch(1, Side.B, i, length)

    return TreeGraph(n, tuple(map(tuple, adjacency)), tuple(labels), index)


def build_tree(spec: TreeSpec) -> TreeGraph:
    if isinstance(spec, StarlikeSpec):
        return build_starlike(spec)
    return build_double_starlike(spec)


def parse_spec(text: str) -> TreeSpec:
    """Parse ``S:A1,...,Ak`` or ``DS:C;A1,...,Ak;B1,...,Bm``."""
    text = text.strip()
    try:
        head, _, body = text.partition(":")
        if head == "S":
            return StarlikeSpec(tuple(int(p) for p in body.split(",")))
        if head == "DS":
            c_part, a_part, b_part = body.split(";")
            return DoubleStarlikeSpec(
                int(c_part),
                tuple(int(p) for p in a_part.split(",")),
                tuple(int(p) for p in b_part.split(",")),
            )
    except ValueError as exc:
        raise ValueError(f"malformed tree spec {text!r}: {exc}") from None
    raise ValueError(f"malformed tree spec {text!r}: expected 'S:' or 'DS:' prefix")


def format_spec(spec: TreeSpec) -> str:
    return str(spec)
