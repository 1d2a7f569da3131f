from collections import deque

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from ti_trees.trees import (
    DoubleStarlikeSpec,
    Side,
    StarlikeSpec,
    VertexLabel,
    build_double_starlike,
    build_starlike,
    build_tree,
    format_spec,
    normalize_double_starlike,
    order_double_starlike,
    order_starlike,
    parse_spec,
)

from conftest import nx_transmissions, to_networkx


@pytest.mark.parametrize(
    "branches,n",
    [((7, 6, 3, 1), 18), ((1, 1, 1), 4), ((1, 4, 5), 11)],
)
def test_order_starlike(branches, n):
    assert order_starlike(StarlikeSpec(branches)) == n


@pytest.mark.parametrize(
    "c,a,b,n",
    [(1, (6, 5), (2, 1), 16), (1, (1, 1), (1, 1), 6), (4, (2, 1), (2, 1), 11)],
)
def test_order_double_starlike(c, a, b, n):
    assert order_double_starlike(DoubleStarlikeSpec(c, a, b)) == n


@pytest.mark.parametrize(
    "bad",
    [lambda: StarlikeSpec((1, 1)), lambda: StarlikeSpec((1, 0, 2))],
)
def test_starlike_spec_rejects(bad):
    with pytest.raises(ValueError):
        bad()


@pytest.mark.parametrize(
    "bad",
    [
        lambda: DoubleStarlikeSpec(0, (1, 1), (1, 1)),
        lambda: DoubleStarlikeSpec(1, (1,), (1, 1)),
        lambda: DoubleStarlikeSpec(1, (1, 1), (2,)),
        lambda: DoubleStarlikeSpec(1, (1, 1), (1, 0)),
    ],
)
def test_double_spec_rejects(bad):
    with pytest.raises(ValueError):
        bad()


def _degrees(g):
    return sorted(g.degree(i) for i in range(g.n))


def test_build_star():
    g = build_starlike(StarlikeSpec((1, 1, 1)))
    assert g.n == 4
    assert g.degree(g.index_of(VertexLabel(Side.A, 1, 0))) == 3


def test_build_starlike_single_hub():
    g = build_starlike(StarlikeSpec((7, 6, 3, 1)))
    assert g.n == 18
    assert _degrees(g).count(4) == 1
    assert max(_degrees(g)) == 4


def test_build_starlike_leaf_distance():
    g = build_starlike(StarlikeSpec((1, 2, 3)))
    assert g.n == 7
    hub = g.index_of(VertexLabel(Side.A, 1, 0))
    leaf = g.index_of(VertexLabel(Side.A, 3, 3))
    assert nx.shortest_path_length(to_networkx(g), hub, leaf) == 3


def test_build_double_starlike_two_hubs():
    g = build_double_starlike(DoubleStarlikeSpec(1, (6, 5), (2, 1)))
    assert g.n == 16
    assert _degrees(g).count(3) == 2
    assert max(_degrees(g)) == 3


def test_build_double_hub_distance():
    g = build_double_starlike(DoubleStarlikeSpec(2, (1, 1), (1, 1)))
    assert g.n == 7
    hub_a = g.index_of(VertexLabel(Side.SPINE, 0, 0))
    hub_b = g.index_of(VertexLabel(Side.SPINE, 0, 2))
    assert nx.shortest_path_length(to_networkx(g), hub_a, hub_b) == 2


def test_build_double_swap_isomorphic():
    spec = DoubleStarlikeSpec(1, (2, 1), (2, 1))
    g = build_double_starlike(spec)
    swapped = build_double_starlike(DoubleStarlikeSpec(1, spec.b_branches, spec.a_branches))
    assert g.n == swapped.n == 8
    assert sorted(nx_transmissions(g)) == sorted(nx_transmissions(swapped))
    assert nx.is_isomorphic(to_networkx(g), to_networkx(swapped))


def test_normalize():
    swapped = normalize_double_starlike(DoubleStarlikeSpec(1, (2, 1), (6, 5)))
    assert swapped == DoubleStarlikeSpec(1, (6, 5), (2, 1))
    kept = DoubleStarlikeSpec(1, (6, 5), (2, 1))
    assert normalize_double_starlike(kept) is kept
    tie = DoubleStarlikeSpec(3, (2, 2), (2, 2))
    assert normalize_double_starlike(tie) is tie
    assert normalize_double_starlike(normalize_double_starlike(swapped)) == swapped


def test_normalized_builds_isomorphic_tree():
    spec = DoubleStarlikeSpec(2, (1, 3), (4, 2))
    norm = normalize_double_starlike(spec)
    assert sorted(nx_transmissions(build_tree(spec))) == sorted(
        nx_transmissions(build_tree(norm))
    )


def _assert_valid_tree(g, expected_hubs):
    # connected with exactly n-1 edges
    assert g.edge_count() == g.n - 1
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in g.neighbors[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    assert len(seen) == g.n
    assert sum(1 for i in range(g.n) if g.degree(i) > 2) == expected_hubs
    # canonical labels are a bijection with the vertices
    assert len(set(g.labels)) == g.n
    assert sorted(g.index_of(lab) for lab in g.labels) == list(range(g.n))


branch_lists = st.lists(st.integers(1, 7), min_size=3, max_size=5)


@given(branch_lists)
def test_starlike_build_invariants(branches):
    spec = StarlikeSpec(tuple(branches))
    g = build_starlike(spec)
    assert g.n == spec.order
    _assert_valid_tree(g, expected_hubs=1)
    # every (i, j) label resolves, with position 0 aliased to the hub
    hub = g.index_of(VertexLabel(Side.A, 1, 0))
    for i, length in enumerate(spec.branches, start=1):
        assert g.index_of(VertexLabel(Side.A, i, 0)) == hub
        for j in range(1, length + 1):
            g.index_of(VertexLabel(Side.A, i, j))
    with pytest.raises(ValueError):
        g.index_of(VertexLabel(Side.B, 1, 1))


@given(
    st.integers(1, 5),
    st.lists(st.integers(1, 5), min_size=2, max_size=3),
    st.lists(st.integers(1, 5), min_size=2, max_size=3),
)
def test_double_build_invariants(c, a, b):
    spec = DoubleStarlikeSpec(c, tuple(a), tuple(b))
    g = build_double_starlike(spec)
    assert g.n == spec.order
    # hubs have degree k+1 and m+1: count vertices of degree > 2 accordingly
    hub_a = g.index_of(VertexLabel(Side.SPINE, 0, 0))
    hub_b = g.index_of(VertexLabel(Side.SPINE, 0, spec.c))
    assert g.degree(hub_a) == spec.k + 1
    assert g.degree(hub_b) == spec.m + 1
    _assert_valid_tree(g, expected_hubs=2)
    for i in range(1, spec.k + 1):
        assert g.index_of(VertexLabel(Side.A, i, 0)) == hub_a
    for i in range(1, spec.m + 1):
        assert g.index_of(VertexLabel(Side.B, i, 0)) == hub_b


@pytest.mark.parametrize("text", ["S:7,6,3,1", "DS:1;6,5;2,1", "S:1,4,5", "DS:4;2,1;2,1"])
def test_parse_format_round_trip(text):
    assert format_spec(parse_spec(text)) == text


@pytest.mark.parametrize("text", ["", "S:", "X:1,2,3", "DS:1;2,3", "S:1,2", "DS:0;1,1;1,1"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_spec(text)
