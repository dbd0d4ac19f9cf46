import pytest

from burntpancake import bp_graph
from burntpancake.bp_graph import (
    CapabilityError,
    bfs_ball,
    cross_edge_count,
    cross_edges,
    distance,
    edge_count,
    edge_dimension,
    last_symbol,
    neighbors,
    out_neighbor,
    subgraph_embed,
    subgraph_indices,
    subgraph_lift,
    vertex_count,
)
from burntpancake.signed_perm import all_vertices, identity, prefix_reversal


def test_neighbors_of_identity():
    assert set(neighbors((1, 2, 3))) == {(-1, 2, 3), (-2, -1, 3), (-3, -2, -1)}


def test_regular_degree():
    for u in ((1, 2, 3), (-3, 1, -2), (2, -4, 1, 3)):
        ns = neighbors(u)
        assert len(ns) == len(set(ns)) == len(u)
        assert u not in ns


def test_last_symbol():
    assert last_symbol((-1, 3, -2)) == -2
    assert last_symbol(identity(5)) == 5
    u = (2, -4, 1, 3)
    for k in range(1, 4):
        assert last_symbol(prefix_reversal(u, k)) == last_symbol(u)


def test_out_neighbor():
    s = (-1, 3, -2)
    assert out_neighbor(s) == (2, -3, 1)
    for u in ((1, 2, 3), (-3, 1, -2), (2, -4, 1, 3)):
        assert out_neighbor(out_neighbor(u)) == u
        assert last_symbol(out_neighbor(u)) == -u[0]


def test_vertex_and_edge_counts_enumerated():
    for n in range(1, 6):
        verts = all_vertices(n)
        assert len(verts) == vertex_count(n)
        seen = set()
        for v in verts:
            for w in neighbors(v):
                seen.add(bp_graph.edge_key(v, w))
        assert len(seen) == edge_count(n)


def test_cross_edges_example_n3():
    edges = cross_edges(3, 1, 3)
    assert edges == [
        ((-3, -2, 1), (-1, 2, 3)),
        ((-3, 2, 1), (-1, -2, 3)),
    ]
    assert len(edges) == cross_edge_count(3) == 2


def test_cross_edges_complementary_empty():
    assert cross_edges(3, 1, -1) == []
    assert cross_edges(4, -2, 2) == []


def test_cross_edges_same_subgraph_rejected():
    with pytest.raises(ValueError):
        cross_edges(3, 1, 1)


def test_cross_edges_counts():
    assert len(cross_edges(4, 1, 2)) == 8
    for n in (3, 4, 5):
        want = cross_edge_count(n)
        for i in subgraph_indices(n):
            for j in subgraph_indices(n):
                if i == j:
                    continue
                got = len(cross_edges(n, i, j))
                assert got == (0 if i == -j else want), (n, i, j)


def test_cross_edges_endpoints_live_in_right_subgraphs():
    for u, v in cross_edges(4, -2, 3):
        assert last_symbol(u) == -2
        assert last_symbol(v) == 3
        assert out_neighbor(u) == v


def test_distance():
    assert distance((1, 2, 3), (1, 2, 3)) == 0
    u = (2, -3, 1)
    for k in range(1, 4):
        assert distance(u, prefix_reversal(u, k)) == 1
    assert distance((1, 2, 3), (3, 2, 1)) == 5


def test_distance_capability_limit():
    with pytest.raises(CapabilityError):
        distance(identity(7), identity(7))


def test_out_neighbors_within_distance_two_land_apart():
    # any two vertices at distance <= 2 have out-neighbors in different
    # subgraphs (n = 3 here; the n = 4 sweep lives in the acceptance suite)
    for u in all_vertices(3):
        for v, d in bfs_ball(u, 2).items():
            if v == u:
                continue
            assert last_symbol(out_neighbor(u)) != last_symbol(out_neighbor(v))


def test_out_neighbors_of_splice_pattern_land_apart():
    # the separation the constructions actually rely on at distance 3: an
    # in-subgraph neighbor of x versus an in-subgraph neighbor of x's
    # out-neighbor always exit into different subgraphs
    for x in all_vertices(3):
        nx = out_neighbor(x)
        for k1 in range(1, 3):
            t = prefix_reversal(x, k1)
            for k2 in range(1, 3):
                z = prefix_reversal(nx, k2)
                assert last_symbol(out_neighbor(t)) != last_symbol(out_neighbor(z))


def test_distance_three_separation_has_exceptions():
    # the blanket claim at distance exactly 3 is false: vertices in
    # different subgraphs can share an out-neighbor subgraph
    u, v = (-3, -2, -1), (-3, -2, 1)
    assert last_symbol(u) != last_symbol(v)
    assert distance(u, v) == 3
    assert last_symbol(out_neighbor(u)) == last_symbol(out_neighbor(v))


def test_connected_n_up_to_5():
    for n in (2, 3, 4, 5):
        assert len(bfs_ball(identity(n), 10**9)) == vertex_count(n)


def test_not_bipartite_n3():
    # attempt a 2-coloring; some edge must join equal colors
    color = {identity(3): 0}
    queue = [identity(3)]
    conflict = False
    while queue:
        u = queue.pop()
        for w in neighbors(u):
            if w not in color:
                color[w] = 1 - color[u]
                queue.append(w)
            elif color[w] == color[u]:
                conflict = True
    assert conflict


def test_subgraph_embed_lift_round_trip():
    for n in (3, 4):
        for u in all_vertices(n):
            i = last_symbol(u)
            v = subgraph_embed(u)
            assert len(v) == n - 1
            assert subgraph_lift(i, v) == u


def test_subgraph_embed_examples():
    assert subgraph_embed((1, 2, 3)) == (1, 2)
    assert subgraph_embed((3, -4, 1, -2)) == (2, -3, 1)


def test_subgraph_embed_preserves_adjacency_exhaustive():
    # the 8-vertex subgraph of BP_3 with last symbol 1 maps onto BP_2
    sub = [u for u in all_vertices(3) if last_symbol(u) == 1]
    assert len(sub) == 8
    for u in sub:
        for v in sub:
            if u == v:
                continue
            inner = bp_graph.is_adjacent(u, v)
            outer = bp_graph.is_adjacent(subgraph_embed(u), subgraph_embed(v))
            assert inner == outer


def test_edge_dimension():
    u = (1, 2, 3)
    assert edge_dimension(u, (-1, 2, 3)) == 1
    assert edge_dimension(u, (-3, -2, -1)) == 3
    with pytest.raises(ValueError):
        edge_dimension(u, (3, 2, 1))
