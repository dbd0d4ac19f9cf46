"""Burnt pancake graph structure.

The graph is never materialized: neighbors are computed on demand from the
signed-permutation algebra.  Vertices with the same last symbol ``i`` form
the subgraph ``BP_n^i``, which is isomorphic to ``BP_{n-1}``; the recursion
in the constructor relies on :func:`subgraph_embed` / :func:`subgraph_lift`
realizing that isomorphism.
"""

from __future__ import annotations

from collections import deque
from itertools import permutations, product
from math import factorial

from .signed_perm import Vertex, check_vertex, prefix_reversal

# An edge is an unordered vertex pair, canonically stored sorted.
Edge = tuple[Vertex, Vertex]

DISTANCE_LIMIT = 6


class CapabilityError(Exception):
    """Raised when an operation exceeds its supported instance size."""


def neighbors(u: Vertex) -> list[Vertex]:
    """The n prefix-reversal neighbors of ``u``."""
    return [prefix_reversal(u, k) for k in range(1, len(u) + 1)]


def last_symbol(u: Vertex) -> int:
    return u[-1]


def out_neighbor(u: Vertex) -> Vertex:
    """The n-neighbor of ``u``; the unique neighbor outside u's subgraph."""
    return prefix_reversal(u, len(u))


def edge_key(u: Vertex, v: Vertex) -> Edge:
    return (u, v) if u <= v else (v, u)


def edge_dimension(u: Vertex, v: Vertex) -> int:
    """The k with ``v == prefix_reversal(u, k)``; ValueError if not adjacent."""
    for k in range(1, len(u) + 1):
        if prefix_reversal(u, k) == v:
            return k
    raise ValueError(f"not adjacent: {u!r}, {v!r}")


def is_adjacent(u: Vertex, v: Vertex) -> bool:
    if len(u) != len(v):
        return False
    try:
        edge_dimension(u, v)
    except ValueError:
        return False
    return True


def subgraph_indices(n: int) -> list[int]:
    """Canonical enumeration order of subgraph indices: 1, -1, 2, -2, ..."""
    out = []
    for a in range(1, n + 1):
        out.append(a)
        out.append(-a)
    return out


def index_sort_key(i: int) -> tuple[int, int]:
    """Sort key realizing the canonical subgraph index order."""
    return (abs(i), 0 if i > 0 else 1)


def vertex_count(n: int) -> int:
    return 2**n * factorial(n)


def edge_count(n: int) -> int:
    return n * factorial(n) * 2 ** (n - 1)


def cross_edge_count(n: int) -> int:
    """Edges between two non-complementary distinct subgraphs."""
    return factorial(n - 2) * 2 ** (n - 2)


def cross_edges(n: int, i: int, j: int) -> list[Edge]:
    """All edges between subgraphs i and j, as (i-side, j-side) pairs.

    Enumeration is in lexicographic order of the i-side endpoint.  Empty
    when j == -i; a ValueError when i == j.
    """
    for x in (i, j):
        if x == 0 or abs(x) > n:
            raise ValueError(f"subgraph index {x} out of range for n={n}")
    if i == j:
        raise ValueError(f"cross edges need distinct subgraphs, got {i} twice")
    if i == -j:
        return []
    rest = sorted(set(range(1, n + 1)) - {abs(i), abs(j)})
    sides: list[Vertex] = []
    for base in permutations(rest):
        for signs in product((1, -1), repeat=n - 2):
            middle = tuple(s * x for s, x in zip(signs, base))
            sides.append((-j,) + middle + (i,))
    sides.sort()
    return [(u, out_neighbor(u)) for u in sides]


def distance(u: Vertex, v: Vertex) -> int:
    """Shortest-path distance via breadth-first search (n <= 6 only)."""
    u = check_vertex(u)
    v = check_vertex(v, len(u))
    n = len(u)
    if n > DISTANCE_LIMIT:
        raise CapabilityError(f"distance supports n <= {DISTANCE_LIMIT}, got {n}")
    if u == v:
        return 0
    seen = {u: 0}
    queue = deque([u])
    while queue:
        cur = queue.popleft()
        d = seen[cur] + 1
        for w in neighbors(cur):
            if w == v:
                return d
            if w not in seen:
                seen[w] = d
                queue.append(w)
    raise RuntimeError("graph is connected; unreachable")  # pragma: no cover


def bfs_ball(u: Vertex, radius: int) -> dict[Vertex, int]:
    """All vertices within ``radius`` of ``u``, mapped to their distance."""
    seen = {u: 0}
    queue = deque([u])
    while queue:
        cur = queue.popleft()
        d = seen[cur]
        if d == radius:
            continue
        for w in neighbors(cur):
            if w not in seen:
                seen[w] = d + 1
                queue.append(w)
    return seen


def subgraph_embed(u: Vertex) -> Vertex:
    """Map ``u`` in ``BP_n^i`` to the corresponding vertex of ``BP_{n-1}``.

    Drops the last symbol and relabels each remaining absolute value to its
    rank within {1..n} minus |i|, preserving signs.  Prefix reversals with
    k < n commute with this relabeling, so it is a subgraph isomorphism.
    """
    i = u[-1]
    rest = sorted(set(range(1, len(u) + 1)) - {abs(i)})
    rank = {a: r for r, a in enumerate(rest, start=1)}
    return tuple(rank[abs(x)] * (1 if x > 0 else -1) for x in u[:-1])


def subgraph_lift(i: int, v: Vertex) -> Vertex:
    """Inverse of :func:`subgraph_embed` into subgraph ``i`` of ``BP_{len(v)+1}``."""
    n = len(v) + 1
    if i == 0 or abs(i) > n:
        raise ValueError(f"subgraph index {i} out of range for n={n}")
    rest = sorted(set(range(1, n + 1)) - {abs(i)})
    return tuple(rest[abs(x) - 1] * (1 if x > 0 else -1) for x in v) + (i,)
