"""Canonical 46-vertex cycles of BP_3 minus one matching pair.

One fixture per generator dimension k: ``PAIR_CYCLES[k]`` is a Hamiltonian
cycle of BP_3 minus the pair {identity, generator(3, k)}.  Arbitrary
single-pair instances reduce to these by left translation, since left
translations are graph automorphisms and act transitively on vertices.
Validated on import; the data is load-bearing for the base-case solver.
"""

from __future__ import annotations

from .signed_perm import Vertex, generator, identity

# Pair {123, -1 2 3} (k = 1).
_CYCLE_K1: tuple[Vertex, ...] = (
    (-2, -1, 3), (2, -1, 3), (-3, 1, -2), (3, 1, -2), (-1, -3, -2),
    (1, -3, -2), (3, -1, -2), (2, 1, -3), (-1, -2, -3), (3, 2, 1),
    (-2, -3, 1), (-1, 3, 2), (1, 3, 2), (-3, -1, 2), (-2, 1, 3),
    (2, 1, 3), (-3, -1, -2), (1, 3, -2), (-1, 3, -2), (2, -3, 1),
    (3, -2, 1), (-3, -2, 1), (2, 3, 1), (-2, 3, 1), (-3, 2, 1),
    (-1, -2, 3), (1, -2, 3), (-3, 2, -1), (-2, 3, -1), (2, 3, -1),
    (-3, -2, -1), (3, -2, -1), (2, -3, -1), (-2, -3, -1), (3, 2, -1),
    (1, -2, -3), (2, -1, -3), (-2, -1, -3), (1, 2, -3), (-1, 2, -3),
    (-2, 1, -3), (3, -1, 2), (1, -3, 2), (-1, -3, 2), (3, 1, 2),
    (-3, 1, 2),
)

# Pair {123, -2 -1 3} (k = 2).
_CYCLE_K2: tuple[Vertex, ...] = (
    (-1, 2, 3), (-3, -2, 1), (2, 3, 1), (-1, -3, -2), (3, 1, -2),
    (2, -1, -3), (-2, -1, -3), (1, 2, -3), (-1, 2, -3), (3, -2, 1),
    (2, -3, 1), (-1, 3, -2), (-3, 1, -2), (2, -1, 3), (1, -2, 3),
    (-3, 2, -1), (-2, 3, -1), (1, -3, 2), (3, -1, 2), (-2, 1, -3),
    (2, 1, -3), (3, -1, -2), (1, -3, -2), (2, 3, -1), (-3, -2, -1),
    (3, -2, -1), (2, -3, -1), (1, 3, -2), (-3, -1, -2), (2, 1, 3),
    (-1, -2, 3), (-3, 2, 1), (-2, 3, 1), (-1, -3, 2), (3, 1, 2),
    (-3, 1, 2), (-1, 3, 2), (-2, -3, 1), (3, 2, 1), (-1, -2, -3),
    (1, -2, -3), (3, 2, -1), (-2, -3, -1), (1, 3, 2), (-3, -1, 2),
    (-2, 1, 3),
)

# Pair {123, -3 -2 -1} (k = 3).
_CYCLE_K3: tuple[Vertex, ...] = (
    (-2, -1, 3), (2, -1, 3), (1, -2, 3), (-1, -2, 3), (2, 1, 3),
    (-2, 1, 3), (-1, 2, 3), (-3, -2, 1), (3, -2, 1), (-1, 2, -3),
    (-2, 1, -3), (2, 1, -3), (3, -1, -2), (-3, -1, -2), (1, 3, -2),
    (2, -3, -1), (3, -2, -1), (1, 2, -3), (-2, -1, -3), (3, 1, 2),
    (-1, -3, 2), (1, -3, 2), (3, -1, 2), (-3, -1, 2), (1, 3, 2),
    (-2, -3, -1), (3, 2, -1), (-3, 2, -1), (-2, 3, -1), (2, 3, -1),
    (1, -3, -2), (-1, -3, -2), (2, 3, 1), (-2, 3, 1), (-3, 2, 1),
    (3, 2, 1), (-1, -2, -3), (1, -2, -3), (2, -1, -3), (3, 1, -2),
    (-3, 1, -2), (-1, 3, -2), (2, -3, 1), (-2, -3, 1), (-1, 3, 2),
    (-3, 1, 2),
)

PAIR_CYCLES: dict[int, tuple[Vertex, ...]] = {1: _CYCLE_K1, 2: _CYCLE_K2, 3: _CYCLE_K3}


def _check() -> None:
    from .bp_graph import is_adjacent
    from .signed_perm import all_vertices

    everything = set(all_vertices(3))
    for k, cycle in PAIR_CYCLES.items():
        missing = {identity(3), generator(3, k)}
        if len(cycle) != 46 or len(set(cycle)) != 46:
            raise AssertionError(f"fixture k={k}: expected 46 distinct vertices")
        if set(cycle) != everything - missing:
            raise AssertionError(f"fixture k={k}: wrong vertex set")
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            if not is_adjacent(a, b):
                raise AssertionError(f"fixture k={k}: {a} and {b} not adjacent")


_check()
