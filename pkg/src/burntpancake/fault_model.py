"""Hybrid fault sets: matching-pair vertex faults plus faulty edges.

A fault set holds two kinds of elements.  A *matching pair* removes both
end-vertices of a matching edge from the graph; the underlying edges must
form a matching.  A *faulty edge* removes only the edge, and may not touch
any removed vertex.  ``|F|`` counts elements, not vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import bp_graph
from .signed_perm import Vertex, check_vertex, format_vertex

Pair = tuple[Vertex, Vertex]  # sorted vertex pair


def _canon_pair(a: Iterable[int], b: Iterable[int], n: int) -> Pair:
    va, vb = check_vertex(a, n), check_vertex(b, n)
    return (va, vb) if va <= vb else (vb, va)


@dataclass(frozen=True)
class FaultSet:
    """Immutable, canonically ordered hybrid fault set for ``BP_n``."""

    n: int
    matching_pairs: tuple[Pair, ...] = ()
    faulty_edges: tuple[Pair, ...] = ()

    @staticmethod
    def build(
        n: int,
        matching_pairs: Sequence[Sequence[Iterable[int]]] = (),
        faulty_edges: Sequence[Sequence[Iterable[int]]] = (),
    ) -> "FaultSet":
        pairs = tuple(sorted(_canon_pair(a, b, n) for a, b in matching_pairs))
        edges = tuple(sorted(_canon_pair(a, b, n) for a, b in faulty_edges))
        return FaultSet(n, pairs, edges)

    @property
    def size(self) -> int:
        return len(self.matching_pairs) + len(self.faulty_edges)

    def removed_vertices(self) -> frozenset[Vertex]:
        """V(F^mv): vertices deleted from the graph."""
        return frozenset(v for pair in self.matching_pairs for v in pair)

    def fault_vertices(self) -> frozenset[Vertex]:
        """V(F): removed vertices plus faulty-edge endpoints."""
        out = set(self.removed_vertices())
        for a, b in self.faulty_edges:
            out.add(a)
            out.add(b)
        return frozenset(out)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "matching_pairs": [[list(a), list(b)] for a, b in self.matching_pairs],
            "faulty_edges": [[list(a), list(b)] for a, b in self.faulty_edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @staticmethod
    def from_json_dict(data: dict) -> "FaultSet":
        try:
            n = int(data["n"])
            pairs = data.get("matching_pairs", [])
            edges = data.get("faulty_edges", [])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed fault set object: {exc}") from exc
        return FaultSet.build(n, pairs, edges)

    @staticmethod
    def from_json(text: str) -> "FaultSet":
        return FaultSet.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class Violation:
    kind: str
    element: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} {self.element}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...] = ()


def validate(fault_set: FaultSet, bound: int | None = None) -> ValidationReport:
    """Check all fault-set invariants; returns violations instead of raising."""
    bad: list[Violation] = []
    n = fault_set.n

    def describe(pair: Pair) -> str:
        return f"({format_vertex(pair[0])} | {format_vertex(pair[1])})"

    seen_vertices: set[Vertex] = set()
    for a, b in fault_set.matching_pairs:
        label = describe((a, b))
        if not bp_graph.is_adjacent(a, b):
            bad.append(Violation("pair-not-an-edge", label, "end-vertices are not adjacent"))
        for v in (a, b):
            if v in seen_vertices:
                bad.append(Violation("not-a-matching", label, f"vertex {format_vertex(v)} reused"))
            seen_vertices.add(v)

    removed = fault_set.removed_vertices()
    seen_edges = {bp_graph.edge_key(a, b) for a, b in fault_set.matching_pairs}
    for a, b in fault_set.faulty_edges:
        label = describe((a, b))
        if not bp_graph.is_adjacent(a, b):
            bad.append(Violation("edge-not-an-edge", label, "endpoints are not adjacent"))
            continue
        key = bp_graph.edge_key(a, b)
        if key in seen_edges:
            bad.append(Violation("duplicate-edge", label, "edge already declared faulty or matched"))
        seen_edges.add(key)
        for v in (a, b):
            if v in removed:
                bad.append(
                    Violation("edge-touches-removed", label, f"endpoint {format_vertex(v)} is a removed vertex")
                )

    if bound is not None and fault_set.size > bound:
        bad.append(Violation("budget-exceeded", f"|F|={fault_set.size}", f"exceeds bound {bound}"))

    return ValidationReport(ok=not bad, violations=tuple(bad))


def fault_vertices(fault_set: FaultSet) -> tuple[frozenset[Vertex], frozenset[Vertex]]:
    """(V(F^mv), V(F)): removed vertices, and all fault-touched vertices."""
    return fault_set.removed_vertices(), fault_set.fault_vertices()


@dataclass(frozen=True)
class FaultRestriction:
    """Per-subgraph split of a fault set.

    ``intra`` maps each subgraph index to the elements whose carrier edge
    lies inside that subgraph.  Elements with an n-dimensional carrier
    straddle two subgraphs: they belong to no single restriction and are
    listed separately, with their endpoints still to be avoided per side.
    """

    intra_pairs: dict[int, tuple[Pair, ...]] = field(default_factory=dict)
    intra_edges: dict[int, tuple[Pair, ...]] = field(default_factory=dict)
    straddling_pairs: tuple[Pair, ...] = ()
    straddling_edges: tuple[Pair, ...] = ()

    def size(self, i: int) -> int:
        return len(self.intra_pairs.get(i, ())) + len(self.intra_edges.get(i, ()))


def restriction(fault_set: FaultSet) -> FaultRestriction:
    pairs: dict[int, list[Pair]] = {}
    edges: dict[int, list[Pair]] = {}
    spairs: list[Pair] = []
    sedges: list[Pair] = []
    for a, b in fault_set.matching_pairs:
        if a[-1] == b[-1]:
            pairs.setdefault(a[-1], []).append((a, b))
        else:
            spairs.append((a, b))
    for a, b in fault_set.faulty_edges:
        if a[-1] == b[-1]:
            edges.setdefault(a[-1], []).append((a, b))
        else:
            sedges.append((a, b))
    return FaultRestriction(
        intra_pairs={i: tuple(v) for i, v in pairs.items()},
        intra_edges={i: tuple(v) for i, v in edges.items()},
        straddling_pairs=tuple(spairs),
        straddling_edges=tuple(sedges),
    )


def restrict(fault_set: FaultSet, i: int) -> tuple[tuple[Pair, ...], tuple[Pair, ...]]:
    """(pairs, edges) of F whose carrier lies inside subgraph ``i``."""
    r = restriction(fault_set)
    return r.intra_pairs.get(i, ()), r.intra_edges.get(i, ())
