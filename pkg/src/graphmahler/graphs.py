"""Finite and d-periodic edge-weighted graphs via their quotient presentation.

A d-periodic graph is presented by its finite quotient: ``n`` vertex orbits
and a list of weighted edge orbits, each carrying a shift in Z^d recording
how the edge winds between translates.  ``dim == 0`` degenerates to an
ordinary finite graph (all shifts are the empty tuple).

The file format is JSON with fields ``dim``, ``vertex_orbits`` and
``edges`` (records ``{"from": i, "to": j, "shift": [s1..sd], "weight": w}``,
one-based vertex indices).  This is the single ingestion point for the CLI
and the test corpus.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError
from .intmat import smith_normal_form
from .laurent import LaurentMatrix, LaurentPoly, det_laurent


@dataclass(frozen=True)
class EdgeOrbit:
    """One orbit of edges: tail/head vertex-orbit indices (1-based), a shift
    in Z^d and a nonzero integer weight."""

    tail: int
    head: int
    shift: tuple[int, ...]
    weight: int

    def canonical(self) -> "EdgeOrbit":
        """Undirected representative: tail <= head; for tail == head the
        first nonzero shift coordinate is positive."""
        tail, head, shift = self.tail, self.head, self.shift
        if tail > head:
            tail, head = head, tail
            shift = tuple(-s for s in shift)
        elif tail == head:
            for s in shift:
                if s > 0:
                    break
                if s < 0:
                    shift = tuple(-x for x in shift)
                    break
        return EdgeOrbit(tail, head, shift, self.weight)

    def is_true_loop(self) -> bool:
        return self.tail == self.head and all(s == 0 for s in self.shift)


class PeriodicGraph:
    """Quotient presentation of a d-periodic weighted graph (immutable)."""

    __slots__ = ("dim", "n_orbits", "edges")

    def __init__(self, dim: int, n_orbits: int, edges: Iterable[EdgeOrbit]):
        if dim < 0:
            raise InputError("dimension must be >= 0")
        if n_orbits < 1:
            raise InputError("vertex orbit count must be >= 1")
        kept = []
        for e in edges:
            if not 1 <= e.tail <= n_orbits or not 1 <= e.head <= n_orbits:
                raise InputError(f"edge {e} has a vertex index outside 1..{n_orbits}")
            if len(e.shift) != dim:
                raise InputError(f"edge {e} has shift length {len(e.shift)}, expected {dim}")
            if e.weight == 0:
                raise InputError(f"edge {e} has zero weight")
            e = e.canonical()
            if e.is_true_loop():
                continue  # true loops never affect the Laplacian
            kept.append(e)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "n_orbits", n_orbits)
        object.__setattr__(self, "edges", tuple(kept))

    def __setattr__(self, name, value):
        raise AttributeError("PeriodicGraph is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, PeriodicGraph)
            and self.dim == other.dim
            and self.n_orbits == other.n_orbits
            and sorted(self.edges, key=_edge_key) == sorted(other.edges, key=_edge_key)
        )

    def __hash__(self):
        return hash((self.dim, self.n_orbits, tuple(sorted(self.edges, key=_edge_key))))

    def __repr__(self):
        return f"PeriodicGraph(dim={self.dim}, n_orbits={self.n_orbits}, edges={len(self.edges)})"

    def is_unweighted(self) -> bool:
        return all(e.weight == 1 for e in self.edges)


def _edge_key(e: EdgeOrbit):
    return (e.tail, e.head, e.shift, e.weight)


# -- file format --------------------------------------------------------


def graph_from_dict(doc: dict) -> PeriodicGraph:
    try:
        dim = int(doc["dim"])
        n = int(doc["vertex_orbits"])
        raw_edges = doc["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed graph document: {exc}") from None
    edges = []
    for rec in raw_edges:
        try:
            edges.append(
                EdgeOrbit(
                    tail=int(rec["from"]),
                    head=int(rec["to"]),
                    shift=tuple(int(s) for s in rec.get("shift", [])),
                    weight=int(rec["weight"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed edge record {rec!r}: {exc}") from None
    return PeriodicGraph(dim, n, edges)


def graph_to_dict(g: PeriodicGraph) -> dict:
    return {
        "dim": g.dim,
        "vertex_orbits": g.n_orbits,
        "edges": [
            {"from": e.tail, "to": e.head, "shift": list(e.shift), "weight": e.weight}
            for e in sorted(g.edges, key=_edge_key)
        ],
    }


def parse_graph(text: str) -> PeriodicGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"graph file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("graph document must be a JSON object")
    return graph_from_dict(doc)


def serialize_graph(g: PeriodicGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=2) + "\n"


# -- constructions ------------------------------------------------------


def grid_graph(d: int) -> PeriodicGraph:
    """The d-dimensional grid lattice: one vertex orbit, one unit-shift loop
    orbit per coordinate direction."""
    if d < 1:
        raise InputError("grid graph needs d >= 1")
    edges = []
    for i in range(d):
        shift = tuple(1 if j == i else 0 for j in range(d))
        edges.append(EdgeOrbit(1, 1, shift, 1))
    return PeriodicGraph(d, 1, edges)


def disjoint_union(a: PeriodicGraph, b: PeriodicGraph) -> PeriodicGraph:
    if a.dim != b.dim:
        raise InputError("disjoint union requires equal dimensions")
    offset = a.n_orbits
    edges = list(a.edges) + [
        EdgeOrbit(e.tail + offset, e.head + offset, e.shift, e.weight) for e in b.edges
    ]
    return PeriodicGraph(a.dim, a.n_orbits + b.n_orbits, edges)


# -- Laplacian ----------------------------------------------------------


def laplacian_matrix(g: PeriodicGraph) -> LaurentMatrix:
    """The n x n matrix delta - A over Z[x1^{+-1}, ..., xd^{+-1}].

    A self-orbit edge with shift s contributes x^s + x^{-s} to its row's
    adjacency and is counted twice in the weighted degree; the diagonal is
    the weighted degree minus those self-adjacency terms.
    """
    n, d = g.n_orbits, g.dim
    zero = LaurentPoly.zero(d)
    adj = [[zero for _ in range(n)] for _ in range(n)]
    degree = [0] * n
    for e in g.edges:
        i, j = e.tail - 1, e.head - 1
        mono = LaurentPoly.monomial(d, e.shift, e.weight)
        if i == j:
            adj[i][i] = adj[i][i] + mono + mono.involute()
            degree[i] += 2 * e.weight
        else:
            adj[i][j] = adj[i][j] + mono
            adj[j][i] = adj[j][i] + mono.involute()
            degree[i] += e.weight
            degree[j] += e.weight
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(LaurentPoly.constant(degree[i], d) - adj[i][i])
            else:
                row.append(-adj[i][j])
        rows.append(row)
    return LaurentMatrix(rows)


def laplacian_polynomial(g: PeriodicGraph) -> LaurentPoly:
    """det(delta - A), the Laplacian determinant polynomial."""
    return det_laurent(laplacian_matrix(g))


def integer_laplacian(g: PeriodicGraph) -> list[list[int]]:
    """Integer Laplacian of a finite graph (dim 0), as rows of ints."""
    if g.dim != 0:
        raise InputError("integer Laplacian requires a finite (dim 0) graph")
    matrix = laplacian_matrix(g)
    return [[entry.constant_coefficient() for entry in row] for row in matrix.rows]


# -- components and monodromy -------------------------------------------


@dataclass(frozen=True)
class ComponentInfo:
    """Connectivity of the quotient graph plus per-component monodromy.

    ``monodromy_ranks[k]`` is the rank of the subgroup of Z^d generated by
    the net shifts around cycles of component ``k``; a component is closed
    exactly when that rank is zero.
    """

    component_vertex_sets: tuple[tuple[int, ...], ...]
    monodromy_ranks: tuple[int, ...]

    @property
    def is_closed(self) -> tuple[bool, ...]:
        return tuple(r == 0 for r in self.monodromy_ranks)

    def has_closed_component(self) -> bool:
        return any(self.is_closed)


def component_orbits(g: PeriodicGraph) -> ComponentInfo:
    """Connected components of the quotient graph with monodromy ranks.

    Each component gets Z^d-valued potentials along a spanning tree; the
    defect of every non-tree edge (and of every self-orbit edge) generates
    the component's monodromy subgroup.
    """
    n, d = g.n_orbits, g.dim
    neighbors: dict[int, list[tuple[int, tuple[int, ...], int]]] = {i: [] for i in range(1, n + 1)}
    for idx, e in enumerate(g.edges):
        if e.tail != e.head:
            neighbors[e.tail].append((e.head, e.shift, idx))
            neighbors[e.head].append((e.tail, tuple(-s for s in e.shift), idx))
    seen: dict[int, tuple[int, ...]] = {}
    comp_sets: list[tuple[int, ...]] = []
    ranks: list[int] = []
    for start in range(1, n + 1):
        if start in seen:
            continue
        potentials = {start: (0,) * d}
        tree_edges: set[int] = set()
        stack = [start]
        members = []
        while stack:
            v = stack.pop()
            members.append(v)
            for (w, shift, idx) in neighbors[v]:
                if w not in potentials:
                    potentials[w] = tuple(a + b for a, b in zip(potentials[v], shift))
                    tree_edges.add(idx)
                    stack.append(w)
        defects = []
        member_set = set(members)
        for idx, e in enumerate(g.edges):
            if e.tail not in member_set:
                continue
            if e.tail == e.head:
                defects.append(list(e.shift))
            elif idx not in tree_edges:
                defect = tuple(
                    a + b - c
                    for a, b, c in zip(potentials[e.tail], e.shift, potentials[e.head])
                )
                if any(defect):
                    defects.append(list(defect))
        rank = smith_normal_form(defects).rank if defects else 0
        seen.update(potentials)
        comp_sets.append(tuple(sorted(members)))
        ranks.append(rank)
    return ComponentInfo(tuple(comp_sets), tuple(ranks))
