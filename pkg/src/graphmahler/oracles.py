"""Independent brute-force oracles for the determinant and complexity
pipelines: exhaustive spanning-tree sums and cycle-rooted spanning forest
(CRSF) enumeration.

These live in the shipped library, not in the tests, so the CLI can expose
``oracle-check`` on user-supplied graphs.  They are deliberately slow and
refuse inputs beyond desk scale.
"""

from __future__ import annotations

from itertools import combinations

from .errors import InputError, SizeRefusalError
from .graphs import PeriodicGraph, component_orbits
from .laurent import LaurentPoly

_TREE_VERTEX_LIMIT = 12
_TREE_EDGE_LIMIT = 20
_CRSF_EDGE_LIMIT = 10


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def spanning_tree_sum(graph: PeriodicGraph) -> int:
    """|sum over spanning trees of the product of edge weights|, by
    exhaustive enumeration over (n-1)-edge subsets."""
    if graph.dim != 0:
        raise InputError("spanning tree enumeration needs a finite graph")
    n = graph.n_orbits
    edges = graph.edges
    if n > _TREE_VERTEX_LIMIT or len(edges) > _TREE_EDGE_LIMIT:
        raise SizeRefusalError(
            f"spanning tree enumeration refused: {n} vertices / {len(edges)} edges "
            f"(limits {_TREE_VERTEX_LIMIT}/{_TREE_EDGE_LIMIT})"
        )
    info = component_orbits(graph)
    if len(info.component_vertex_sets) != 1:
        raise InputError("spanning tree enumeration needs a connected graph")
    if n == 1:
        return 1
    total = 0
    for subset in combinations(range(len(edges)), n - 1):
        uf = _UnionFind(range(1, n + 1))
        weight = 1
        ok = True
        for idx in subset:
            e = edges[idx]
            if not uf.union(e.tail, e.head):
                ok = False
                break
            weight *= e.weight
        if ok:
            total += weight
    return abs(total)


def crsf_polynomial(g: PeriodicGraph) -> LaurentPoly:
    """Sum over cycle-rooted spanning forests of the quotient graph of
    (product of edge weights) * (product over cycles of 2 - x^w - x^{-w}),
    where w is the net shift around the component's unique cycle.

    Must equal the Laplacian determinant polynomial up to sign.
    """
    edges = g.edges
    if len(edges) > _CRSF_EDGE_LIMIT:
        raise SizeRefusalError(
            f"CRSF enumeration refused: {len(edges)} edge orbits (limit {_CRSF_EDGE_LIMIT})"
        )
    n, d = g.n_orbits, g.dim
    total = LaurentPoly.zero(d)
    for subset in combinations(range(len(edges)), n):
        contribution = _crsf_contribution(g, subset)
        if contribution is not None:
            total = total + contribution
    return total


def _crsf_contribution(g: PeriodicGraph, subset) -> LaurentPoly | None:
    """Contribution of one edge subset, or None if it is not a CRSF."""
    n, d = g.n_orbits, g.dim
    chosen = [g.edges[i] for i in subset]
    adjacency: dict[int, list[tuple[int, tuple[int, ...], int]]] = {v: [] for v in range(1, n + 1)}
    for idx, e in enumerate(chosen):
        adjacency[e.tail].append((e.head, e.shift, idx))
        if e.tail != e.head:
            adjacency[e.head].append((e.tail, tuple(-s for s in e.shift), idx))
    seen: set[int] = set()
    weight = 1
    for e in chosen:
        weight *= e.weight
    result = LaurentPoly.constant(weight, d)
    for start in range(1, n + 1):
        if start in seen:
            continue
        # Walk the component, assigning Z^d potentials along a spanning tree.
        potentials = {start: (0,) * d}
        tree: set[int] = set()
        stack = [start]
        members = []
        while stack:
            v = stack.pop()
            members.append(v)
            for (w, shift, idx) in adjacency[v]:
                if idx in tree or w == v:
                    continue
                if w not in potentials:
                    potentials[w] = tuple(a + b for a, b in zip(potentials[v], shift))
                    tree.add(idx)
                    stack.append(w)
        seen.update(members)
        member_set = set(members)
        in_component = [(idx, e) for idx, e in enumerate(chosen) if e.tail in member_set]
        # Unicyclic component: exactly as many edges as vertices, which
        # leaves exactly one non-tree edge carrying the cycle.
        if len(in_component) != len(members):
            return None
        extra = [(idx, e) for idx, e in in_component if idx not in tree]
        if len(extra) != 1:
            return None
        _, e = extra[0]
        if e.tail == e.head:
            monodromy = e.shift
        else:
            monodromy = tuple(
                a + b - c for a, b, c in zip(potentials[e.tail], e.shift, potentials[e.head])
            )
        cycle = (
            LaurentPoly.constant(2, d)
            - LaurentPoly.monomial(d, monodromy)
            - LaurentPoly.monomial(d, tuple(-s for s in monodromy))
        )
        result = result * cycle
    return result
