"""Shared fixtures and random-instance generators for the test suite."""

from __future__ import annotations

import random

import pytest

from graphmahler import EdgeOrbit, LaurentPoly, PeriodicGraph, component_orbits


def four_orbit_graph() -> PeriodicGraph:
    """The 1-periodic graph on four vertex orbits whose Laplacian determinant
    is 9(x - 2 + x^{-1}) up to sign; its r=2 quotient is the 8-vertex graph
    with kappa = 9 and tau = 0."""
    return PeriodicGraph(
        1,
        4,
        [
            EdgeOrbit(1, 2, (0,), -1),
            EdgeOrbit(1, 2, (-1,), 1),
            EdgeOrbit(1, 3, (0,), -1),
            EdgeOrbit(1, 4, (-1,), 1),
            EdgeOrbit(2, 3, (0,), -1),
            EdgeOrbit(2, 4, (0,), 1),
        ],
    )


def lehmer_winding_graph() -> PeriodicGraph:
    """Single-orbit graph with windings 2 and 6 of weight +1 and windings 4
    and 5 of weight -1."""
    return PeriodicGraph(
        1,
        1,
        [
            EdgeOrbit(1, 1, (2,), 1),
            EdgeOrbit(1, 1, (6,), 1),
            EdgeOrbit(1, 1, (4,), -1),
            EdgeOrbit(1, 1, (5,), -1),
        ],
    )


def triangle_graph(weights=(1, 1, 1)) -> PeriodicGraph:
    w12, w13, w23 = weights
    return PeriodicGraph(
        0,
        3,
        [
            EdgeOrbit(1, 2, (), w12),
            EdgeOrbit(1, 3, (), w13),
            EdgeOrbit(2, 3, (), w23),
        ],
    )


@pytest.fixture
def ex_four_orbit():
    return four_orbit_graph()


@pytest.fixture
def lehmer_graph():
    return lehmer_winding_graph()


def random_laurent(rng: random.Random, dim: int, max_terms: int = 3,
                   exp_bound: int = 3, coeff_bound: int = 9) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = tuple(rng.randint(-exp_bound, exp_bound) for _ in range(dim))
        coeff = rng.randint(-coeff_bound, coeff_bound)
        if coeff:
            terms[exps] = terms.get(exps, 0) + coeff
    return LaurentPoly(dim, terms)


def random_periodic_graph(rng: random.Random, max_orbits: int = 3, max_dim: int = 2,
                          max_edges: int = 6, max_shift: int = 2,
                          unweighted: bool = False) -> PeriodicGraph:
    d = rng.randint(1, max_dim)
    n = rng.randint(1, max_orbits)
    edges = []
    for _ in range(rng.randint(1, max_edges)):
        i = rng.randint(1, n)
        j = rng.randint(1, n)
        shift = tuple(rng.randint(-max_shift, max_shift) for _ in range(d))
        if i == j and all(s == 0 for s in shift):
            shift = tuple(1 if k == 0 else 0 for k in range(d))
        weight = 1 if unweighted else rng.choice([-2, -1, 1, 2])
        edges.append(EdgeOrbit(i, j, shift, weight))
    return PeriodicGraph(d, n, edges)


def random_connected_finite_graph(rng: random.Random, max_vertices: int = 7) -> PeriodicGraph:
    """Weighted finite graph guaranteed connected: a random spanning tree
    plus a few extra edges."""
    n = rng.randint(2, max_vertices)
    edges = []
    for v in range(2, n + 1):
        u = rng.randint(1, v - 1)
        edges.append(EdgeOrbit(u, v, (), rng.choice([-2, -1, 1, 2])))
    for _ in range(rng.randint(0, n)):
        u = rng.randint(1, n)
        v = rng.randint(1, n)
        if u != v:
            edges.append(EdgeOrbit(u, v, (), rng.choice([-2, -1, 1, 2])))
    g = PeriodicGraph(0, n, edges)
    assert len(component_orbits(g).component_vertex_sets) == 1
    return g
