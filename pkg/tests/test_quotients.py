"""Finite quotients, complexity reports and growth series."""

import math
import random

import pytest

from graphmahler import (
    ComplexityReport,
    InputError,
    InternalInconsistencyError,
    LatticeSpec,
    companion_quotient_laplacian,
    complexity,
    cyclic_family,
    gcd_minors,
    grid_graph,
    growth_series,
    growth_series_csv,
    integer_laplacian,
    minimal_vector_length,
    quotient_graph,
    scaled_family,
    smith_normal_form,
    spanning_tree_sum,
)
from graphmahler.graphs import EdgeOrbit, PeriodicGraph

from conftest import four_orbit_graph, random_periodic_graph, triangle_graph


# -- lattice specs -------------------------------------------------------


def test_lattice_index_and_describe():
    assert LatticeSpec.cyclic(5).index == 5
    assert LatticeSpec.cyclic(5).describe() == "5Z"
    assert LatticeSpec.scaled(2, 2).index == 4
    assert LatticeSpec.scaled(2, 2).describe() == "2Z^2"
    skew = LatticeSpec.from_rows([[2, 1], [0, 3]])
    assert skew.index == 6
    assert skew.describe() == "basis[2,1;0,3]"


def test_singular_basis_rejected():
    with pytest.raises(InputError):
        LatticeSpec.from_rows([[1, 2], [2, 4]])


def test_minimal_vector_length():
    assert minimal_vector_length(LatticeSpec.scaled(7, 3)) == 7
    assert minimal_vector_length(LatticeSpec.cyclic(4)) == 4
    # columns (2,0) and (1,3)
    lat = LatticeSpec.from_rows([[2, 1], [0, 3]])
    assert minimal_vector_length(lat) == 2


def test_minimal_vector_dimension_limit():
    lat = LatticeSpec.scaled(2, 5)
    with pytest.raises(InputError):
        minimal_vector_length(lat)


# -- quotient construction -----------------------------------------------


def test_grid2_two_torus():
    q = quotient_graph(grid_graph(2), LatticeSpec.scaled(2, 2))
    assert q.n_vertices == 4
    assert len(q.graph.edges) == 8


def test_grid1_three_cycle():
    q = quotient_graph(grid_graph(1), LatticeSpec.cyclic(3))
    report = complexity(q)
    assert report.kappa == 3 and report.tau == 3  # C3 has 3 spanning trees
    assert q.n_vertices == 3


def test_four_orbit_r2_is_milnor_example():
    q = quotient_graph(four_orbit_graph(), LatticeSpec.cyclic(2))
    assert q.n_vertices == 8
    report = complexity(q)
    assert report.kappa == 9
    assert report.tau == 0
    assert report.nullity == 2
    assert report.invariant_factors == (1, 1, 1, 1, 3, 3)
    lap = integer_laplacian(q.graph)
    assert gcd_minors(lap, 6) == 9
    assert gcd_minors(lap, 7) == 0


def test_quotient_covering_property():
    rng = random.Random(73)
    for _ in range(15):
        g = random_periodic_graph(rng, max_orbits=2, max_edges=4)
        lat = (
            LatticeSpec.cyclic(rng.randint(1, 5))
            if g.dim == 1
            else LatticeSpec.scaled(rng.randint(1, 3), g.dim)
        )
        q = quotient_graph(g, lat)
        assert q.n_vertices == g.n_orbits * lat.index
        # every source edge orbit lifts to index edges, minus wrap loops
        expected = sum(
            lat.index
            for e in g.edges
            if not (e.tail == e.head and _wraps_to_loop(e.shift, lat))
        )
        assert len(q.graph.edges) == expected


def _wraps_to_loop(shift, lat):
    snf = smith_normal_form([list(r) for r in lat.basis], with_transforms=True)
    u = snf.left
    d = lat.dim
    return all(
        sum(u[i][j] * shift[j] for j in range(d)) % snf.invariant_factors[i] == 0
        for i in range(d)
    )


def test_quotient_requires_matching_dim():
    with pytest.raises(InputError):
        quotient_graph(grid_graph(2), LatticeSpec.cyclic(3))
    with pytest.raises(InputError):
        quotient_graph(triangle_graph(), LatticeSpec.cyclic(3))


# -- companion substitution ----------------------------------------------


def test_companion_grid1_r3_is_c3():
    lap = companion_quotient_laplacian(grid_graph(1), 3)
    assert lap == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]


def test_companion_r1_forgets_shifts():
    g = four_orbit_graph()
    lap = companion_quotient_laplacian(g, 1)
    assert lap == [
        [0, 0, 1, -1],
        [0, 0, 1, -1],
        [1, 1, -2, 0],
        [-1, -1, 0, 2],
    ]


def test_companion_four_orbit_r2_torsion():
    lap = companion_quotient_laplacian(four_orbit_graph(), 2)
    snf = smith_normal_form(lap)
    assert snf.torsion_order() == 9
    assert snf.nullity == 2


def test_companion_matches_covering_snf():
    rng = random.Random(79)
    for _ in range(15):
        g = random_periodic_graph(rng, max_dim=1, max_orbits=2, max_edges=4)
        r = rng.randint(1, 5)
        companion = smith_normal_form(companion_quotient_laplacian(g, r))
        covering = smith_normal_form(
            integer_laplacian(quotient_graph(g, LatticeSpec.cyclic(r)).graph)
        )
        assert companion.invariant_factors == covering.invariant_factors
        assert companion.nullity == covering.nullity


# -- complexity ----------------------------------------------------------


def test_triangle_complexity():
    report = complexity(triangle_graph())
    assert (report.kappa, report.tau, report.nullity) == (3, 3, 1)


def test_grid2_quotient_tau_32():
    q = quotient_graph(grid_graph(2), LatticeSpec.scaled(2, 2))
    report = complexity(q)
    assert report.tau == 32
    assert report.kappa == 32
    assert spanning_tree_sum(q.graph) == 32


def test_complexity_multiplicative_over_components():
    from graphmahler import disjoint_union

    a = triangle_graph()
    b = triangle_graph((1, 1, -1))
    both = complexity(disjoint_union(a, b))
    assert both.kappa == complexity(a).kappa * complexity(b).kappa
    assert both.tau == complexity(a).tau * complexity(b).tau


def test_report_invariant_enforced():
    with pytest.raises(InternalInconsistencyError):
        ComplexityReport(kappa=6, tau=5, nullity=1, invariant_factors=(1, 6))
    # tau = 0 is always allowed
    ComplexityReport(kappa=9, tau=0, nullity=2, invariant_factors=(3, 3))


def test_complexity_rejects_periodic_graph():
    with pytest.raises(InputError):
        complexity(grid_graph(1))


# -- growth series -------------------------------------------------------


def test_four_orbit_growth_closed_form():
    series = growth_series(four_orbit_graph(), cyclic_family(1, 6))
    for r, entry in zip(range(1, 7), series.entries):
        assert entry.kappa == 9 ** (r - 1)
        assert entry.tau == 0
        assert math.isclose(
            entry.normalized_rate, (r - 1) / r * math.log(9), rel_tol=0, abs_tol=1e-12
        )


def test_grid1_growth_is_cycle_count():
    series = growth_series(grid_graph(1), cyclic_family(2, 10))
    for r, entry in zip(range(2, 11), series.entries):
        assert entry.kappa == r
        assert math.isclose(entry.normalized_rate, math.log(r) / r, abs_tol=1e-12)


def test_doubled_grid1_growth():
    doubled = PeriodicGraph(1, 1, [EdgeOrbit(1, 1, (1,), 1), EdgeOrbit(1, 1, (1,), 1)])
    series = growth_series(doubled, cyclic_family(2, 12))
    for r, entry in zip(range(2, 13), series.entries):
        assert entry.kappa == r * 2 ** (r - 1)
        if r <= 6:
            q = quotient_graph(doubled, LatticeSpec.cyclic(r))
            assert spanning_tree_sum(q.graph) == entry.kappa
    # the rate approaches log 2 from above
    assert abs(series.entries[-1].normalized_rate - math.log(2)) < 0.3


def test_translate_component_rate_matches_grid1():
    # grid-2 with vertical orbits deleted: d=2 action on stacked copies of
    # the one-dimensional grid; growth matches grid-1's rate exactly.
    stacked = PeriodicGraph(2, 1, [EdgeOrbit(1, 1, (1, 0), 1)])
    from graphmahler import laplacian_polynomial, parse_poly

    assert laplacian_polynomial(stacked) == parse_poly("2 - x1 - x1^-1", dim=2)
    grid1_series = growth_series(grid_graph(1), cyclic_family(2, 6))
    for n, g1 in zip(range(2, 7), grid1_series.entries):
        q = complexity(quotient_graph(stacked, LatticeSpec.scaled(n, 2)))
        # N disjoint copies of the N-cycle
        assert q.kappa == n ** n
        rate = math.log(q.kappa) / (n * n)
        assert math.isclose(rate, g1.normalized_rate, abs_tol=1e-12)


def test_growth_series_requires_increasing_indices():
    with pytest.raises(InputError):
        growth_series(grid_graph(1), [LatticeSpec.cyclic(3), LatticeSpec.cyclic(2)])


def test_growth_csv_format():
    series = growth_series(grid_graph(1), cyclic_family(2, 4))
    csv = growth_series_csv(series, comments=["demo"])
    lines = csv.strip().split("\n")
    assert lines[0] == "# demo"
    assert lines[1] == "lattice,index,min_vector_length,log_kappa,normalized_rate"
    assert len(lines) == 2 + 3
    assert lines[2].startswith("2Z,2,2,")


def test_bulk_limit_estimate():
    series = growth_series(four_orbit_graph(), cyclic_family(1, 4))
    assert math.isclose(
        series.bulk_limit_estimate, series.entries[-1].normalized_rate / 4
    )


def test_family_validation():
    with pytest.raises(InputError):
        cyclic_family(3, 2)
    with pytest.raises(InputError):
        scaled_family(0, 2, 2)
