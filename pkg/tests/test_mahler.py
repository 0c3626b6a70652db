"""Mahler measures: Jensen via exact roots, torus quadrature, Kronecker
detection."""

import math
import random

import pytest

from graphmahler import (
    InputError,
    LaurentPoly,
    grid_graph_polynomial,
    is_measure_one,
    mahler_jensen,
    mahler_measure,
    mahler_quadrature,
    parse_poly,
)
from graphmahler.lehmer import LEHMER_POLYNOMIAL

from conftest import random_laurent


P = parse_poly


# -- jensen --------------------------------------------------------------


def test_jensen_linear():
    result = mahler_jensen(P("x - 2"))
    assert math.isclose(result.log_value, math.log(2), abs_tol=1e-12)
    assert result.method == "jensen-roots"


def test_jensen_cyclotomic_square_is_exactly_one():
    result = mahler_jensen(P("x - 2 + x^-1"))
    assert result.value == 1.0
    assert result.log_value == 0.0


def test_jensen_lehmer():
    result = mahler_jensen(LEHMER_POLYNOMIAL)
    assert abs(result.value - 1.17628) < 1e-4
    assert result.error_estimate < 1e-10


def test_jensen_scaled_window_is_exactly_nine():
    result = mahler_jensen(9 * P("x - 2 + x^-1"))
    assert result.value == 9.0


def test_jensen_reciprocal_root_pairing():
    # palindromic inputs have reciprocal-paired roots
    f = P("x^2 - 3*x + 1")
    roots = [z for z, _ in mahler_jensen(f).diagnostics["roots"]]
    roots.sort(key=abs)
    assert abs(roots[0] * roots[1] - 1) < 1e-9


def test_jensen_rejects_zero_and_multivariate():
    with pytest.raises(InputError):
        mahler_jensen(LaurentPoly.zero(1))
    with pytest.raises(InputError):
        mahler_jensen(P("4 - x1 - x2"))


def test_kronecker_lower_bound():
    # content-1 one-variable polynomials have measure >= 1
    rng = random.Random(83)
    checked = 0
    while checked < 30:
        f = random_laurent(rng, 1)
        if f.is_zero():
            continue
        if math.gcd(*(abs(c) for c in f.terms.values())) != 1:
            continue
        assert mahler_jensen(f).value >= 1.0 - 1e-12
        checked += 1


# -- quadrature ----------------------------------------------------------


def test_quadrature_constant():
    result = mahler_quadrature(LaurentPoly.constant(9, 2), 64)
    assert math.isclose(result.log_value, math.log(9), abs_tol=1e-12)


def test_quadrature_cyclotomic_near_zero():
    result = mahler_quadrature(P("2 - x - x^-1"), 1024)
    assert abs(result.log_value) < 5e-3


def test_quadrature_grid2():
    result = mahler_quadrature(grid_graph_polynomial(2), 512)
    assert abs(result.log_value - 1.165) < 5e-3
    assert result.error_estimate < 5e-3
    assert result.diagnostics["dropped"] == 0


def test_quadrature_rejects_bad_input():
    with pytest.raises(InputError):
        mahler_quadrature(LaurentPoly.zero(2), 64)
    with pytest.raises(InputError):
        mahler_quadrature(P("2 - x - x^-1"), 1)


# -- grid polynomials ----------------------------------------------------


def test_grid_polynomials():
    assert grid_graph_polynomial(1) == P("2 - x - x^-1")
    assert grid_graph_polynomial(2) == P("4 - x1 - x1^-1 - x2 - x2^-1")
    assert grid_graph_polynomial(3) == P(
        "6 - x1 - x1^-1 - x2 - x2^-1 - x3 - x3^-1"
    )
    with pytest.raises(InputError):
        grid_graph_polynomial(0)


def test_grid_rate_bounded_by_log_2d():
    for d in (1, 2, 3):
        result = mahler_quadrature(grid_graph_polynomial(d), 64)
        assert result.log_value <= math.log(2 * d) + result.error_estimate


# -- measure-one detection -----------------------------------------------


def test_is_measure_one():
    assert is_measure_one(P("x - 2 + x^-1"))
    assert not is_measure_one(LEHMER_POLYNOMIAL)
    assert not is_measure_one(P("2*x - 1"))
    assert is_measure_one(P("x^4 + x^3 + x^2 + x + 1"))  # cyclotomic


# -- cross-method and algebraic properties --------------------------------


def test_multiplicativity_jensen():
    rng = random.Random(89)
    done = 0
    while done < 20:
        f = random_laurent(rng, 1)
        g = random_laurent(rng, 1)
        if f.is_zero() or g.is_zero():
            continue
        rf, rg, rfg = mahler_jensen(f), mahler_jensen(g), mahler_jensen(f * g)
        tol = rf.error_estimate + rg.error_estimate + rfg.error_estimate + 1e-9
        assert abs(rfg.log_value - rf.log_value - rg.log_value) <= tol
        done += 1


def test_involution_invariance():
    rng = random.Random(97)
    done = 0
    while done < 20:
        f = random_laurent(rng, 1)
        if f.is_zero():
            continue
        assert math.isclose(
            mahler_jensen(f).log_value,
            mahler_jensen(f.involute()).log_value,
            abs_tol=1e-9,
        )
        done += 1


def _substitute_basis(f, k):
    """f(x1 * x2^k, x2): a unimodular change of torus coordinates."""
    terms = {}
    for (e1, e2), c in f.terms.items():
        key = (e1, e2 + k * e1)
        terms[key] = terms.get(key, 0) + c
    return LaurentPoly(2, terms)


def test_basis_invariance_two_variables():
    f = grid_graph_polynomial(2)
    base = mahler_quadrature(f, 512).log_value
    for k in (1, 2):
        changed = mahler_quadrature(_substitute_basis(f, k), 512).log_value
        assert abs(changed - base) < 1e-2


def test_cross_method_agreement():
    rng = random.Random(101)
    done = 0
    while done < 8:
        f = random_laurent(rng, 1, max_terms=5, exp_bound=6)
        if f.is_zero():
            continue
        jensen = mahler_jensen(f).log_value
        quad = mahler_quadrature(f, 2048).log_value
        assert abs(jensen - quad) <= 5e-3
        done += 1


def test_dispatch():
    assert mahler_measure(P("x - 2")).method == "jensen-roots"
    assert mahler_measure(grid_graph_polynomial(2)).method == "torus-quadrature"
    forced = mahler_measure(P("x - 2"), method="quadrature", grid_size=2048)
    assert forced.method == "torus-quadrature"
    with pytest.raises(InputError):
        mahler_measure(P("x - 2"), method="nonsense")
