"""Integer matrix algebra: Smith normal form, determinants, minor gcds."""

import math
import random

import pytest

from graphmahler import (
    InputError,
    SizeRefusalError,
    bareiss_determinant,
    gcd_minors,
    smith_normal_form,
    torsion_order,
)
from graphmahler.intmat import cofactor_determinant, identity, mat_mul

K3_LAPLACIAN = [
    [2, -1, -1],
    [-1, 2, -1],
    [-1, -1, 2],
]


def random_matrix(rng, m, n, bound=9):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


# -- smith normal form ---------------------------------------------------


def test_snf_coprime_diagonal():
    snf = smith_normal_form([[2, 0], [0, 3]])
    assert snf.invariant_factors == (1, 6)


def test_snf_k3():
    snf = smith_normal_form(K3_LAPLACIAN)
    assert snf.invariant_factors == (1, 3)
    assert snf.rank == 2
    assert snf.nullity == 1


def test_divisibility_chain_random():
    rng = random.Random(23)
    for _ in range(40):
        m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        snf = smith_normal_form(m)
        factors = snf.invariant_factors
        assert all(d > 0 for d in factors)
        for a, b in zip(factors, factors[1:]):
            assert b % a == 0


def test_transforms_diagonalize():
    rng = random.Random(29)
    for _ in range(20):
        n = rng.randint(1, 5)
        m = random_matrix(rng, n, rng.randint(1, 5))
        snf = smith_normal_form(m, with_transforms=True)
        u = [list(r) for r in snf.left]
        v = [list(r) for r in snf.right]
        product = mat_mul(mat_mul(u, m), v)
        for i, row in enumerate(product):
            for j, val in enumerate(row):
                if i == j and i < snf.rank:
                    assert val == snf.invariant_factors[i]
                else:
                    assert val == 0
        # transforms are unimodular
        assert abs(bareiss_determinant(u)) == 1
        assert abs(bareiss_determinant(v)) == 1


def _random_unimodular_ops(rng, m):
    a = [row[:] for row in m]
    rows, cols = len(a), len(a[0])
    for _ in range(10):
        kind = rng.randint(0, 3)
        if kind == 0 and rows > 1:
            i, j = rng.sample(range(rows), 2)
            c = rng.randint(-3, 3)
            a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        elif kind == 1 and cols > 1:
            i, j = rng.sample(range(cols), 2)
            c = rng.randint(-3, 3)
            for row in a:
                row[i] += c * row[j]
        elif kind == 2 and rows > 1:
            i, j = rng.sample(range(rows), 2)
            a[i], a[j] = a[j], a[i]
        elif kind == 3:
            i = rng.randrange(rows)
            a[i] = [-x for x in a[i]]
    return a


def test_snf_unimodular_invariance():
    rng = random.Random(31)
    for _ in range(30):
        m = random_matrix(rng, rng.randint(2, 5), rng.randint(2, 5))
        snf = smith_normal_form(m)
        other = smith_normal_form(_random_unimodular_ops(rng, m))
        assert snf.invariant_factors == other.invariant_factors
        assert snf.rank == other.rank


def test_minor_gcd_ratio_consistency():
    # d_i = g_i / g_{i-1} with g_i the gcd of all i x i minors.
    rng = random.Random(37)
    for _ in range(30):
        n = rng.randint(1, 5)
        m = random_matrix(rng, n, n, bound=5)
        snf = smith_normal_form(m)
        g_prev = 1
        for i, d in enumerate(snf.invariant_factors, start=1):
            g = gcd_minors(m, i)
            assert g == g_prev * d
            g_prev = g
        if snf.rank < n:
            assert gcd_minors(m, snf.rank + 1) == 0


def test_product_of_factors_is_det():
    rng = random.Random(41)
    for _ in range(30):
        n = rng.randint(1, 5)
        m = random_matrix(rng, n, n)
        det = bareiss_determinant(m)
        if det == 0:
            continue
        snf = smith_normal_form(m)
        assert math.prod(snf.invariant_factors) == abs(det)


# -- torsion order -------------------------------------------------------


def test_torsion_order_examples():
    assert torsion_order([[0, 0, 0], [0, 0, 0], [0, 0, 0]]) == 1
    assert torsion_order([[0, 0, 0], [0, 4, 0], [0, 0, 6]]) == 24


# -- determinants --------------------------------------------------------


def test_bareiss_examples():
    assert bareiss_determinant(identity(5)) == 1
    assert bareiss_determinant([[2, -1], [-1, 2]]) == 3


def test_bareiss_against_cofactor():
    rng = random.Random(43)
    for _ in range(25):
        m = random_matrix(rng, 6, 6)
        assert bareiss_determinant(m) == cofactor_determinant(m)


def test_bareiss_requires_square():
    with pytest.raises(InputError):
        bareiss_determinant([[1, 2, 3], [4, 5, 6]])


# -- minor gcds ----------------------------------------------------------


def test_gcd_minors_identity():
    for k in range(0, 5):
        assert gcd_minors(identity(4), k) == 1


def test_gcd_minors_out_of_range():
    with pytest.raises(InputError):
        gcd_minors(identity(3), 4)


def test_gcd_minors_size_refusal():
    big = identity(11)
    with pytest.raises(SizeRefusalError):
        gcd_minors(big, 2)
