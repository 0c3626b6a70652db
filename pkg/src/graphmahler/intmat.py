"""Exact integer matrix algebra: Smith normal form, determinants, minor gcds.

Matrices are plain lists of lists of Python ints (arbitrary precision).
Everything here is exact; there are no modular or floating shortcuts,
because the torsion orders computed downstream are the deliverable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .errors import InputError, SizeRefusalError

IntRows = list[list[int]]

_GCD_MINOR_LIMIT = 10


def as_rows(matrix: Sequence[Sequence[int]]) -> IntRows:
    rows = [[int(x) for x in row] for row in matrix]
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise InputError("ragged matrix")
    return rows


def identity(n: int) -> IntRows:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: IntRows, b: IntRows) -> IntRows:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            v = ai[t]
            if v:
                bt = b[t]
                for j in range(m):
                    oi[j] += v * bt[j]
    return out


@dataclass(frozen=True)
class SmithForm:
    """Invariant factor decomposition of an integer matrix."""

    invariant_factors: tuple[int, ...]
    rank: int
    nullity: int
    # UMV = diag(invariant factors); only filled when requested.
    left: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)
    right: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)

    def torsion_order(self) -> int:
        order = 1
        for d in self.invariant_factors:
            order *= d
        return order


def _find_pivot(a: IntRows, t: int, m: int, n: int):
    best = None
    best_abs = None
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            v = row[j]
            if v:
                av = abs(v)
                if av == 1:
                    return (i, j)
                if best_abs is None or av < best_abs:
                    best, best_abs = (i, j), av
    return best


def smith_normal_form(matrix: Sequence[Sequence[int]], with_transforms: bool = False) -> SmithForm:
    """Smith normal form via minimal-absolute-value pivoting.

    Choosing the smallest nonzero entry as pivot each round keeps
    coefficient growth under control on the dense quotient Laplacians this
    package feeds in.  Transform matrices are skipped by default (memory);
    pass ``with_transforms=True`` to get U, V with U*M*V diagonal.
    """
    a = as_rows(matrix)
    m = len(a)
    n = len(a[0]) if a else 0
    u = identity(m) if with_transforms else None
    v = identity(n) if with_transforms else None
    t = 0
    diag: list[int] = []
    while t < min(m, n):
        pos = _find_pivot(a, t, m, n)
        if pos is None:
            break
        i, j = pos
        if i != t:
            a[i], a[t] = a[t], a[i]
            if u is not None:
                u[i], u[t] = u[t], u[i]
        if j != t:
            for row in a:
                row[j], row[t] = row[t], row[j]
            if v is not None:
                for row in v:
                    row[j], row[t] = row[t], row[j]
        while True:
            pivot = a[t][t]
            restart = False
            for i in range(t + 1, m):
                val = a[i][t]
                if not val:
                    continue
                q = _nearest_quotient(val, pivot)
                if q:
                    row_t = a[t]
                    row_i = a[i]
                    for j in range(t, n):
                        row_i[j] -= q * row_t[j]
                    if u is not None:
                        ut, ui = u[t], u[i]
                        for j in range(m):
                            ui[j] -= q * ut[j]
                if a[i][t]:
                    # Remainder is smaller than the pivot: promote it.
                    a[i], a[t] = a[t], a[i]
                    if u is not None:
                        u[i], u[t] = u[t], u[i]
                    restart = True
                    break
            if restart:
                continue
            for j in range(t + 1, n):
                val = a[t][j]
                if not val:
                    continue
                q = _nearest_quotient(val, pivot)
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                    if v is not None:
                        for row in v:
                            row[j] -= q * row[t]
                if a[t][j]:
                    for row in a:
                        row[j], row[t] = row[t], row[j]
                    if v is not None:
                        for row in v:
                            row[j], row[t] = row[t], row[j]
                    restart = True
                    break
            if restart:
                continue
            break
        pivot = a[t][t]
        if pivot < 0:
            for j in range(t, n):
                a[t][j] = -a[t][j]
            if u is not None:
                u[t] = [-x for x in u[t]]
            pivot = -pivot
        # Fold in any entry the pivot does not divide, then redo this pivot.
        offender = None
        for i in range(t + 1, m):
            row = a[i]
            for j in range(t + 1, n):
                if row[j] % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_o = a[offender]
            row_t = a[t]
            for j in range(t, n):
                row_t[j] += row_o[j]
            if u is not None:
                uo, ut = u[offender], u[t]
                for j in range(m):
                    ut[j] += uo[j]
            continue
        diag.append(pivot)
        t += 1
    rank = len(diag)
    return SmithForm(
        invariant_factors=tuple(diag),
        rank=rank,
        nullity=n - rank,
        left=tuple(tuple(r) for r in u) if u is not None else None,
        right=tuple(tuple(r) for r in v) if v is not None else None,
    )


def _nearest_quotient(a: int, b: int) -> int:
    """Round-to-nearest quotient, so remainders are at most |b|/2."""
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1
    return q


def torsion_order(matrix: Sequence[Sequence[int]]) -> int:
    """Product of the nonzero invariant factors (1 for the zero matrix)."""
    return smith_normal_form(matrix).torsion_order()


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free elimination."""
    a = as_rows(matrix)
    n = len(a)
    if any(len(r) != n for r in a):
        raise InputError("determinant requires a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            row_k = a[k]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def cofactor_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Expansion by minors; exponential, used as an independent oracle."""
    a = as_rows(matrix)
    n = len(a)
    cache: dict[tuple[int, tuple[int, ...]], int] = {}

    def minor(row: int, cols: tuple[int, ...]) -> int:
        if not cols:
            return 1
        key = (row, cols)
        if key in cache:
            return cache[key]
        acc = 0
        for pos, col in enumerate(cols):
            entry = a[row][col]
            if entry:
                sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
                acc += entry * sub if pos % 2 == 0 else -entry * sub
        cache[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def gcd_minors(matrix: Sequence[Sequence[int]], k: int) -> int:
    """gcd of the absolute values of all k x k minors (0 if all vanish)."""
    a = as_rows(matrix)
    m = len(a)
    n = len(a[0]) if a else 0
    if k < 0 or k > min(m, n):
        raise InputError(f"minor size {k} out of range for {m}x{n} matrix")
    if k == 0:
        return 1
    if max(m, n) > _GCD_MINOR_LIMIT:
        raise SizeRefusalError(
            f"gcd of minors refused for {m}x{n} matrix (limit {_GCD_MINOR_LIMIT})"
        )
    g = 0
    for rows_sel in combinations(range(m), k):
        for cols_sel in combinations(range(n), k):
            sub = [[a[i][j] for j in cols_sel] for i in rows_sel]
            g = math.gcd(g, abs(bareiss_determinant(sub)))
            if g == 1:
                return 1
    return g
