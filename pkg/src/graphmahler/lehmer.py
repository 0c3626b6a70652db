"""Realizing palindromic polynomials as 1-periodic graph Laplacians, the
Lehmer growth experiment, and exhaustive small-measure searches.

Sign convention: for a single-vertex-orbit graph the Laplacian polynomial
is sum_s w_s (2 - x^s - x^{-s}), so decompositions target that form.  A
polynomial displayed in the opposite (x^s - 2 + x^{-s}) convention simply
acquires negated weights; every downstream invariant (Mahler measure,
kappa, tau) is sign-insensitive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .errors import InputError, InternalInconsistencyError, SizeRefusalError
from .graphs import EdgeOrbit, PeriodicGraph, laplacian_polynomial
from .laurent import LaurentPoly, divides
from .mahler import MahlerResult, is_measure_one, mahler_jensen
from .quotients import LatticeSpec, complexity, quotient_graph

_SEARCH_SPACE_LIMIT = 200_000


@dataclass(frozen=True)
class WindingDecomposition:
    """A sum sum_s w_s (2 - x^s - x^{-s}) with strictly increasing windings
    s >= 1 and nonzero weights."""

    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        last = 0
        for s, w in self.terms:
            if s <= last:
                raise InputError("windings must be strictly increasing and >= 1")
            if w == 0:
                raise InputError("weights must be nonzero")
            last = s

    def expand(self) -> LaurentPoly:
        total = LaurentPoly.zero(1)
        for s, w in self.terms:
            total = total + LaurentPoly(1, {(0,): 2 * w, (s,): -w, (-s,): -w})
        return total


def palindrome_decompose(p: LaurentPoly) -> WindingDecomposition:
    """Write a palindromic p with p(1) = 0 as sum_s w_s (2 - x^s - x^{-s}).

    The coefficient a_s of x^s (s >= 1) forces w_s = -a_s; p(1) = 0 pins
    the constant term, so the reconstruction is exact by construction (and
    asserted).
    """
    if p.dim != 1:
        raise InputError("decomposition requires a one-variable polynomial")
    if not p.is_palindromic():
        raise InputError("polynomial is not palindromic")
    if sum(p.terms.values()) != 0:
        raise InputError("polynomial does not vanish at x = 1")
    terms = tuple(
        (s, -c) for (s,), c in sorted(p.terms.items()) if s >= 1
    )
    dec = WindingDecomposition(terms)
    if dec.expand() != p:
        raise InternalInconsistencyError("winding decomposition failed to reconstruct input")
    return dec


def realize_periodic_graph(dec: WindingDecomposition) -> PeriodicGraph:
    """One vertex orbit, one edge orbit of weight w winding s times per
    decomposition term.  The Laplacian polynomial of the result is exactly
    the expanded decomposition."""
    if not dec.terms:
        raise InputError("cannot realize an empty decomposition")
    edges = [EdgeOrbit(1, 1, (s,), w) for s, w in dec.terms]
    return PeriodicGraph(1, 1, edges)


# -- exact single-orbit quotient complexity ------------------------------


def _fraction_matrix_power(m: list[list[Fraction]], r: int) -> list[list[Fraction]]:
    n = len(m)
    result = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    base = [row[:] for row in m]
    while r:
        if r & 1:
            result = _fraction_matmul(result, base)
        base = _fraction_matmul(base, base)
        r >>= 1
    return result


def _fraction_matmul(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def _fraction_det(m: list[list[Fraction]]) -> Fraction:
    a = [row[:] for row in m]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                factor = a[i][k] * inv
                a[i] = [x - factor * y for x, y in zip(a[i], a[k])]
    return det


def _strip_unit_root(coeffs: list[int]) -> tuple[list[int], int]:
    """Divide out (x - 1) as often as possible; return (quotient, count)."""
    count = 0
    current = coeffs
    while len(current) > 1 and sum(current) == 0:
        # synthetic division by (x - 1)
        quotient = [0] * (len(current) - 1)
        acc = 0
        for k in range(len(current) - 1, 0, -1):
            acc += current[k]
            quotient[k - 1] = acc
        current = quotient
        count += 1
    return current, count


def single_orbit_quotient_complexity(d_poly: LaurentPoly, r: int):
    """Exact (kappa, tau, nullity) for the r-fold quotient of a connected
    single-orbit 1-periodic graph with Laplacian polynomial ``d_poly``.

    The quotient Laplacian is the circulant with symbol D, so its
    eigenvalues are D at the r-th roots of unity; with D = +-x^m (x-1)^t h,
    the product of the nonzero eigenvalues is r^t |h(1)|^{-1} prod_j h(z^j),
    and the root-of-unity product of h is an integer resultant computed via
    companion-matrix powers.  Everything stays in exact rational arithmetic.

    Returns None when some nontrivial root of unity is a zero of D (nullity
    exceeds one); callers fall back to the generic SNF pipeline then.
    """
    if d_poly.dim != 1:
        raise InputError("fast quotient complexity requires a one-variable polynomial")
    if r < 1:
        raise InputError("r must be >= 1")
    norm = d_poly.unit_normalize()
    if norm.is_zero():
        raise InputError("zero Laplacian polynomial")
    degree = max(e[0] for e in norm.terms)
    coeffs = [0] * (degree + 1)
    for (e,), c in norm.terms.items():
        coeffs[e] = c
    h, t = _strip_unit_root(coeffs)
    if t == 0:
        raise InputError("polynomial does not vanish at x = 1; not a graph Laplacian")
    h_at_one = sum(h)
    if r == 1:
        return (1, 1, 1)
    s = len(h) - 1
    lead = h[-1]
    if s == 0:
        prod_abs = Fraction(abs(lead)) ** r
    else:
        companion = [
            [Fraction(int(j == i + 1)) for j in range(s)] for i in range(s - 1)
        ]
        companion.append([Fraction(-h[j], lead) for j in range(s)])
        power = _fraction_matrix_power(companion, r)
        for i in range(s):
            power[i][i] -= 1
        prod_abs = abs(Fraction(lead) ** r * _fraction_det(power))
    if prod_abs == 0:
        return None  # extra roots of unity: nullity > 1, generic path needed
    tau = Fraction(r) ** (t - 1) * prod_abs / abs(h_at_one)
    if tau.denominator != 1:
        raise InternalInconsistencyError(
            f"eigenvalue product {tau} is not an integer for r={r}"
        )
    tau_int = int(tau)
    return (tau_int, tau_int, 1)


# -- the Lehmer experiment ----------------------------------------------


@dataclass(frozen=True)
class ExperimentEntry:
    r: int
    kappa: int
    tau: int
    normalized_rate: float
    kappa_equals_tau: bool
    nullity: int


@dataclass(frozen=True)
class LehmerExperimentReport:
    graph: PeriodicGraph
    laplacian: LaurentPoly
    entries: tuple[ExperimentEntry, ...]
    target_log_mahler: float
    mahler: MahlerResult
    cyclotomic_warning: bool


def lehmer_experiment(f: LaurentPoly, r_max: int) -> LehmerExperimentReport:
    """Realize p = (x - 2 + x^{-1}) * f as a single-orbit graph and track
    (1/r) log kappa of its cyclic quotients against log M(f).

    M(x - 2 + x^{-1}) = 1, so log M(D_G) = log M(f) is the growth target.
    When f is measure-one (cyclotomic case) no growth is expected;
    the report carries a warning flag instead of erroring.
    """
    if f.dim != 1:
        raise InputError("experiment requires a one-variable polynomial")
    if f.is_zero():
        raise InputError("f must be nonzero")
    if not f.is_palindromic():
        raise InputError("f must be palindromic")
    if r_max < 1:
        raise InputError("r_max must be >= 1")
    window = LaurentPoly(1, {(1,): 1, (0,): -2, (-1,): 1})
    # The decomposition targets the sum_s w_s (2 - x^s - x^{-s}) form; the
    # sign of p only negates the weights and no reported invariant sees it.
    dec = palindrome_decompose(window * f)
    graph = realize_periodic_graph(dec)
    d_poly = laplacian_polynomial(graph)
    mahler = mahler_jensen(f)
    entries = []
    for r in range(1, r_max + 1):
        fast = single_orbit_quotient_complexity(d_poly, r)
        if fast is None:
            report = complexity(quotient_graph(graph, LatticeSpec.cyclic(r)))
            kappa, tau, nullity = report.kappa, report.tau, report.nullity
        else:
            kappa, tau, nullity = fast
        entries.append(
            ExperimentEntry(
                r=r,
                kappa=kappa,
                tau=tau,
                normalized_rate=math.log(kappa) / r,
                kappa_equals_tau=(kappa == tau),
                nullity=nullity,
            )
        )
        if nullity == 1 and kappa != tau:
            raise InternalInconsistencyError(
                f"nullity 1 but kappa {kappa} != tau {tau} at r={r}"
            )
    return LehmerExperimentReport(
        graph=graph,
        laplacian=d_poly,
        entries=tuple(entries),
        target_log_mahler=mahler.log_value,
        mahler=mahler,
        cyclotomic_warning=is_measure_one(f),
    )


LEHMER_POLYNOMIAL = LaurentPoly(
    1,
    {
        (10,): 1, (9,): 1, (7,): -1, (6,): -1, (5,): -1,
        (4,): -1, (3,): -1, (1,): 1, (0,): 1,
    },
)


def lehmer_palindromic() -> LaurentPoly:
    """Lehmer's degree-10 polynomial recentred by x^{-5}, which makes it
    palindromic without changing its Mahler measure."""
    return LEHMER_POLYNOMIAL.shift((-5,))


# -- exhaustive search ---------------------------------------------------


@dataclass(frozen=True)
class SearchHit:
    graph: PeriodicGraph
    polynomial: LaurentPoly
    mahler: MahlerResult
    edge_terms: tuple[tuple[int, int], ...]


def search_small_measure(
    max_edges: int,
    max_winding: int,
    weight_set: Iterable[int],
) -> list[SearchHit]:
    """Enumerate single-orbit 1-periodic graphs with at most ``max_edges``
    edge orbits, windings in 1..max_winding and weights in ``weight_set``;
    return hits with Mahler measure > 1, ascending by measure.

    Results are deduplicated by unit-normalized Laplacian polynomial and
    the enumeration order is canonical, so identical inputs give identical
    ranked output.
    """
    weights = sorted(set(int(w) for w in weight_set))
    if 0 in weights:
        raise InputError("weight set must not contain zero")
    if max_edges < 1 or max_winding < 1:
        raise InputError("need max_edges >= 1 and max_winding >= 1")
    alphabet = [(s, w) for s in range(1, max_winding + 1) for w in weights]
    space = sum(math.comb(len(alphabet) + k - 1, k) for k in range(1, max_edges + 1))
    if space > _SEARCH_SPACE_LIMIT:
        raise SizeRefusalError(
            f"search space has about {space} graphs (limit {_SEARCH_SPACE_LIMIT})"
        )
    seen: dict[LaurentPoly, None] = {}
    hits: list[SearchHit] = []
    for size in range(1, max_edges + 1):
        for combo in combinations_with_replacement(alphabet, size):
            merged: dict[int, int] = {}
            for s, w in combo:
                merged[s] = merged.get(s, 0) + w
            terms = tuple(sorted((s, w) for s, w in merged.items() if w))
            if not terms:
                continue
            dec = WindingDecomposition(terms)
            d_poly = dec.expand()
            if d_poly.is_zero():
                continue
            key = d_poly.unit_normalize()
            if key in seen:
                continue
            seen[key] = None
            if is_measure_one(d_poly):
                continue
            graph = realize_periodic_graph(dec)
            hits.append(
                SearchHit(
                    graph=graph,
                    polynomial=d_poly,
                    mahler=mahler_jensen(d_poly),
                    edge_terms=terms,
                )
            )
    hits.sort(key=lambda h: (h.mahler.log_value, str(h.polynomial.unit_normalize())))
    return hits


def search_results_csv(hits: Sequence[SearchHit], comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append("polynomial,edges,mahler_measure,log_mahler,error_estimate")
    for h in hits:
        edges = ";".join(f"{s}:{w}" for s, w in h.edge_terms)
        lines.append(
            f"\"{h.polynomial.unit_normalize()}\",{edges},"
            f"{h.mahler.value:.12g},{h.mahler.log_value:.12g},{h.mahler.error_estimate:.3g}"
        )
    return "\n".join(lines) + "\n"


def divisible_by_window(d_poly: LaurentPoly) -> bool:
    """True iff x - 2 + x^{-1} divides the one-variable polynomial."""
    window = LaurentPoly(1, {(1,): 1, (0,): -2, (-1,): 1})
    return divides(window, d_poly)
