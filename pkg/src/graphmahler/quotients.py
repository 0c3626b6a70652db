"""Finite quotients of periodic graphs and their complexity invariants.

Given a d-periodic graph G and a finite-index sublattice L of Z^d, the
quotient graph lives on vertices (orbit, group element of Z^d/L).  Torsion
complexity kappa comes from the Smith normal form of the quotient's integer
Laplacian; tree complexity tau from the Matrix-Tree theorem (principal
minors per connected component).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import InputError, InternalInconsistencyError
from .intmat import bareiss_determinant, smith_normal_form
from .graphs import EdgeOrbit, PeriodicGraph, component_orbits, integer_laplacian, laplacian_matrix

_MIN_VECTOR_DIM_LIMIT = 4


@dataclass(frozen=True)
class LatticeSpec:
    """A finite-index subgroup of Z^d spanned by the columns of ``basis``."""

    dim: int
    basis: tuple[tuple[int, ...], ...]  # row-major d x d matrix

    def __post_init__(self):
        if self.dim < 1:
            raise InputError("lattice dimension must be >= 1")
        if len(self.basis) != self.dim or any(len(r) != self.dim for r in self.basis):
            raise InputError(f"basis must be a {self.dim}x{self.dim} matrix")
        if bareiss_determinant([list(r) for r in self.basis]) == 0:
            raise InputError("lattice basis matrix is singular")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "LatticeSpec":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        return cls(len(rows), rows)

    @classmethod
    def cyclic(cls, r: int) -> "LatticeSpec":
        """r*Z inside Z (the d=1 case)."""
        return cls(1, ((r,),))

    @classmethod
    def scaled(cls, n: int, d: int) -> "LatticeSpec":
        """N * Z^d."""
        return cls(d, tuple(tuple(n if i == j else 0 for j in range(d)) for i in range(d)))

    @property
    def index(self) -> int:
        return abs(bareiss_determinant([list(r) for r in self.basis]))

    def describe(self) -> str:
        if self.dim == 1:
            return f"{self.basis[0][0]}Z"
        diag = [self.basis[i][i] for i in range(self.dim)]
        if all(
            self.basis[i][j] == (diag[i] if i == j else 0)
            for i in range(self.dim)
            for j in range(self.dim)
        ) and len(set(diag)) == 1:
            return f"{diag[0]}Z^{self.dim}"
        return "basis[" + ";".join(",".join(str(x) for x in row) for row in self.basis) + "]"


def minimal_vector_length(lattice: LatticeSpec) -> float:
    """Shortest nonzero Euclidean length in the lattice, by exhaustive
    search over a provably sufficient coefficient box (desk scale, d <= 4)."""
    d = lattice.dim
    if d > _MIN_VECTOR_DIM_LIMIT:
        raise InputError(f"minimal vector search supports d <= {_MIN_VECTOR_DIM_LIMIT}")
    cols = [[lattice.basis[i][j] for i in range(d)] for j in range(d)]
    shortest_col = min(math.sqrt(sum(x * x for x in col)) for col in cols)
    inverse = _fraction_inverse([list(r) for r in lattice.basis])
    best_sq = None
    ranges = []
    for i in range(d):
        row_norm = math.sqrt(sum(float(x) * float(x) for x in inverse[i]))
        bound = int(math.floor(shortest_col * row_norm + 1e-9))
        ranges.append(range(-bound, bound + 1))
    for coeffs in product(*ranges):
        if not any(coeffs):
            continue
        vec = [sum(lattice.basis[i][j] * coeffs[j] for j in range(d)) for i in range(d)]
        norm_sq = sum(x * x for x in vec)
        if best_sq is None or norm_sq < best_sq:
            best_sq = norm_sq
    if best_sq is None:
        raise InternalInconsistencyError("minimal vector search found no candidates")
    return math.sqrt(best_sq)


def _fraction_inverse(rows: list[list[int]]) -> list[list[Fraction]]:
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k]), None)
        if pivot_row is None:
            raise InputError("matrix is singular")
        a[k], a[pivot_row] = a[pivot_row], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                factor = a[i][k]
                a[i] = [x - factor * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]


# -- quotient construction ----------------------------------------------


class FiniteQuotientGraph:
    """The finite cover of the quotient graph determined by a lattice.

    Vertices are labeled (orbit index, group element of Z^d/Lambda); the
    group element is a coordinate tuple in the cyclic-factor decomposition
    coming from the Smith normal form of the basis matrix.  Vertex order is
    orbit-major, then mixed-radix order on group coordinates, so output is
    reproducible bit for bit.
    """

    __slots__ = ("graph", "vertex_labels", "lattice", "source")

    def __init__(self, graph: PeriodicGraph, vertex_labels, lattice: LatticeSpec,
                 source: PeriodicGraph):
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "vertex_labels", tuple(vertex_labels))
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "source", source)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteQuotientGraph is immutable")

    @property
    def n_vertices(self) -> int:
        return self.graph.n_orbits


def quotient_graph(g: PeriodicGraph, lattice: LatticeSpec) -> FiniteQuotientGraph:
    """Finite quotient G_Lambda as a dim-0 graph with labeled vertices."""
    if g.dim < 1:
        raise InputError("quotient construction needs a periodic graph (dim >= 1)")
    if lattice.dim != g.dim:
        raise InputError(f"lattice dim {lattice.dim} != graph dim {g.dim}")
    d = g.dim
    snf = smith_normal_form([list(r) for r in lattice.basis], with_transforms=True)
    if snf.rank < d:
        raise InputError("lattice basis matrix is singular")
    moduli = list(snf.invariant_factors)
    u = snf.left
    index = 1
    for m in moduli:
        index *= m

    def project(shift: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            sum(u[i][j] * shift[j] for j in range(d)) % moduli[i] for i in range(d)
        )

    group_elements = list(product(*(range(m) for m in moduli)))
    group_rank = {gel: k for k, gel in enumerate(group_elements)}

    def vertex(orbit: int, gel: tuple[int, ...]) -> int:
        # 1-based, orbit-major
        return (orbit - 1) * index + group_rank[gel] + 1

    edges = []
    for e in g.edges:
        delta = project(e.shift)
        for gel in group_elements:
            target = tuple((a + b) % m for a, b, m in zip(gel, delta, moduli))
            edges.append(EdgeOrbit(vertex(e.tail, gel), vertex(e.head, target), (), e.weight))
    labels = [(orbit, gel) for orbit in range(1, g.n_orbits + 1) for gel in group_elements]
    quotient = PeriodicGraph(0, g.n_orbits * index, edges)
    return FiniteQuotientGraph(quotient, labels, lattice, g)


def companion_quotient_laplacian(g: PeriodicGraph, r: int) -> list[list[int]]:
    """For d=1: substitute the r x r cyclic permutation matrix for x in L_G.

    Equal, up to simultaneous row/column permutation, to the Laplacian of
    quotient_graph(g, rZ).
    """
    if g.dim != 1:
        raise InputError("companion substitution requires a 1-periodic graph")
    if r < 1:
        raise InputError("r must be >= 1")
    n = g.n_orbits
    lap = laplacian_matrix(g)
    out = [[0] * (n * r) for _ in range(n * r)]
    for bi in range(n):
        for bj in range(n):
            for (exps, coeff) in lap.rows[bi][bj].terms.items():
                s = exps[0] % r
                for a in range(r):
                    out[bi * r + a][bj * r + (a + s) % r] += coeff
    return out


# -- complexity ---------------------------------------------------------


@dataclass(frozen=True)
class ComplexityReport:
    """Torsion complexity, tree complexity and SNF data of a finite graph."""

    kappa: int
    tau: int
    nullity: int
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        if self.tau != 0 and self.tau != self.kappa:
            raise InternalInconsistencyError(
                f"tau={self.tau} is nonzero but differs from kappa={self.kappa}"
            )


def _as_finite_graph(q) -> PeriodicGraph:
    if isinstance(q, FiniteQuotientGraph):
        return q.graph
    if isinstance(q, PeriodicGraph):
        if q.dim != 0:
            raise InputError("complexity needs a finite graph (dim 0) or a quotient")
        return q
    raise InputError(f"cannot interpret {type(q).__name__} as a finite graph")


def complexity(q) -> ComplexityReport:
    """kappa via SNF of the integer Laplacian, tau via Matrix-Tree minors.

    For disconnected graphs tau is the product over components (zero if any
    component's spanning-tree sum vanishes).
    """
    graph = _as_finite_graph(q)
    lap = integer_laplacian(graph)
    snf = smith_normal_form(lap)
    kappa = snf.torsion_order()
    info = component_orbits(graph)
    tau = 1
    for members in info.component_vertex_sets:
        idx = [v - 1 for v in members[:-1]]  # delete the last vertex of the component
        minor = [[lap[i][j] for j in idx] for i in idx]
        tau *= abs(bareiss_determinant(minor))
        if tau == 0:
            break
    return ComplexityReport(
        kappa=kappa,
        tau=tau,
        nullity=snf.nullity,
        invariant_factors=snf.invariant_factors,
    )


# -- growth series ------------------------------------------------------


@dataclass(frozen=True)
class GrowthEntry:
    lattice: str
    index: int
    min_vector_length: float
    log_kappa: float
    normalized_rate: float
    kappa: int
    tau: int


@dataclass(frozen=True)
class GrowthSeries:
    entries: tuple[GrowthEntry, ...]
    vertex_orbits: int

    @property
    def bulk_limit_estimate(self) -> float:
        if not self.entries:
            return 0.0
        return self.entries[-1].normalized_rate / self.vertex_orbits


def _log_big(n: int) -> float:
    if n <= 0:
        raise InputError("log of a nonpositive integer")
    if n.bit_length() <= 900:
        return math.log(n)
    shift = n.bit_length() - 60
    return math.log(n >> shift) + shift * math.log(2)


def growth_series(g: PeriodicGraph, lattices: Iterable[LatticeSpec]) -> GrowthSeries:
    """Normalized complexity growth (1/index) * log kappa along a lattice
    family.  Indices must be strictly increasing."""
    entries = []
    last_index = 0
    for lat in lattices:
        idx = lat.index
        if idx <= last_index:
            raise InputError("lattice indices must be strictly increasing")
        last_index = idx
        report = complexity(quotient_graph(g, lat))
        log_kappa = _log_big(report.kappa)
        entries.append(
            GrowthEntry(
                lattice=lat.describe(),
                index=idx,
                min_vector_length=minimal_vector_length(lat),
                log_kappa=log_kappa,
                normalized_rate=log_kappa / idx,
                kappa=report.kappa,
                tau=report.tau,
            )
        )
    return GrowthSeries(tuple(entries), g.n_orbits)


def cyclic_family(r_min: int, r_max: int) -> list[LatticeSpec]:
    if r_min < 1 or r_max < r_min:
        raise InputError("need 1 <= r_min <= r_max")
    return [LatticeSpec.cyclic(r) for r in range(r_min, r_max + 1)]


def scaled_family(n_min: int, n_max: int, d: int) -> list[LatticeSpec]:
    if n_min < 1 or n_max < n_min:
        raise InputError("need 1 <= N_min <= N_max")
    return [LatticeSpec.scaled(n, d) for n in range(n_min, n_max + 1)]


def growth_series_csv(series: GrowthSeries, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append("lattice,index,min_vector_length,log_kappa,normalized_rate")
    for e in series.entries:
        lines.append(
            f"{e.lattice},{e.index},{e.min_vector_length:.12g},"
            f"{e.log_kappa:.12g},{e.normalized_rate:.12g}"
        )
    return "\n".join(lines) + "\n"
