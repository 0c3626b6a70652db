"""Exact arithmetic in Z[x1^{+-1}, ..., xd^{+-1}].

A Laurent polynomial is stored as a map from exponent vectors (tuples of
``d`` ints) to nonzero integer coefficients.  All operations are pure and
return canonical values: no zero coefficients are ever stored, so equality
is plain dict equality.  Coefficients are Python ints throughout, which are
arbitrary precision; there is deliberately no machine-integer fast path.

Determinants of square matrices over this ring are computed by cofactor
expansion for small sizes and by fraction-free Bareiss elimination (with
exact division at every step) for larger ones.
"""

from __future__ import annotations

import cmath
import re
from typing import Iterable, Mapping, Sequence

from .errors import InputError, InternalInconsistencyError

ExponentVector = tuple[int, ...]

# Cofactor expansion up to this size, Bareiss above it.
_COFACTOR_MAX = 6


class LaurentPoly:
    """An element of the Laurent polynomial ring in ``dim`` variables."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[ExponentVector, int] | None = None):
        if dim < 0:
            raise InputError("dimension must be >= 0")
        clean: dict[ExponentVector, int] = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != dim:
                    raise InputError(
                        f"exponent vector {exps} has length {len(exps)}, expected {dim}"
                    )
                coeff = int(coeff)
                if coeff:
                    clean[exps] = coeff
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "LaurentPoly":
        return cls(dim)

    @classmethod
    def constant(cls, c: int, dim: int) -> "LaurentPoly":
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def monomial(cls, dim: int, exps: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        return cls(dim, {tuple(exps): coeff})

    @classmethod
    def variable(cls, index: int, dim: int) -> "LaurentPoly":
        """The variable x_{index} (1-based) as a polynomial."""
        if not 1 <= index <= dim:
            raise InputError(f"variable index {index} out of range for dim {dim}")
        exps = [0] * dim
        exps[index - 1] = 1
        return cls.monomial(dim, exps)

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_coefficient(self) -> int:
        return self.terms.get((0,) * self.dim, 0)

    # -- ring operations ------------------------------------------------

    def _check_dim(self, other: "LaurentPoly") -> None:
        if self.dim != other.dim:
            raise InputError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.dim)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check_dim(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            new = terms.get(exps, 0) + c
            if new:
                terms[exps] = new
            else:
                terms.pop(exps, None)
        return LaurentPoly(self.dim, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.dim)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.dim, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check_dim(other)
        terms: dict[ExponentVector, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                new = terms.get(key, 0) + c1 * c2
                if new:
                    terms[key] = new
                else:
                    terms.pop(key, None)
        return LaurentPoly(self.dim, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("only nonnegative powers are supported")
        result = LaurentPoly.constant(1, self.dim)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.dim)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    # -- structure ------------------------------------------------------

    def involute(self) -> "LaurentPoly":
        """Substitute x_i -> x_i^{-1} for every variable."""
        return LaurentPoly(
            self.dim, {tuple(-e for e in exps): c for exps, c in self.terms.items()}
        )

    def is_palindromic(self) -> bool:
        return self.involute() == self

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial x^exps."""
        exps = tuple(exps)
        return LaurentPoly(
            self.dim, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()}
        )

    def sorted_terms(self) -> list[tuple[ExponentVector, int]]:
        """Terms in descending lexicographic order of exponent vectors."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def exponent_box(self) -> tuple[ExponentVector, ExponentVector] | None:
        """Componentwise (min, max) exponents, or None for the zero polynomial."""
        if not self.terms:
            return None
        exps = list(self.terms)
        lo = tuple(min(e[i] for e in exps) for i in range(self.dim))
        hi = tuple(max(e[i] for e in exps) for i in range(self.dim))
        return lo, hi

    def unit_normalize(self) -> "LaurentPoly":
        """Canonical representative of this polynomial up to units +-x^s.

        The lexicographically smallest exponent vector is shifted to zero and
        the sign is fixed so that its coefficient is positive.  Used for
        display, deduplication and golden tests only; all invariants computed
        downstream are unit-insensitive.
        """
        if not self.terms:
            return self
        low = min(self.terms)
        sign = 1 if self.terms[low] > 0 else -1
        return LaurentPoly(
            self.dim,
            {tuple(a - b for a, b in zip(e, low)): sign * c for e, c in self.terms.items()},
        )

    # -- evaluation -----------------------------------------------------

    def eval_unit_torus(self, angles: Sequence[float]) -> complex:
        """Evaluate at (e^{2 pi i t_1}, ..., e^{2 pi i t_d}).

        Double precision; the rounding error is O(#terms * max|coeff| * eps).
        """
        if len(angles) != self.dim:
            raise InputError(f"expected {self.dim} angles, got {len(angles)}")
        total = 0j
        for exps, c in self.terms.items():
            phase = sum(e * t for e, t in zip(exps, angles))
            total += c * cmath.exp(2j * cmath.pi * phase)
        return total

    def eval_complex(self, values: Sequence[complex]) -> complex:
        if len(values) != self.dim:
            raise InputError(f"expected {self.dim} values, got {len(values)}")
        total = 0j
        for exps, c in self.terms.items():
            term = complex(c)
            for e, v in zip(exps, values):
                term *= v ** e
            total += term
        return total

    # -- rendering ------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly(dim={self.dim}, {format_poly(self)!r})"


def _monomial_str(exps: ExponentVector, dim: int) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e:
            name = "x" if dim == 1 else f"x{i + 1}"
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: LaurentPoly) -> str:
    """Render with terms in descending lexicographic order.

    Examples: ``9*x^1 - 18 + 9*x^-1`` (d=1), ``4 - x1^1 - x1^-1`` (d>=2).
    """
    if f.is_zero():
        return "0"
    pieces = []
    for idx, (exps, c) in enumerate(f.sorted_terms()):
        mono = _monomial_str(exps, f.dim)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if idx == 0:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


# Split at top-level signs only; a sign right after '^' is an exponent sign.
_TERM_SPLIT = re.compile(r"(?<!\^)(?=[+-])")
_FACTOR_RE = re.compile(r"^(x(\d*))(\^(-?\d+))?$")


def parse_poly(text: str, dim: int | None = None) -> LaurentPoly:
    """Parse the grammar produced by :func:`format_poly`.

    Variables are ``x`` (one variable) or ``x1, x2, ...``; exponents follow
    ``^`` and may be negative.  If ``dim`` is None it is inferred from the
    highest variable index present (1 if a bare ``x`` occurs, 0 for
    constants).
    """
    stripped = text.replace(" ", "")
    if not stripped:
        raise InputError("empty polynomial")
    raw_terms = [t for t in _TERM_SPLIT.split(stripped) if t and t not in "+-"]
    parsed: list[tuple[int, dict[int, int]]] = []
    max_var = 0
    saw_bare_x = False
    for raw in raw_terms:
        sign = 1
        while raw and raw[0] in "+-":
            if raw[0] == "-":
                sign = -sign
            raw = raw[1:]
        if not raw:
            raise InputError(f"dangling sign in polynomial {text!r}")
        coeff = sign
        exps: dict[int, int] = {}
        for factor in raw.split("*"):
            if not factor:
                raise InputError(f"empty factor in term {raw!r}")
            if factor[0].isdigit():
                try:
                    coeff *= int(factor)
                except ValueError:
                    raise InputError(f"bad integer factor {factor!r}") from None
                continue
            m = _FACTOR_RE.match(factor)
            if not m:
                raise InputError(f"bad factor {factor!r} in polynomial {text!r}")
            var_digits = m.group(2)
            if var_digits:
                index = int(var_digits)
                if index < 1:
                    raise InputError(f"variable index must be >= 1 in {factor!r}")
            else:
                index = 1
                saw_bare_x = True
            max_var = max(max_var, index)
            power = int(m.group(4)) if m.group(4) is not None else 1
            exps[index] = exps.get(index, 0) + power
        parsed.append((coeff, exps))
    inferred = max(max_var, 1 if saw_bare_x else 0)
    if dim is None:
        dim = inferred
    elif inferred > dim:
        raise InputError(f"polynomial uses x{inferred} but dim={dim}")
    terms: dict[ExponentVector, int] = {}
    for coeff, exps in parsed:
        key = tuple(exps.get(i + 1, 0) for i in range(dim))
        terms[key] = terms.get(key, 0) + coeff
    return LaurentPoly(dim, terms)


# -- exact division -----------------------------------------------------


class ExactDivisionError(InternalInconsistencyError):
    """Raised when a division that must be exact turns out not to be."""


def exact_divide(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Return q with f = q*g, or raise :class:`ExactDivisionError`.

    Division runs against the leading (lex-max) term of ``g``; because lex
    order on exponent vectors is multiplication-invariant, the leading term
    of the remainder cancels at every step when the division is exact.  The
    quotient's exponents are confined to the componentwise box
    box(f) - box(g), which both guarantees termination and detects
    non-divisibility.
    """
    if f.dim != g.dim:
        raise InputError(f"dimension mismatch: {f.dim} vs {g.dim}")
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return LaurentPoly.zero(f.dim)
    (flo, fhi) = f.exponent_box()
    (glo, ghi) = g.exponent_box()
    qlo = tuple(a - b for a, b in zip(flo, ghi))
    qhi = tuple(a - b for a, b in zip(fhi, glo))
    lead = max(g.terms)
    lead_c = g.terms[lead]
    remainder = dict(f.terms)
    quotient: dict[ExponentVector, int] = {}
    while remainder:
        top = max(remainder)
        c = remainder[top]
        if c % lead_c:
            raise ExactDivisionError(f"{f} is not divisible by {g}")
        qe = tuple(a - b for a, b in zip(top, lead))
        if any(e < lo or e > hi for e, lo, hi in zip(qe, qlo, qhi)):
            raise ExactDivisionError(f"{f} is not divisible by {g}")
        qc = c // lead_c
        quotient[qe] = quotient.get(qe, 0) + qc
        for ge, gc in g.terms.items():
            key = tuple(a + b for a, b in zip(qe, ge))
            new = remainder.get(key, 0) - qc * gc
            if new:
                remainder[key] = new
            else:
                remainder.pop(key, None)
    return LaurentPoly(f.dim, quotient)


def divides(g: LaurentPoly, f: LaurentPoly) -> bool:
    """True iff g divides f in the Laurent ring."""
    if f.is_zero():
        return True
    try:
        exact_divide(f, g)
        return True
    except ExactDivisionError:
        return False


# -- matrices over the ring ---------------------------------------------


class LaurentMatrix:
    """A square matrix with :class:`LaurentPoly` entries of common dimension."""

    __slots__ = ("n", "dim", "rows")

    def __init__(self, rows: Iterable[Iterable[LaurentPoly]]):
        rows = tuple(tuple(row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InputError("matrix must be square")
        if n == 0:
            raise InputError("empty matrix")
        dim = rows[0][0].dim
        for row in rows:
            for entry in row:
                if not isinstance(entry, LaurentPoly) or entry.dim != dim:
                    raise InputError("all entries must be LaurentPoly of common dimension")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentMatrix is immutable")

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, LaurentMatrix) and self.rows == other.rows

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(zip(*self.rows))

    def involute(self) -> "LaurentMatrix":
        return LaurentMatrix([[e.involute() for e in row] for row in self.rows])

    def det(self) -> LaurentPoly:
        return det_laurent(self)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.rows)
        return f"LaurentMatrix[{body}]"


def _det_cofactor(rows: Sequence[Sequence[LaurentPoly]], dim: int) -> LaurentPoly:
    n = len(rows)
    cache: dict[tuple[int, tuple[int, ...]], LaurentPoly] = {}

    def minor(row: int, cols: tuple[int, ...]) -> LaurentPoly:
        if not cols:
            return LaurentPoly.constant(1, dim)
        key = (row, cols)
        if key in cache:
            return cache[key]
        acc = LaurentPoly.zero(dim)
        for pos, col in enumerate(cols):
            entry = rows[row][col]
            if entry.is_zero():
                continue
            rest = cols[:pos] + cols[pos + 1:]
            sub = minor(row + 1, rest)
            term = entry * sub
            acc = acc + term if pos % 2 == 0 else acc - term
        cache[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def _det_bareiss(rows: Sequence[Sequence[LaurentPoly]], dim: int) -> LaurentPoly:
    n = len(rows)
    m = [list(row) for row in rows]
    sign = 1
    prev = LaurentPoly.constant(1, dim)
    for k in range(n - 1):
        if m[k][k].is_zero():
            found = None
            for i in range(k, n):
                for j in range(k, n):
                    if not m[i][j].is_zero():
                        found = (i, j)
                        break
                if found:
                    break
            if found is None:
                return LaurentPoly.zero(dim)
            i, j = found
            if i != k:
                m[i], m[k] = m[k], m[i]
                sign = -sign
            if j != k:
                for row in m:
                    row[j], row[k] = row[k], row[j]
                sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = exact_divide(num, prev)
            m[i][k] = LaurentPoly.zero(dim)
        prev = pivot
    result = m[n - 1][n - 1]
    return -result if sign < 0 else result


def det_laurent(matrix: LaurentMatrix | Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Exact determinant over the Laurent ring.

    Cofactor expansion for n <= 6; fraction-free Bareiss elimination above
    that.  A failed exact division inside Bareiss raises
    :class:`ExactDivisionError` (an internal inconsistency).
    """
    if isinstance(matrix, LaurentMatrix):
        rows, dim = matrix.rows, matrix.dim
    else:
        rows = tuple(tuple(r) for r in matrix)
        dim = rows[0][0].dim
    n = len(rows)
    if n <= _COFACTOR_MAX:
        return _det_cofactor(rows, dim)
    return _det_bareiss(rows, dim)
