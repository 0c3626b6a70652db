"""Mahler measures of Laurent polynomials.

One variable: exact-root Jensen evaluation (square-free factorization, then
companion-matrix roots with Newton refinement).  Several variables: mean of
log|f| over a half-shifted roots-of-unity grid with a Richardson-style
error estimate.  The half shift keeps sample points away from the torus
zero at (1, ..., 1) that every connected graph polynomial has.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import sympy

from .errors import InputError
from .laurent import LaurentPoly

# Roots this close to the unit circle are treated as lying on it, so that
# cyclotomic factors contribute exactly zero to log M (Kronecker tolerance).
UNIT_CIRCLE_TOL = 1e-8

_ROOT_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class MahlerResult:
    log_value: float
    value: float  # exp(log_value); Jensen stores the exact product directly
    method: str  # jensen-roots | torus-quadrature | growth-series
    error_estimate: float
    diagnostics: dict = field(default_factory=dict)


def _poly_coefficients(f: LaurentPoly) -> list[int]:
    """Coefficients c_0..c_s of the unit-normalized ordinary polynomial,
    with c_0 != 0."""
    if f.dim != 1:
        raise InputError("one-variable operation on a polynomial of dim != 1")
    norm = f.unit_normalize()
    degree = max(e[0] for e in norm.terms)
    coeffs = [0] * (degree + 1)
    for (e,), c in norm.terms.items():
        coeffs[e] = c
    return coeffs


def _refined_roots(coeffs: list[int]) -> tuple[list[tuple[complex, int]], float]:
    """Roots with multiplicities of sum c_k x^k, plus a residual-based error
    estimate on sum of log|root| contributions.

    Square-free factorization (exact, via sympy) isolates multiplicities so
    that every numerical root is simple; each is then polished with Newton
    until the residual bound is met.
    """
    x = sympy.Symbol("x")
    poly = sympy.Poly(sum(c * x**k for k, c in enumerate(coeffs)), x)
    _, sqf = sympy.sqf_list(poly)
    roots: list[tuple[complex, int]] = []
    err = 0.0
    for factor, mult in sqf:
        fc = [int(c) for c in sympy.Poly(factor, x).all_coeffs()]  # highest first
        if len(fc) == 1:
            continue
        arr = np.array(fc, dtype=float)
        candidates = np.roots(arr)
        deriv = np.polyder(arr)
        for z in candidates:
            z = complex(z)
            for _ in range(50):
                pv = np.polyval(arr, z)
                dv = np.polyval(deriv, z)
                if dv == 0:
                    break
                step = pv / dv
                z -= step
                if abs(step) <= 1e-16 * max(1.0, abs(z)):
                    break
            residual = abs(np.polyval(arr, z))
            dv = abs(np.polyval(deriv, z))
            scale = float(np.abs(arr).sum()) * max(1.0, abs(z)) ** (len(fc) - 1)
            if residual > _ROOT_RESIDUAL_TOL * scale:
                raise InputError(
                    f"root finding failed to converge (residual {residual:.3g})"
                )
            per_root = residual / dv if dv else 0.0
            err += mult * per_root / max(abs(z), UNIT_CIRCLE_TOL)
            roots.append((z, mult))
    return roots, min(err, 1.0)


def mahler_jensen(f: LaurentPoly) -> MahlerResult:
    """Mahler measure of a one-variable Laurent polynomial by Jensen's
    formula: |lead coefficient| times the product of max(|root|, 1)."""
    if f.is_zero():
        raise InputError("Mahler measure of the zero polynomial is undefined")
    if f.dim != 1:
        raise InputError("jensen method requires a one-variable polynomial")
    coeffs = _poly_coefficients(f)
    lead = coeffs[-1]
    roots, err = _refined_roots(coeffs)
    value = float(abs(lead))
    kept = []
    for z, mult in roots:
        r = abs(z)
        if abs(r - 1.0) <= UNIT_CIRCLE_TOL:
            r = 1.0
        if r > 1.0:
            value *= r ** mult
        kept.append((z, mult))
    return MahlerResult(
        log_value=math.log(value),
        value=value,
        method="jensen-roots",
        error_estimate=err,
        diagnostics={"roots": kept, "leading_coefficient": lead},
    )


def is_measure_one(f: LaurentPoly) -> bool:
    """Kronecker's criterion, applied numerically: measure one iff leading
    and trailing coefficients are units and no root lies outside the closed
    unit disk (tolerance :data:`UNIT_CIRCLE_TOL`)."""
    if f.is_zero():
        raise InputError("zero polynomial has no Mahler measure")
    if f.dim != 1:
        raise InputError("is_measure_one requires a one-variable polynomial")
    coeffs = _poly_coefficients(f)
    if abs(coeffs[0]) != 1 or abs(coeffs[-1]) != 1:
        return False
    roots, _ = _refined_roots(coeffs)
    return all(abs(z) <= 1.0 + UNIT_CIRCLE_TOL for z, _ in roots)


# -- torus quadrature ---------------------------------------------------

_NEAR_ZERO_FACTOR = 1e-14


def _grid_mean_log(f: LaurentPoly, n: int) -> tuple[float, int]:
    """Mean of log|f| over the half-shifted grid theta = (k + 1/2)/n,
    dropping samples within 1e-14 * (coefficient scale) of zero."""
    d = f.dim
    theta = (np.arange(n) + 0.5) / n
    total = np.zeros((n,) * d, dtype=np.complex128)
    for exps, coeff in f.terms.items():
        term = np.full((), complex(coeff))
        for axis, e in enumerate(exps):
            axis_vals = np.exp(2j * np.pi * e * theta)
            shape = [1] * d
            shape[axis] = n
            term = term * axis_vals.reshape(shape)
        total = total + term
    magnitude = np.abs(total).ravel()
    scale = sum(abs(c) for c in f.terms.values())
    mask = magnitude >= _NEAR_ZERO_FACTOR * scale
    dropped = int(magnitude.size - mask.sum())
    if not mask.any():
        raise InputError("all quadrature samples were numerically zero")
    return float(np.log(magnitude[mask]).mean()), dropped


def mahler_quadrature(f: LaurentPoly, grid_size: int = 512) -> MahlerResult:
    """Mahler measure by averaging log|f| over a shifted torus grid.

    The error estimate is the difference against the half-size grid
    (Richardson style); rigorous bounds are out of reach because of the
    logarithmic singularities of the integrand.
    """
    if f.is_zero():
        raise InputError("Mahler measure of the zero polynomial is undefined")
    if grid_size < 2:
        raise InputError("grid size must be >= 2")
    if f.dim == 0:
        c = abs(f.constant_coefficient())
        return MahlerResult(
            math.log(c), float(c), "torus-quadrature", 0.0, {"grid": 0, "dropped": 0}
        )
    fine, dropped_fine = _grid_mean_log(f, grid_size)
    coarse, dropped_coarse = _grid_mean_log(f, max(grid_size // 2, 2))
    return MahlerResult(
        log_value=fine,
        value=math.exp(fine),
        method="torus-quadrature",
        error_estimate=abs(fine - coarse),
        diagnostics={
            "grid": grid_size,
            "dropped": dropped_fine,
            "dropped_coarse": dropped_coarse,
        },
    )


def grid_graph_polynomial(d: int) -> LaurentPoly:
    """2d - sum_i (x_i + x_i^{-1}), the grid lattice Laplacian polynomial."""
    if d < 1:
        raise InputError("grid polynomial needs d >= 1")
    terms = {(0,) * d: 2 * d}
    for i in range(d):
        up = tuple(1 if j == i else 0 for j in range(d))
        terms[up] = -1
        terms[tuple(-e for e in up)] = -1
    return LaurentPoly(d, terms)


def mahler_measure(f: LaurentPoly, method: str | None = None, grid_size: int = 512) -> MahlerResult:
    """Dispatch: Jensen for one variable, quadrature otherwise (overridable)."""
    if method is None:
        method = "jensen" if f.dim == 1 else "quadrature"
    if method == "jensen":
        return mahler_jensen(f)
    if method == "quadrature":
        return mahler_quadrature(f, grid_size)
    raise InputError(f"unknown Mahler method {method!r}")
