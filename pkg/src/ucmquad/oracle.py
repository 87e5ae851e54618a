"""Brute-force cross-checks in the monomial basis.

Nothing here touches the Newton basis or the extension polynomials, so
agreement with :mod:`ucmquad.engine` is independent evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import QuadratureError
from .moments import MomentProvider
from .polynomial import NodeSet
from .scalar import Field, Scalar, is_effectively_zero


class SingularSystemError(QuadratureError):
    """The moment system has no unique solution (repeated nodes)."""


@dataclass(frozen=True)
class OracleReport:
    weights: tuple
    detected_degree: int
    #: largest |Q(x^k) - mu_k| over k <= detected_degree
    max_exactness_residual: Scalar


def solve_full_pivot(matrix: list[list], rhs: list, field: Field) -> list:
    """Gaussian elimination with row and column pivoting on the largest entry."""
    n = len(rhs)
    A = [list(row) + [b] for row, b in zip(matrix, rhs)]
    cols = list(range(n))
    scale = max((abs(v) for row in matrix for v in row), default=field.zero)
    for c in range(n):
        piv_r, piv_c, best = c, c, field.zero
        for r in range(c, n):
            for k in range(c, n):
                v = abs(A[r][k])
                if v > best:
                    piv_r, piv_c, best = r, k, v
        if field.is_zero(best, scale):
            raise SingularSystemError("moment system is singular; nodes must be distinct")
        A[c], A[piv_r] = A[piv_r], A[c]
        if piv_c != c:
            for row in A:
                row[c], row[piv_c] = row[piv_c], row[c]
            cols[c], cols[piv_c] = cols[piv_c], cols[c]
        pivot = A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / pivot
            if f:
                row, top = A[r], A[c]
                for k in range(c, n + 1):
                    row[k] -= f * top[k]
    y = [field.zero] * n
    for r in range(n - 1, -1, -1):
        s = A[r][n]
        for k in range(r + 1, n):
            s -= A[r][k] * y[k]
        y[r] = s / A[r][r]
    out = [field.zero] * n
    for pos, var in enumerate(cols):
        out[var] = y[pos]
    return out


def vandermonde_weights(nodes: NodeSet | Sequence, mp: MomentProvider) -> list:
    """Solve ``sum_i a_i x_i**k = mu_k`` for ``k = 0..n-1``."""
    field = mp.field
    x = [field(v) for v in nodes]
    n = len(x)
    matrix = [[xi**k for xi in x] for k in range(n)]
    rhs = [mp.moment(k) for k in range(n)]
    return solve_full_pivot(matrix, rhs, field)


def exactness_residual(nodes: Sequence, weights: Sequence, mp: MomentProvider, k: int) -> tuple:
    """``(Q(x**k) - mu_k, scale)`` where scale bounds the rounding in both terms."""
    terms = [a * x**k for a, x in zip(weights, nodes)]
    mu = mp.moment(k)
    residual = sum(terms, mp.field.zero) - mu
    scale = sum((abs(t) for t in terms), mp.field.zero) + abs(mu)
    return residual, scale


def probe_degree(
    nodes: Sequence,
    weights: Sequence,
    mp: MomentProvider,
    k_cap: int | None = None,
    tol: Scalar | None = None,
) -> int:
    """Largest ``d <= k_cap`` with ``Q(x**k) = mu_k`` for every ``k <= d`` (``-1`` if none).

    *tol* overrides the field's zero-test tolerance; weights that were computed
    with guard digits only meet the moment conditions to their own accuracy.
    """
    field = mp.field
    if tol is not None and field.precision is None:
        tol = None
    n = len(weights)
    k_cap = 2 * n if k_cap is None else k_cap
    if k_cap < n:
        raise ValueError(f"k_cap must be at least n={n}, got {k_cap}")
    for k in range(k_cap + 1):
        residual, scale = exactness_residual(nodes, weights, mp, k)
        zero = field.is_zero(residual, scale) if tol is None else is_effectively_zero(residual, scale, tol)
        if not zero:
            return k - 1
    return k_cap


def monomial_error_coefficient(nodes: Sequence, weights: Sequence, mp: MomentProvider, degree: int) -> Scalar:
    """``(mu_{d+1} - Q(x**(d+1))) / (d+1)!``, the error constant seen by the first failing monomial."""
    residual, _ = exactness_residual(nodes, weights, mp, degree + 1)
    return -residual / math.factorial(degree + 1)


def midpoint_tolerance(field: Field, target_digits: int | None) -> Scalar | None:
    """Tolerance halfway (in digits) between the working and the target precision.

    Rounding noise sits near the working precision while a genuinely nonzero
    residual must show up well above it; splitting the guard digits separates
    the two for rules built with extra precision.
    """
    if field.precision is None:
        return None
    work = field.precision.decimal_digits
    target = work if target_digits is None else min(target_digits, work)
    return field(10) ** (-((work + target) // 2 - 10))


def oracle_report(
    nodes: NodeSet, mp: MomentProvider, k_cap: int | None = None, tol: Scalar | None = None
) -> OracleReport:
    weights = vandermonde_weights(nodes, mp)
    degree = probe_degree(nodes, weights, mp, k_cap, tol)
    worst = mp.field.zero
    for k in range(degree + 1):
        worst = max(worst, abs(exactness_residual(nodes, weights, mp, k)[0]))
    return OracleReport(tuple(weights), degree, worst)
