"""Weights, degree of precision and error coefficient of an interpolatory rule.

With the Newton basis ``phi_j`` the moment conditions ``Q(phi_i) = I(phi_i)``
form an upper triangular system, so the weights come out of one backward
substitution.  The extension polynomials ``q_j`` vanish at every node, hence
``Q(q_j) = 0`` and the first ``j >= n`` with ``I(q_j) != 0`` fixes the degree
``d = j - 1``; the same integral gives the error constant
``c = I(q_{d+1}) / (d+1)!`` in ``E(f) = c f^(d+1)(xi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DegreeDetectionError, DuplicateNodesError
from .moments import MomentProvider
from .polynomial import NodeSet, Polynomial, extend, mul_linear, newton_basis, q_factor_indices
from .scalar import Field, Scalar

FactorOrder = Callable[[int], Sequence[int]]


@dataclass(frozen=True)
class RuleResult:
    nodes: NodeSet
    weights: tuple
    degree: int
    error_coefficient: Scalar
    #: ``I(q_n), I(q_{n+1}), ...`` up to and including the first nonzero one
    i_q: tuple
    #: determinant of the triangular system, ``prod_j phi_j(x_{j+1})``
    diag_det: Scalar
    conditioning_warning: bool
    field: Field

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def derivative_order(self) -> int:
        return self.degree + 1

    def apply(self, values: Sequence[Scalar]) -> Scalar:
        """``sum_i a_i * values[i]``."""
        return sum((a * v for a, v in zip(self.weights, values)), self.field.zero)


def _check_fields(nodes: NodeSet, mp: MomentProvider) -> None:
    if nodes.field != mp.field:
        raise ValueError(f"nodes use {nodes.field!r} but moments use {mp.field!r}")


def basis_table(nodes: NodeSet) -> list[list]:
    """``T[i][k] = phi_i(x_k)`` built from node differences.

    Entries with ``k < i`` are zero by construction and left as such.
    """
    x = nodes.nodes
    rows = [[nodes.field.one] * len(x)]
    for i in range(1, len(x)):
        prev = rows[-1]
        c = x[i - 1]
        rows.append([prev[k] * (x[k] - c) if k >= i else nodes.field.zero for k in range(len(x))])
    return rows


def _solve_weights(nodes: NodeSet, mp: MomentProvider, phi: list[Polynomial], table: list[list]) -> list:
    n = nodes.n
    rhs = [mp.integrate(p) for p in phi]
    a: list = [None] * n
    for i in range(n - 1, -1, -1):
        row = table[i]
        pivot = row[i]
        if pivot == 0:
            raise DuplicateNodesError(f"phi_{i}(x_{i + 1}) vanishes; nodes are not distinct")
        s = rhs[i]
        for k in range(i + 1, n):
            s -= row[k] * a[k]
        a[i] = s / pivot
    return a


def compute_weights(nodes: NodeSet, mp: MomentProvider) -> list:
    """Weights by backward substitution in the Newton basis."""
    _check_fields(nodes, mp)
    return _solve_weights(nodes, mp, newton_basis(nodes), basis_table(nodes))


def _error_scale_base(nodes: NodeSet) -> Polynomial:
    """``prod_{i<n-1} (x + |x_i|)``: bounds the coefficients of ``phi_{n-1}``."""
    p = Polynomial([nodes.field.one])
    for x in nodes.nodes[:-1]:
        p = mul_linear(p, -abs(x))
    return p


def _scan(nodes: NodeSet, mp: MomentProvider, phi_last: Polynomial, indices: Sequence[int]) -> tuple[int, list]:
    n = nodes.n
    field = nodes.field
    exact = field.precision is None
    q = phi_last
    bound = None if exact else _error_scale_base(nodes)
    values = []
    for j, r in enumerate(indices, start=n):
        q = mul_linear(q, nodes[r])
        value = mp.integrate(q)
        values.append(value)
        if exact:
            nonzero = value != 0
        else:
            # rounding in the expanded product grows like prod (x + |x_r|)
            bound = mul_linear(bound, -abs(nodes[r]))
            nonzero = not field.is_zero(value, mp.magnitude(bound))
        if nonzero:
            return j - 1, values
    raise DegreeDetectionError(
        f"I(q_j) tested as zero for every j in {n}..{n + len(indices) - 1}; "
        "the zero-test tolerance is inconsistent with the working precision"
    )


def degree_of_precision(
    nodes: NodeSet, mp: MomentProvider, factors: FactorOrder = q_factor_indices
) -> tuple[int, list]:
    """Degree of precision and the extension integrals computed to find it.

    *factors* maps ``n`` to the node indices appended to ``phi_{n-1}`` to form
    ``q_n, ..., q_{2n}``.  Any such family vanishes at every node and gives
    the same degree.
    """
    _check_fields(nodes, mp)
    return _scan(nodes, mp, newton_basis(nodes)[-1], factors(nodes.n))


def error_coefficient(
    nodes: NodeSet, mp: MomentProvider, degree: int, factors: FactorOrder = q_factor_indices
) -> Scalar:
    """``I(q_{degree+1}) / (degree+1)!``."""
    _check_fields(nodes, mp)
    n = nodes.n
    if not n - 1 <= degree <= 2 * n - 1:
        raise ValueError(f"degree {degree} outside the possible range {n - 1}..{2 * n - 1}")
    q = extend(nodes, factors(n)[: degree + 2 - n])[-1]
    return mp.integrate(q) / math.factorial(degree + 1)


def conditioning_threshold(field: Field) -> Scalar | None:
    """Relaxed tolerance under which the triangular determinant is flagged."""
    if field.precision is None:
        return None
    return field(10) ** (-(field.precision.decimal_digits // 2))


def build_rule(nodes: NodeSet, mp: MomentProvider, factors: FactorOrder = q_factor_indices) -> RuleResult:
    """Weights, degree, error constant and conditioning diagnostic in one pass."""
    _check_fields(nodes, mp)
    n = nodes.n
    phi = newton_basis(nodes)
    table = basis_table(nodes)
    weights = _solve_weights(nodes, mp, phi, table)
    degree, i_q = _scan(nodes, mp, phi[-1], factors(n))
    c = i_q[-1] / math.factorial(degree + 1)

    det = nodes.field.one
    for j in range(1, n):
        det *= table[j][j]
    threshold = conditioning_threshold(nodes.field)
    warn = threshold is not None and abs(det) <= threshold

    return RuleResult(
        nodes=nodes,
        weights=tuple(weights),
        degree=degree,
        error_coefficient=c,
        i_q=tuple(i_q),
        diag_det=det,
        conditioning_warning=warn,
        field=nodes.field,
    )
