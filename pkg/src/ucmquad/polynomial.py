"""Dense monomial-basis polynomials, node sets, and the Newton-type bases.

The rule construction needs two polynomial families built from the nodes:

* the Newton basis ``phi_0 = 1``, ``phi_j = phi_{j-1} * (x - x_j)``;
* its extension ``q_n = phi_{n-1} * (x - x_n)``, ``q_j = q_{j-1} * (x - x_r)``
  with ``r = ((j - 1) mod n) + 1``, so every node is a root of every ``q_j``
  and ``q_{2n}`` is the product of the squared node factors.

Both are stored expanded, because integrating against moments needs monomial
coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DuplicateNodesError
from .scalar import Field, RationalField, Scalar


@dataclass(frozen=True)
class Polynomial:
    """Coefficients ``coeffs[k]`` of ``x**k``; trailing exact zeros are dropped."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable[Scalar]) -> None:
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: Scalar) -> Scalar:
        return evaluate(self, x)

    def __add__(self, other: Polynomial) -> Polynomial:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([u + v for u, v in zip(a, b)] + list(a[len(b):]))

    def __neg__(self) -> Polynomial:
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other: Polynomial | Scalar) -> Polynomial:
        if not isinstance(other, Polynomial):
            return Polynomial([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Polynomial(())
        out = [self.coeffs[0] * 0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"


def mul_linear(p: Polynomial, c: Scalar) -> Polynomial:
    """Return ``p(x) * (x - c)``."""
    a = p.coeffs
    if not a:
        return p
    out = [-c * a[0]]
    for k in range(1, len(a)):
        out.append(a[k - 1] - c * a[k])
    out.append(a[-1])
    return Polynomial(out)


def evaluate(p: Polynomial, x: Scalar) -> Scalar:
    """Horner evaluation of *p* at *x*."""
    acc = x * 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def affine_substitute(p: Polynomial, alpha: Scalar, beta: Scalar) -> Polynomial:
    """Expand ``p(alpha * x + beta)`` in monomials."""
    if alpha == 0:
        raise ValueError("affine substitution needs a nonzero scale")
    acc: list = []
    for c in reversed(p.coeffs):
        nxt = [c * 0] * (len(acc) + 1)
        for k, a in enumerate(acc):
            nxt[k] += beta * a
            nxt[k + 1] += alpha * a
        nxt[0] += c
        acc = nxt
    return Polynomial(acc)


class NodeSet:
    """Ordered, pairwise distinct abscissae together with an integration interval.

    Nodes may lie outside ``[a, b]``.  In big-float mode two nodes count as
    equal when they are within ``tol * max(1, |a|, |b|)`` of each other.
    """

    __slots__ = ("nodes", "interval", "field")

    def __init__(
        self,
        nodes: Sequence,
        interval: tuple,
        field: Field | None = None,
    ) -> None:
        field = field or RationalField()
        pts = tuple(field(x) for x in nodes)
        a, b = (field(v) for v in interval)
        if not pts:
            raise ValueError("a rule needs at least one node")
        if not a < b:
            raise ValueError(f"interval must satisfy a < b, got ({a}, {b})")
        ordered = sorted(pts)
        sep = field.tolerance() * max(1, abs(a), abs(b))
        for u, v in zip(ordered, ordered[1:]):
            if v - u <= sep:
                raise DuplicateNodesError(f"nodes {u} and {v} are not distinct")
        self.nodes = pts
        self.interval = (a, b)
        self.field = field

    @property
    def n(self) -> int:
        return len(self.nodes)

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def __getitem__(self, i: int) -> Scalar:
        return self.nodes[i]

    def reordered(self, order: Sequence[int]) -> NodeSet:
        return NodeSet([self.nodes[i] for i in order], self.interval, self.field)

    def __repr__(self) -> str:
        return f"NodeSet({list(self.nodes)!r}, interval={self.interval!r}, field={self.field!r})"


def newton_basis(nodes: NodeSet) -> list[Polynomial]:
    """``[phi_0, ..., phi_{n-1}]`` for the given nodes."""
    phi = [Polynomial([nodes.field.one])]
    for j in range(1, nodes.n):
        phi.append(mul_linear(phi[-1], nodes[j - 1]))
    return phi


def q_factor_indices(n: int) -> list[int]:
    """Zero-based node indices whose factors build ``q_n, ..., q_{2n}`` from ``phi_{n-1}``.

    ``q_n`` appends ``x_n``; ``q_j`` for ``j > n`` appends ``x_r`` with
    ``r = ((j - 1) mod n) + 1``, which repeats ``x_1`` first and ends with
    ``q_{2n} = prod (x - x_i)**2``.
    """
    return [n - 1] + [(j - 1) % n for j in range(n + 1, 2 * n + 1)]


def repeated_factor_indices(n: int) -> list[int]:
    """Alternative family ``phi_{n-1} * (x - x_n)**(j - n + 1)``."""
    return [n - 1] * (n + 1)


def extend(nodes: NodeSet, indices: Sequence[int], phi_last: Polynomial | None = None) -> list[Polynomial]:
    """Multiply ``phi_{n-1}`` successively by ``(x - x_r)`` for ``r`` in *indices*."""
    if phi_last is None:
        phi_last = newton_basis(nodes)[-1]
    out = []
    q = phi_last
    for r in indices:
        q = mul_linear(q, nodes[r])
        out.append(q)
    return out


def q_extension(nodes: NodeSet, k_max: int, phi_last: Polynomial | None = None) -> list[Polynomial]:
    """``[q_n, ..., q_{n + k_max}]``; each node is a root of every entry."""
    n = nodes.n
    if k_max < 0 or k_max > n:
        raise ValueError(f"k_max must lie in 0..{n}, got {k_max}")
    return extend(nodes, q_factor_indices(n)[: k_max + 1], phi_last)


def repeated_node_extension(
    nodes: NodeSet, k_max: int, phi_last: Polynomial | None = None
) -> list[Polynomial]:
    """``phi_{n-1} * (x - x_n)**(j - n + 1)`` for ``j = n..n+k_max``."""
    n = nodes.n
    if k_max < 0 or k_max > n:
        raise ValueError(f"k_max must lie in 0..{n}, got {k_max}")
    return extend(nodes, repeated_factor_indices(n)[: k_max + 1], phi_last)
