"""Gauss-Legendre rules: Legendre data, high-precision roots, error closed form.

Expanding ``q_{2n}`` in monomials cancels roughly ``0.75 n`` decimal digits
when it is integrated, and the zero test of the degree scan needs a little
more headroom than that, so rules are built at a working precision that adds
``15 + n`` guard digits to the requested target precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .engine import RuleResult, build_rule
from .errors import ConsistencyError, ConvergenceError
from .moments import LegendreWeight
from .polynomial import NodeSet, Polynomial, mul_linear
from .scalar import BigFloatField, Precision, RationalField

MAX_NEWTON_ITERATIONS = 200
_BASE_GUARD_DIGITS = 15


@dataclass(frozen=True)
class LegendreData:
    n: int
    poly: Polynomial
    #: leading coefficient of P_n
    alpha: Fraction
    #: squared L2 norm of P_n on [-1, 1]
    norm_sq: Fraction


@lru_cache(maxsize=None)
def legendre_polynomial(n: int) -> LegendreData:
    """Exact ``P_n`` from ``(k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}``."""
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    prev, cur = Polynomial([Fraction(1)]), Polynomial([Fraction(0), Fraction(1)])
    if n == 0:
        cur = prev
    for k in range(1, n):
        x_cur = Polynomial((Fraction(0),) + cur.coeffs)
        prev, cur = cur, (x_cur * Fraction(2 * k + 1, k + 1)) - prev * Fraction(k, k + 1)

    alpha = Fraction(math.factorial(2 * n), 2**n * math.factorial(n) ** 2)
    norm_sq = Fraction(2, 2 * n + 1)
    if cur.coeffs[-1] != alpha:
        raise ConsistencyError(f"leading coefficient of P_{n} is {cur.coeffs[-1]}, expected {alpha}")
    if LegendreWeight(RationalField()).integrate(cur * cur) != norm_sq:
        raise ConsistencyError(f"squared norm of P_{n} disagrees with 2/(2n+1)")
    return LegendreData(n, cur, alpha, norm_sq)


def closed_form_error(n: int) -> Fraction:
    """Gauss-Legendre error constant ``2^(2n+1) (n!)^4 / ((2n+1) ((2n)!)^3)``."""
    f = math.factorial
    return Fraction(2 ** (2 * n + 1) * f(n) ** 4, (2 * n + 1) * f(2 * n) ** 3)


def orthogonal_error(data: LegendreData) -> Fraction:
    """Error constant ``||P_n||^2 / (alpha^2 (2n)!)`` of the general Gauss rule."""
    return data.norm_sq / (data.alpha**2 * math.factorial(2 * data.n))


def _recurrence(n: int, x):
    """``(P_n(x), P_{n-1}(x))`` by the three-term recurrence."""
    p_prev, p = x * 0 + 1, x
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p, p_prev


def _derivative(n: int, x, p, p_prev):
    return n * (x * p - p_prev) / (x * x - 1)


def _newton_root(n: int, i: int, field: BigFloatField):
    # double-precision start, then refinement at full precision
    x = math.cos(math.pi * (4 * i - 1) / (4 * n + 2))
    for _ in range(50):
        p, pm = _recurrence(n, x)
        dx = p / _derivative(n, x, p, pm)
        x -= dx
        if abs(dx) <= 4e-16 * abs(x):
            break

    ctx = field.ctx
    x = field(x)
    two_ulps = ctx.ldexp(1, 1 - ctx.prec)
    previous = None
    for _ in range(MAX_NEWTON_ITERATIONS):
        p, pm = _recurrence(n, x)
        dx = p / _derivative(n, x, p, pm)
        x -= dx
        step = abs(dx)
        if not step or step <= ctx.ldexp(two_ulps, ctx.mag(x)):
            return x
        # at the rounding-noise floor the step stops shrinking
        if previous is not None and step >= previous and step <= ctx.ldexp(abs(x), -ctx.prec // 2):
            return x
        previous = step
    raise ConvergenceError(f"Newton iteration for root {i} of P_{n} did not converge")


def legendre_roots(n: int, precision: Precision | None = None) -> list:
    """Roots of ``P_n`` in ascending order, mirrored so they are exactly symmetric."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    field = BigFloatField(precision or Precision())
    positive = [_newton_root(n, i, field) for i in range(1, n // 2 + 1)]
    middle = [field.zero] if n % 2 else []
    return [-r for r in positive] + middle + positive[::-1]


def working_precision(target: Precision, n: int) -> Precision:
    """Target precision plus guard digits covering the cancellation in ``I(q_2n)``."""
    return target.extended(_BASE_GUARD_DIGITS + n)


@dataclass(frozen=True)
class GaussRule:
    rule: RuleResult
    closed_form_c: Fraction
    legendre: LegendreData
    #: precision the results are certified to; the rule itself carries more
    target: Precision

    @property
    def nodes(self) -> tuple:
        return self.rule.nodes.nodes

    @property
    def weights(self) -> tuple:
        return self.rule.weights

    @property
    def degree(self) -> int:
        return self.rule.degree

    @property
    def error_coefficient(self):
        return self.rule.error_coefficient

    @property
    def field(self) -> BigFloatField:
        return self.rule.field


def gauss_legendre_rule(n: int, precision: Precision | None = None) -> GaussRule:
    """Build the ``n``-point Gauss-Legendre rule through the generic engine.

    The engine's degree scan still runs and must report ``2n - 1``; its error
    constant must match the closed form to ``10**-(digits - 10)``.
    Disagreement raises :class:`ConsistencyError`.
    """
    target = precision or Precision()
    work = working_precision(target, n)
    field = BigFloatField(work)
    data = legendre_polynomial(n)
    nodes = NodeSet(legendre_roots(n, work), (-1, 1), field)
    rule = build_rule(nodes, LegendreWeight(field))

    closed = closed_form_error(n)
    if orthogonal_error(data) != closed:
        raise ConsistencyError(f"closed-form error constants disagree at n={n}")
    if rule.degree != 2 * n - 1:
        raise ConsistencyError(f"detected degree {rule.degree} for n={n}, expected {2 * n - 1}")
    expected = field(closed)
    rel = abs(rule.error_coefficient - expected) / expected
    if rel > field(10) ** (-(target.decimal_digits - 10)):
        raise ConsistencyError(f"error constant off by relative {field.format(rel, 5)} at n={n}")
    return GaussRule(rule, closed, data, target)
