"""Equally spaced families: Newton-Cotes (closed and open) and Adams rules.

Each family is built on integer nodes ``t_i`` over a normalized interval; the
physical rule on step ``h`` follows from ``x = anchor + h t``, giving weights
``a_i = h b_i`` and an error ``h**(d+2) c f^(d+1)(xi)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .engine import RuleResult, build_rule
from .moments import Uniform
from .polynomial import NodeSet
from .scalar import Field, RationalField, Scalar


class Family(enum.Enum):
    CLOSED_NEWTON_COTES = "newton-cotes-closed"
    OPEN_NEWTON_COTES = "newton-cotes-open"
    ADAMS_BASHFORTH = "adams-bashforth"
    ADAMS_MOULTON = "adams-moulton"

    @classmethod
    def parse(cls, name: str) -> Family:
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown family {name!r}") from None


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.family, Family):
            object.__setattr__(self, "family", Family.parse(self.family))
        lowest = 2 if self.family is Family.CLOSED_NEWTON_COTES else 1
        if not isinstance(self.n, int) or self.n < lowest:
            raise ValueError(f"{self.family.value} needs n >= {lowest}, got {self.n!r}")


@dataclass(frozen=True)
class ScaledError:
    """``E(f) = h**h_power * coefficient * f^(derivative_order)(xi)``."""

    coefficient: Scalar
    h_power: int
    derivative_order: int


def normalized_nodes(spec: FamilySpec, field: Field | None = None) -> tuple[NodeSet, tuple]:
    """Integer nodes and the normalized integration interval of a family."""
    field = field or RationalField()
    n = spec.n
    if spec.family is Family.CLOSED_NEWTON_COTES:
        t, interval = list(range(n)), (0, n - 1)
    elif spec.family is Family.OPEN_NEWTON_COTES:
        t, interval = list(range(1, n + 1)), (0, n + 1)
    elif spec.family is Family.ADAMS_BASHFORTH:
        t, interval = [-i for i in range(n)], (0, 1)
    else:
        t, interval = [1 - i for i in range(n)], (0, 1)
    nodes = NodeSet([Fraction(v) for v in t], interval, field)
    return nodes, nodes.interval


def build_family_rule(spec: FamilySpec, field: Field | None = None) -> tuple[RuleResult, ScaledError]:
    """Run the engine on the normalized layout and attach the ``h``-scaled error."""
    nodes, (a, b) = normalized_nodes(spec, field)
    rule = build_rule(nodes, Uniform(a, b, nodes.field))
    # one extra power of h comes from dx = h dt
    err = ScaledError(rule.error_coefficient, rule.degree + 2, rule.derivative_order)
    return rule, err


def step_size(spec: FamilySpec, a, b) -> Fraction:
    """Node spacing of a Newton-Cotes rule on ``[a, b]``; Adams rules use ``b - a``."""
    if spec.family is Family.CLOSED_NEWTON_COTES:
        return (b - a) / (spec.n - 1)
    if spec.family is Family.OPEN_NEWTON_COTES:
        return (b - a) / (spec.n + 1)
    return b - a


def physical_rule(rule: RuleResult, h, anchor) -> tuple[list, list]:
    """Nodes ``anchor + h t_i`` and weights ``h b_i`` of the rule in ``x``."""
    nodes = [anchor + h * t for t in rule.nodes]
    weights = [h * w for w in rule.weights]
    return nodes, weights
