"""Moments of supported weight functions and the integral functional they induce."""

from __future__ import annotations

import threading
from abc import ABC, abstractmethod

from .polynomial import Polynomial
from .scalar import Field, RationalField, Scalar


class MomentProvider(ABC):
    """Supplies ``mu_k = int_a^b w(x) x**k dx`` in a fixed field, memoized."""

    def __init__(self, field: Field | None = None) -> None:
        self.field = field or RationalField()
        self._cache: list = []
        self._lock = threading.Lock()

    @property
    @abstractmethod
    def interval(self) -> tuple:
        """Integration interval ``(a, b)`` in the provider's field."""

    @abstractmethod
    def _compute(self, k: int) -> Scalar:
        ...

    def warm(self, k_max: int) -> None:
        """Fill the cache through ``mu_{k_max}``."""
        with self._lock:
            for k in range(len(self._cache), k_max + 1):
                self._cache.append(self._compute(k))

    def moment(self, k: int) -> Scalar:
        if k < 0:
            raise ValueError(f"moment order must be nonnegative, got {k}")
        if k >= len(self._cache):
            self.warm(k)
        return self._cache[k]

    def integrate(self, p: Polynomial) -> Scalar:
        """``I(p) = sum_k coeff_k(p) * mu_k``."""
        return self.integrate_with_scale(p)[0]

    def integrate_with_scale(self, p: Polynomial) -> tuple:
        """``I(p)`` together with ``sum_k |coeff_k(p)| * |mu_k|``.

        The second value is the magnitude that rounding errors in ``I(p)``
        scale with, and is what big-float zero tests compare against.
        """
        self.warm(p.degree)
        mu = self._cache
        total = self.field.zero
        scale = self.field.zero
        for c, m in zip(p.coeffs, mu):
            t = c * m
            total += t
            scale += abs(t)
        return total, scale

    def magnitude(self, p: Polynomial) -> Scalar:
        """``sum_k |coeff_k(p)| * |mu_k|``."""
        self.warm(p.degree)
        total = self.field.zero
        for c, mu in zip(p.coeffs, self._cache):
            total += abs(c * mu)
        return total

    def mass(self) -> Scalar:
        return self.moment(0)


class Uniform(MomentProvider):
    """``w = 1`` on ``[a, b]``."""

    def __init__(self, a, b, field: Field | None = None) -> None:
        super().__init__(field)
        self.a = self.field(a)
        self.b = self.field(b)
        if not self.a < self.b:
            raise ValueError(f"need a < b, got ({self.a}, {self.b})")

    @property
    def interval(self) -> tuple:
        return (self.a, self.b)

    def _compute(self, k: int) -> Scalar:
        return (self.b ** (k + 1) - self.a ** (k + 1)) / (k + 1)

    def __repr__(self) -> str:
        return f"Uniform({self.a}, {self.b}, field={self.field!r})"


class LegendreWeight(MomentProvider):
    """``w = 1`` on ``[-1, 1]``: odd moments vanish, even ones are ``2/(k+1)``."""

    @property
    def interval(self) -> tuple:
        return (-self.field.one, self.field.one)

    def _compute(self, k: int) -> Scalar:
        if k % 2:
            return self.field.zero
        return self.field(2) / (k + 1)

    def __repr__(self) -> str:
        return f"LegendreWeight(field={self.field!r})"
