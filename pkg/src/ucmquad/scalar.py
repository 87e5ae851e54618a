"""Arithmetic backends: exact rationals and arbitrary-precision binary floats.

Every computation picks one :class:`Field` up front and keeps all of its
quantities in that field.  Rational scalars are plain :class:`fractions.Fraction`
objects; big floats are ``mpf`` values from a private :class:`mpmath.MPContext`
so that concurrent computations at different precisions never share state.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

import mpmath
from mpmath import libmp

Scalar = Union[Fraction, Any]  # Fraction or mpf

DEFAULT_BITS = 384
MIN_BITS = 64
#: guard digits between the working precision and the zero-test tolerance
GUARD_DIGITS = 10

_LOG10_2 = math.log10(2)
_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*$")


@dataclass(frozen=True)
class Precision:
    """Working precision of a big-float computation, in bits."""

    bits: int = DEFAULT_BITS

    def __post_init__(self) -> None:
        if not isinstance(self.bits, int) or self.bits < MIN_BITS:
            raise ValueError(f"precision must be at least {MIN_BITS} bits, got {self.bits!r}")

    @property
    def decimal_digits(self) -> int:
        return math.ceil(self.bits * _LOG10_2)

    @classmethod
    def from_digits(cls, digits: int) -> Precision:
        """Largest bit count whose derived decimal digit count is *digits*."""
        if digits < 1:
            raise ValueError(f"digits must be positive, got {digits}")
        bits = math.floor(digits / _LOG10_2)
        if math.ceil(bits * _LOG10_2) < digits:
            bits += 1
        return cls(bits)

    def extended(self, extra_digits: int) -> Precision:
        """A precision carrying *extra_digits* more decimal digits."""
        return Precision(self.bits + math.ceil(extra_digits / _LOG10_2))


def rational(n: int, d: int = 1) -> Fraction:
    """Reduced rational ``n/d`` with positive denominator.

    Raises :class:`ZeroDivisionError` when ``d == 0``.
    """
    return Fraction(n, d)


def is_effectively_zero(x: Scalar, scale: Scalar = 0, tol: Scalar | None = None) -> bool:
    """Zero test shared by every module.

    Rationals are tested exactly.  Big floats are zero when
    ``|x| <= tol * max(scale, 1)``.
    """
    if isinstance(x, (Fraction, int)):
        return x == 0
    if tol is None:
        raise ValueError("a tolerance is required for big-float zero tests")
    return abs(x) <= tol * max(abs(scale), 1)


class Field:
    """Common surface of the two arithmetic flavors."""

    flavor: str
    precision: Precision | None

    def __call__(self, value: Any) -> Scalar:
        raise NotImplementedError

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def owns(self, x: Any) -> bool:
        raise NotImplementedError

    def is_zero(self, x: Scalar, scale: Scalar = 0) -> bool:
        raise NotImplementedError

    def format(self, x: Scalar, digits: int | None = None) -> str:
        raise NotImplementedError

    def parse(self, text: str) -> Scalar:
        raise NotImplementedError

    def to_float(self, x: Scalar) -> float:
        return float(x)


class RationalField(Field):
    """Exact arithmetic over :class:`fractions.Fraction`."""

    flavor = "rational"
    precision = None

    def __call__(self, value: Any) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, str)):
            return Fraction(value)
        if isinstance(value, float):
            return Fraction(value)
        raise TypeError(f"cannot represent {value!r} as an exact rational")

    def owns(self, x: Any) -> bool:
        return isinstance(x, Fraction)

    def is_zero(self, x: Scalar, scale: Scalar = 0) -> bool:
        return x == 0

    def tolerance(self) -> Fraction:
        return Fraction(0)

    def format(self, x: Scalar, digits: int | None = None) -> str:
        return f"{x.numerator}/{x.denominator}"

    def parse(self, text: str) -> Fraction:
        m = _RATIONAL_RE.match(text)
        if m is None:
            raise ValueError(f"not a rational literal: {text!r}")
        return Fraction(int(m.group(1)), int(m.group(2) or 1))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("rational")

    def __repr__(self) -> str:
        return "RationalField()"


class BigFloatField(Field):
    """Binary floating point at a fixed working precision.

    Each instance owns its own mpmath context, so values created here round
    to ``precision.bits`` regardless of what other code does with the global
    ``mpmath.mp``.
    """

    flavor = "bigfloat"

    def __init__(self, precision: Precision | None = None, tol: Any = None) -> None:
        self.precision = precision or Precision()
        self.ctx = mpmath.MPContext()
        self.ctx.prec = self.precision.bits
        if tol is None:
            tol = self.ctx.mpf(10) ** (-(self.precision.decimal_digits - GUARD_DIGITS))
        self.tol = self.ctx.mpf(tol)

    def __call__(self, value: Any) -> Any:
        ctx = self.ctx
        if isinstance(value, ctx.mpf):
            return value
        if isinstance(value, Fraction):
            return ctx.make_mpf(
                libmp.from_rational(value.numerator, value.denominator, ctx.prec, libmp.round_nearest)
            )
        return ctx.mpf(value)

    def owns(self, x: Any) -> bool:
        return isinstance(x, self.ctx.mpf)

    def tolerance(self) -> Any:
        return self.tol

    def is_zero(self, x: Scalar, scale: Scalar = 0) -> bool:
        return is_effectively_zero(x, scale, self.tol)

    def format(self, x: Scalar, digits: int | None = None) -> str:
        """Scientific notation with *digits* significant digits."""
        digits = digits or self.precision.decimal_digits
        return libmp.to_str(
            self(x)._mpf_,
            digits,
            strip_zeros=False,
            min_fixed=math.inf,
            max_fixed=-math.inf,
            show_zero_exponent=True,
        )

    def parse(self, text: str) -> Any:
        text = text.strip()
        m = _RATIONAL_RE.match(text)
        if m is not None:
            return self(Fraction(int(m.group(1)), int(m.group(2) or 1)))
        return self.ctx.mpf(text)

    def sqrt(self, x: Any) -> Any:
        return self.ctx.sqrt(self(x))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BigFloatField) and other.precision == self.precision

    def __hash__(self) -> int:
        return hash(("bigfloat", self.precision.bits))

    def __repr__(self) -> str:
        return f"BigFloatField(Precision(bits={self.precision.bits}))"
