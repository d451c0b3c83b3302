"""Working-precision control and error-tracked arbitrary-precision reals.

All numeric work in this package happens at a *working precision* of
``target_digits + guard_digits`` decimal digits.  Values are carried as
:class:`BigReal` pairs ``(value, err)`` where ``err`` is an upper bound on
the absolute distance to the exact quantity.  Arithmetic propagates the
bounds of both operands and adds a small multiple of the unit roundoff of
the result, so a chain of operations stays honestly bounded as long as the
guard digits absorb the accumulated roundoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .errors import ConditioningError

__all__ = ["PrecisionContext", "BigReal", "DEFAULT_CTX", "to_fraction"]

_LOG2_10 = math.log2(10)


@dataclass(frozen=True)
class PrecisionContext:
    """Requested accuracy plus head-room for intermediate roundoff.

    target_digits: decimal digits the caller wants to trust.
    guard_digits:  extra working digits absorbing roundoff; >= 10.
    max_terms:     cap on series truncation lengths.
    """

    target_digits: int = 50
    guard_digits: int = 20
    max_terms: int = 10**6

    def __post_init__(self):
        if self.target_digits < 1:
            raise ValueError("target_digits must be positive")
        if self.guard_digits < 10:
            raise ValueError("guard_digits must be at least 10")
        if self.max_terms < 1:
            raise ValueError("max_terms must be positive")

    @classmethod
    def for_digits(cls, target_digits: int, max_terms: int = 10**6) -> "PrecisionContext":
        # one ulp may be lost per addition, so budget log10(max_terms) digits
        guard = 10 + max(0, math.ceil(math.log10(max_terms)))
        return cls(target_digits, max(10, guard), max_terms)

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits

    @property
    def prec_bits(self) -> int:
        return int(self.working_digits * _LOG2_10) + 8

    def workprec(self):
        """Context manager setting mpmath's binary precision."""
        return mp.workprec(self.prec_bits)

    def tolerance(self):
        with self.workprec():
            return mpf(10) ** (-self.target_digits)

    def working_eps(self):
        with self.workprec():
            return mpf(10) ** (-self.working_digits)


DEFAULT_CTX = PrecisionContext()


def _round_err(x) -> mpf:
    # 4 half-ulps of the result at the ambient precision; generous enough to
    # also cover the rounding of the err field itself
    if x == 0:
        return mpf(0)
    return abs(x) * mpf(2) ** (2 - mp.prec)


def to_fraction(x) -> Fraction:
    """Exact conversion of int/Fraction/mpf/float to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, mpf):
        # mpf is a dyadic rational, so this is exact
        p, q = mp.mpf(x).as_integer_ratio()
        return Fraction(p, q)
    raise TypeError(f"cannot convert {type(x)!r} to Fraction")


class BigReal:
    """An mpf value with a rigorous absolute error bound attached.

    Instances are immutable.  Arithmetic must run inside a
    ``PrecisionContext.workprec()`` block (or any mpmath precision scope);
    the roundoff contribution is taken from the ambient precision.
    """

    __slots__ = ("value", "err")

    def __init__(self, value, err=0):
        object.__setattr__(self, "value", mpf(value))
        object.__setattr__(self, "err", abs(mpf(err)))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("BigReal is immutable")

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @staticmethod
    def exact(n: int) -> "BigReal":
        v = mpf(n)
        err = mpf(0) if v == n else _round_err(v)
        return BigReal(v, err)

    @staticmethod
    def from_fraction(q) -> "BigReal":
        q = to_fraction(q)
        num = mpf(q.numerator)
        den = mpf(q.denominator)
        v = num / den
        if q.denominator == 1 and num == q.numerator:
            return BigReal(v, 0)
        return BigReal(v, 3 * _round_err(v))

    @staticmethod
    def from_transcendental(x) -> "BigReal":
        """Wrap the result of an mpmath elementary function call.

        mpmath's exp/log/power land within a couple of ulps of the true
        value; a 16-ulp cushion is used as the recorded bound.
        """
        x = mpf(x)
        return BigReal(x, abs(x) * mpf(2) ** (4 - mp.prec))

    @staticmethod
    def coerce(x) -> "BigReal":
        if isinstance(x, BigReal):
            return x
        if isinstance(x, int):
            return BigReal.exact(x)
        if isinstance(x, Fraction):
            return BigReal.from_fraction(x)
        if isinstance(x, (float, mpf)):
            return BigReal(mpf(x), 0)  # treated as an exact dyadic input
        raise TypeError(f"cannot coerce {type(x)!r} to BigReal")

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def __add__(self, other):
        o = BigReal.coerce(other)
        v = self.value + o.value
        return BigReal(v, self.err + o.err + _round_err(v))

    __radd__ = __add__

    def __neg__(self):
        return BigReal(-self.value, self.err)

    def __sub__(self, other):
        return self + (-BigReal.coerce(other))

    def __rsub__(self, other):
        return BigReal.coerce(other) + (-self)

    def __mul__(self, other):
        o = BigReal.coerce(other)
        v = self.value * o.value
        err = (abs(self.value) * o.err + abs(o.value) * self.err
               + self.err * o.err + _round_err(v))
        return BigReal(v, err)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = BigReal.coerce(other)
        denom_low = abs(o.value) - o.err
        if denom_low <= 0:
            raise ConditioningError("division by a quantity whose error bound straddles zero")
        v = self.value / o.value
        err = (self.err + abs(v) * o.err) / denom_low + _round_err(v)
        return BigReal(v, err)

    def __rtruediv__(self, other):
        return BigReal.coerce(other) / self

    def __abs__(self):
        return BigReal(abs(self.value), self.err)

    def pow_int(self, n: int) -> "BigReal":
        if n < 0:
            return BigReal.exact(1) / self.pow_int(-n)
        result = BigReal.exact(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sqrt(self) -> "BigReal":
        if self.value < 0:
            raise ConditioningError("sqrt of a negative value")
        v = mp.sqrt(self.value)
        if v == 0:
            return BigReal(0, mp.sqrt(self.err))
        # d sqrt(x) = dx / (2 sqrt(x)); valid since err < value is checked below
        if self.err >= self.value:
            return BigReal(v, mp.sqrt(self.err) + _round_err(v))
        return BigReal(v, self.err / (2 * v) * mpf("1.01") + 4 * _round_err(v))

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------
    def agrees_with(self, other, slack=0) -> bool:
        o = BigReal.coerce(other)
        return abs(self.value - o.value) <= self.err + o.err + slack

    def to_decimal(self, digits: int) -> str:
        return mp.nstr(self.value, digits, strip_zeros=False)

    def __repr__(self):
        return f"BigReal({mp.nstr(self.value, 20)}, err={mp.nstr(self.err, 3)})"
