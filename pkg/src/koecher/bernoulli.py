"""Exact Bernoulli numbers.

Computed once per index by the defining recurrence
``sum_{k=0}^{n} C(n+1, k) B_k = 0`` and cached; everything downstream
(Euler-Maclaurin tails, asymptotic digamma/log-gamma series, even-zeta
closed forms) pulls from the same table.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import DomainError

__all__ = ["bernoulli"]

_cache: list[Fraction] = [Fraction(1)]


def _extend(n: int) -> None:
    while len(_cache) <= n:
        m = len(_cache)
        s = Fraction(0)
        for k in range(m):
            s += comb(m + 1, k) * _cache[k]
        _cache.append(-s / (m + 1))


def bernoulli(n: int) -> Fraction:
    """B_n for n = 0, 1, or even n; odd n > 1 are rejected (they vanish and
    no caller needs them)."""
    if n < 0:
        raise DomainError("Bernoulli index must be nonnegative")
    if n % 2 == 1 and n > 1:
        raise DomainError("odd Bernoulli indices above 1 are not supported")
    _extend(n)
    return _cache[n]
