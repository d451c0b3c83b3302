"""Identities for even powers of pi from the half-square sequence.

The generalized harmonic numbers used here are nested sums over squared
odd reciprocals,

    oH_K(v) = sum_{K >= k1 > ... > kv >= 1} 1/((2k1+1)^2 ... (2kv+1)^2),

with oH_K(0) = 1.  The per-k tails of the transform reduce through Gauss's
hypergeometric evaluation at unit argument to the exact closed form

    sum_{n>k} n(n+1)(n-k-1)!/(n+k+1)!
        = (2k^3+5k^2+3k+1) / ((2k-1)(2k+1)(2k+1)!),

and the full identity family expresses (1 - 4^(-mu-1)) zeta(2mu+2), a
rational multiple of pi^(2mu+2), as a central-binomial series over 16^k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mpf

from .errors import DomainError
from .gammafunc import log_gamma
from .precision import BigReal, DEFAULT_CTX, PrecisionContext
from .transform import SeriesValue, sum_alternating_geometric

__all__ = [
    "odd_harmonic",
    "OddHarmonicTable",
    "gauss_2f1_unit",
    "gauss_2f1_unit_exact",
    "lemma63_sum",
    "lemma63_decomposition",
    "theorem61_term",
    "theorem61_rhs",
    "leshchiner_series",
]

_oh_rows: list[list[Fraction]] = [[Fraction(1)]]  # row K holds oH_K(0..K)


def odd_harmonic(big_k: int, nu: int) -> Fraction:
    """oH_K(nu), exact; K = 0 gives 1 at nu = 0 and 0 otherwise."""
    if big_k < 0 or nu < 0:
        raise DomainError("odd_harmonic requires K >= 0, nu >= 0")
    if nu > big_k:
        return Fraction(0)
    while len(_oh_rows) <= big_k:
        prev = _oh_rows[-1]
        k = len(_oh_rows)
        w = Fraction(1, (2 * k + 1) ** 2)
        row = [Fraction(1)]
        for m in range(1, k + 1):
            above = prev[m] if m < len(prev) else Fraction(0)
            row.append(above + prev[m - 1] * w)
        _oh_rows.append(row)
    return _oh_rows[big_k][nu]


@dataclass(frozen=True)
class OddHarmonicTable:
    k_max: int
    depth_max: int

    def value(self, big_k: int, nu: int) -> Fraction:
        if big_k > self.k_max or nu > self.depth_max:
            raise DomainError("outside the materialized table")
        return odd_harmonic(big_k, nu)


# ---------------------------------------------------------------------------
# Gauss 2F1 at unit argument
# ---------------------------------------------------------------------------

def gauss_2f1_unit_exact(a: int, b: int, c_param: int) -> Fraction:
    """Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)) for integer arguments."""
    for arg in (c_param, c_param - a - b, c_param - a, c_param - b):
        if arg <= 0:
            raise DomainError("gamma pole in the unit-argument evaluation")
    if c_param - a - b <= 0:
        raise DomainError("requires c - a - b > 0")
    return Fraction(math.factorial(c_param - 1) * math.factorial(c_param - a - b - 1),
                    math.factorial(c_param - a - 1) * math.factorial(c_param - b - 1))


def gauss_2f1_unit(a: int, b: int, c_param,
                   ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    """2F1(a, b; c; 1) by Gauss's evaluation; exact factorial quotients for
    integer arguments, log-gamma otherwise."""
    if a < 0 or b < 0:
        raise DomainError("a and b must be nonnegative integers")
    if isinstance(c_param, int) or (isinstance(c_param, Fraction) and c_param.denominator == 1):
        c_i = int(c_param)
        if c_i - a - b <= 0:
            raise DomainError("requires c - a - b > 0")
        with ctx.workprec():
            return BigReal.from_fraction(gauss_2f1_unit_exact(a, b, c_i))
    c_m = mpf(c_param.numerator) / c_param.denominator if isinstance(c_param, Fraction) else mpf(c_param)
    if c_m - a - b <= 0:
        raise DomainError("requires c - a - b > 0")
    with ctx.workprec():
        from mpmath import mp

        acc = (log_gamma(c_m, ctx) + log_gamma(c_m - a - b, ctx)
               - log_gamma(c_m - a, ctx) - log_gamma(c_m - b, ctx))
        v = mp.exp(acc.value)
        return BigReal(v, abs(v) * (acc.err * mpf("1.01") + mpf(2) ** (4 - mp.prec)))


# ---------------------------------------------------------------------------
# the half-square tail
# ---------------------------------------------------------------------------

def lemma63_sum(k: int) -> Fraction:
    """Exact (2k^3+5k^2+3k+1) / ((2k-1)(2k+1)(2k+1)!)."""
    if k < 1:
        raise DomainError("lemma63_sum requires k >= 1")
    return Fraction(2 * k ** 3 + 5 * k ** 2 + 3 * k + 1,
                    (2 * k - 1) * (2 * k + 1) * math.factorial(2 * k + 1))


def lemma63_decomposition(k: int) -> dict:
    """The S0, S1, S2 split of the shifted tail, each built from the Gauss
    evaluation, plus their recombination; audit companion to lemma63_sum."""
    if k < 1:
        raise DomainError("k must be >= 1")
    base = Fraction(1, math.factorial(2 * k + 2))
    s0 = base * gauss_2f1_unit_exact(1, 1, 2 * k + 3)
    s1 = base * gauss_2f1_unit_exact(1, 2, 2 * k + 3) - s0
    shift2 = 2 * base * gauss_2f1_unit_exact(1, 3, 2 * k + 3)
    s2 = s0 - 3 * (s0 + s1) + shift2
    total = s2 + (2 * k + 3) * s1 + (k + 1) * (k + 2) * s0
    return {"S0": s0, "S1": s1, "S2": s2, "total": total}


# ---------------------------------------------------------------------------
# the identity family
# ---------------------------------------------------------------------------

def theorem61_term(mu: int, k: int) -> Fraction:
    """k-th series term of the identity for (1 - 4^(-mu-1)) zeta(2mu+2)."""
    lead = Fraction(math.comb(2 * k, k), 16 ** k * (2 * k + 1) ** 2)
    bracket = (Fraction(10 * k ** 3 + 9 * k ** 2 - k + 1, 2 * k - 1)
               * odd_harmonic(k - 1, mu))
    inner = Fraction(0)
    for j in range(1, mu + 1):
        inner += Fraction((-1) ** j, (2 * k + 1) ** (2 * j)) * odd_harmonic(k - 1, mu - j)
    bracket += 4 * k * (k + 1) * inner
    sign = (-1) ** (k + mu - 1)
    return sign * lead * bracket


def theorem61_rhs(mu: int, ctx: PrecisionContext = DEFAULT_CTX) -> SeriesValue:
    """1 + sum_k of theorem61_term; equals (1 - 4^(-mu-1)) zeta(2mu+2)."""
    if mu < 0 or mu > 8:
        raise DomainError("mu must lie in 0..8")
    with ctx.workprec():
        series, used = sum_alternating_geometric(lambda k: theorem61_term(mu, k), ctx)
        value = BigReal.exact(1) + series
        return SeriesValue(value, used, series.err, "central-binomial-16^k")


def leshchiner_term(mu: int, k: int) -> Fraction:
    lead = Fraction((-1) ** k * math.comb(2 * k, k), 16 ** k * (2 * k + 1) ** 2)
    if mu == 0:
        return lead
    inner = sum(Fraction(1, (2 * j + 1) ** 2) for j in range(k))  # j from 0
    return lead * (Fraction(1, (2 * k + 1) ** 2) - Fraction(5, 4) * inner)


def leshchiner_series(mu: int, ctx: PrecisionContext = DEFAULT_CTX) -> SeriesValue:
    """The two closing displays: pi^2/10 (mu=0) and pi^4/96 (mu=1), with the
    inner sum starting at j = 0."""
    if mu not in (0, 1):
        raise DomainError("only the two displayed cases mu = 0, 1 are covered")
    with ctx.workprec():
        series, used = sum_alternating_geometric(lambda k: leshchiner_term(mu, k), ctx)
        value = BigReal.exact(1) + series
        return SeriesValue(value, used, series.err, "central-binomial-16^k")
