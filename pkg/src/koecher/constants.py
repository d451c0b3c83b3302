"""Reference constants: pi, the Riemann/Hurwitz zeta function and the
even-argument closed forms.

zeta values are produced by Euler-Maclaurin summation with the exact
Bernoulli table.  For f(x) = (x+a)^(-s) with real s > 1 the correction
series is enveloping (consecutive partial sums bracket the true value), so
the remainder is bounded by the first omitted term; a factor-2 cushion is
recorded on top of that.  pi comes from Machin's two-arctangent formula,
whose alternating tails are bounded by their first omitted terms.
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath import mp, mpf

from .bernoulli import bernoulli
from .errors import AccuracyError, DomainError
from .precision import BigReal, DEFAULT_CTX, PrecisionContext

__all__ = [
    "pi_reference",
    "zeta_reference",
    "hurwitz_zeta",
    "zeta_even_closed_form",
]

_cache: dict = {}


def _real(x) -> mpf:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def _frac_mpf(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


def _power_real(base: mpf, expo: mpf) -> BigReal:
    """base**expo with an error bound covering mpmath's few-ulp slack and
    the first-order effect of one ulp of slack in the base."""
    v = base ** expo
    return BigReal(v, abs(v) * (6 + abs(expo)) * mpf(2) ** (2 - mp.prec))


# ---------------------------------------------------------------------------
# pi
# ---------------------------------------------------------------------------

def _arctan_recip(q: int) -> BigReal:
    """arctan(1/q) for integer q >= 2, alternating Taylor series."""
    qq = q * q
    power = BigReal.exact(1) / q
    total = BigReal(0)
    j = 0
    while True:
        term = power / (2 * j + 1)
        total = total - term if j % 2 else total + term
        power = power / qq
        j += 1
        nxt = abs(power.value) / (2 * j + 1)
        if nxt < mpf(2) ** (-mp.prec - 8):
            return BigReal(total.value, total.err + nxt)


def pi_reference(ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    key = ("pi", ctx.prec_bits)
    if key not in _cache:
        with ctx.workprec():
            _cache[key] = 16 * _arctan_recip(5) - 4 * _arctan_recip(239)
    return _cache[key]


# ---------------------------------------------------------------------------
# Hurwitz / Riemann zeta by Euler-Maclaurin
# ---------------------------------------------------------------------------

def _hurwitz_em(s_m: mpf, a_m: mpf, ctx: PrecisionContext) -> BigReal:
    goal = mpf(10) ** (-(ctx.working_digits + 3))
    big_n = max(10, int(1.35 * ctx.working_digits) + int(abs(s_m)) + 2)

    for _ in range(6):
        partial = BigReal(0)
        for n in range(big_n):
            partial = partial + _power_real(n + a_m, -s_m)
        edge = mpf(big_n) + a_m
        inv_edge_s = _power_real(edge, -s_m)
        total = (partial
                 + _power_real(edge, 1 - s_m) / (BigReal(s_m) - 1)
                 + inv_edge_s / 2)

        # correction terms B_{2k}/(2k)! * (s)_{2k-1} * (N+a)^{1-s-2k}
        edge_sq = BigReal(edge).pow_int(2)
        poch = BigReal(s_m)                       # (s)_1
        power = _power_real(edge, 1 - s_m)
        fact = 1
        prev_mag = None
        for k in range(1, 300):
            fact *= (2 * k - 1) * (2 * k)
            power = power / edge_sq               # (N+a)^{1-s-2k}
            term = BigReal.from_fraction(bernoulli(2 * k)) * poch * power / fact
            mag = abs(term.value)
            if prev_mag is not None and mag > prev_mag:
                break                             # asymptotic floor; enlarge N
            total = total + term
            prev_mag = mag
            poch = poch * (s_m + 2 * k - 1) * (s_m + 2 * k)
            if mag <= goal * max(1, abs(total.value)):
                first_omitted = (abs(_frac_mpf(bernoulli(2 * k + 2)))
                                 * abs(poch.value) * abs(power.value)
                                 / (edge_sq.value * fact * (2 * k + 1) * (2 * k + 2)))
                return BigReal(total.value, total.err + 2 * first_omitted)
        big_n *= 2
    raise AccuracyError("Euler-Maclaurin zeta evaluation failed to converge")


def hurwitz_zeta(s, a, ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    """zeta(s, a) = sum_{n>=0} (n+a)^(-s) for real s > 1, a > 0."""
    if _real(s) <= 1:
        raise DomainError("hurwitz_zeta requires s > 1")
    if _real(a) <= 0:
        raise DomainError("hurwitz_zeta requires a > 0")
    key = ("hz", str(s), str(a), ctx.prec_bits)
    if key not in _cache:
        with ctx.workprec():
            _cache[key] = _hurwitz_em(_real(s), _real(a), ctx)
    return _cache[key]


def zeta_reference(s, ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    """Riemann zeta(s) for real s > 1; independent Euler-Maclaurin oracle."""
    if _real(s) <= 1:
        raise DomainError("zeta_reference requires s > 1")
    return hurwitz_zeta(s, 1, ctx)


def zeta_even_closed_form(n: int, ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    """zeta(2n) = (-1)^(n-1) 2^(2n-1) B_{2n} / (2n)! * pi^(2n), n >= 1."""
    if n < 1:
        raise DomainError("zeta_even_closed_form requires n >= 1")
    with ctx.workprec():
        rational = ((-1) ** (n - 1) * Fraction(2 ** (2 * n - 1)) * bernoulli(2 * n)
                    / math.factorial(2 * n))
        return BigReal.from_fraction(rational) * pi_reference(ctx).pow_int(2 * n)
