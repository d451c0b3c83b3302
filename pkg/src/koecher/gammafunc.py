"""Digamma and log-gamma for positive real arguments.

Both use the same scheme: shift the argument upward through the functional
equation until the asymptotic Bernoulli series converges below the working
precision, then evaluate that series.  For real positive arguments the
Bernoulli tails alternate and envelop, so the first omitted term bounds the
remainder.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import mp, mpf

from .bernoulli import bernoulli
from .errors import AccuracyError, DomainError
from .precision import BigReal, DEFAULT_CTX, PrecisionContext

__all__ = ["digamma", "log_gamma"]

_cache: dict = {}


def _real(x) -> mpf:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def _log(x: mpf) -> BigReal:
    v = mp.log(x)
    return BigReal(v, (abs(v) + 1) * mpf(2) ** (4 - mp.prec))


def _digamma_asymptotic(t: mpf, goal: mpf) -> BigReal:
    # psi(t) = log t - 1/(2t) - sum_k B_{2k} / (2k t^{2k}),  |R| <= first omitted
    total = _log(t) - BigReal(1) / (2 * t)
    t_sq = BigReal(t).pow_int(2)
    power = BigReal.exact(1)
    prev_mag = None
    for k in range(1, 400):
        power = power / t_sq
        term = BigReal.from_fraction(bernoulli(2 * k) / (2 * k)) * power
        mag = abs(term.value)
        if prev_mag is not None and mag > prev_mag:
            return None  # type: ignore[return-value]
        total = total - term
        prev_mag = mag
        if mag <= goal:
            nxt = abs(_real(bernoulli(2 * k + 2) / (2 * k + 2))) * abs(power.value) / t_sq.value
            return BigReal(total.value, total.err + 2 * nxt)
    return None  # type: ignore[return-value]


def digamma(z, ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    """psi(z) for real z > 0 via upward recurrence plus asymptotic series."""
    z_m = _real(z)
    if z_m <= 0:
        raise DomainError("digamma requires z > 0 (poles are unsupported)")
    key = ("psi", str(z), ctx.prec_bits)
    if key in _cache:
        return _cache[key]
    with ctx.workprec():
        goal = mpf(10) ** (-(ctx.working_digits + 3))
        shift_to = max(20, ctx.target_digits / 2)
        for _ in range(6):
            m = max(0, int(mp.ceil(shift_to - z_m)))
            head = _digamma_asymptotic(z_m + m, goal)
            if head is not None:
                for j in range(m):
                    head = head - BigReal.exact(1) / BigReal(z_m + j)
                _cache[key] = head
                return head
            shift_to *= 2
    raise AccuracyError("digamma asymptotic series failed to converge")


def _log_gamma_asymptotic(t: mpf, goal: mpf, ctx: PrecisionContext) -> BigReal:
    from .constants import pi_reference

    two_pi = 2 * pi_reference(ctx)
    total = (BigReal(t) - Fraction(1, 2)) * _log(t) - BigReal(t) + _log(two_pi.value) / 2
    total = BigReal(total.value, total.err + two_pi.err)  # fold in pi's own bound
    t_sq = BigReal(t).pow_int(2)
    power = BigReal.exact(1) / t
    prev_mag = None
    for k in range(1, 400):
        term = BigReal.from_fraction(bernoulli(2 * k) / ((2 * k) * (2 * k - 1))) * power
        mag = abs(term.value)
        if prev_mag is not None and mag > prev_mag:
            return None  # type: ignore[return-value]
        total = total + term
        prev_mag = mag
        power = power / t_sq
        if mag <= goal:
            nxt = abs(_real(bernoulli(2 * k + 2) / ((2 * k + 2) * (2 * k + 1)))) * abs(power.value)
            return BigReal(total.value, total.err + 2 * nxt)
    return None  # type: ignore[return-value]


def log_gamma(z, ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    """log Gamma(z) for real z > 0."""
    z_m = _real(z)
    if z_m <= 0:
        raise DomainError("log_gamma requires z > 0")
    key = ("lgamma", str(z), ctx.prec_bits)
    if key in _cache:
        return _cache[key]
    with ctx.workprec():
        goal = mpf(10) ** (-(ctx.working_digits + 3))
        shift_to = max(20, ctx.target_digits / 2)
        for _ in range(6):
            m = max(0, int(mp.ceil(shift_to - z_m)))
            head = _log_gamma_asymptotic(z_m + m, goal, ctx)
            if head is not None:
                for j in range(m):
                    head = head - _log(z_m + j)
                _cache[key] = head
                return head
            shift_to *= 2
    raise AccuracyError("log_gamma asymptotic series failed to converge")
