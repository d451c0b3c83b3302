"""Double-exponential (tanh-sinh) quadrature with level doubling.

Two transforms are provided: the classic tanh-sinh rule on a finite
interval, which tolerates integrable endpoint singularities (powers of
logarithms and mild negative powers), and an exp-type rule on (0, inf) for
integrands with exponential decay.  Node tables are cached per binary
precision and level, so batches of integrals at one context reuse all
transcendental evaluations.

Abscissas near a finite endpoint are produced as offsets from that endpoint
(x = b - span*lam with lam = 1/(1+e^{2u})), and the engine runs at ~1.6x the
context's working precision so those offsets stay representable well below
the requested accuracy.  A node whose abscissa still collapses onto an
endpoint is skipped; its weight is beyond the precision floor.

The reported error is the last level-doubling difference times a safety
factor of 10 plus a roundoff allowance; it is a well-tested heuristic, not
a proof, so acceptance-level checks always compare against independent
closed forms.
"""

from __future__ import annotations

from mpmath import mp, mpf

from .errors import AccuracyError
from .precision import BigReal, DEFAULT_CTX, PrecisionContext

__all__ = ["de_quadrature", "de_quadrature_half_line"]

_MAX_LEVEL = 12

_finite_nodes: dict = {}
_half_nodes: dict = {}


def _engine_prec(ctx: PrecisionContext) -> int:
    return int(ctx.prec_bits * 1.6) + 32


def _finite_level_nodes(level: int):
    """(lam, weight) pairs for t > 0 at this level.

    lam = (1 - tanh((pi/2) sinh t)) / 2 is the fractional distance from the
    nearer endpoint; weight = (pi/2) cosh t / cosh^2((pi/2) sinh t).
    """
    key = (mp.prec, level)
    if key in _finite_nodes:
        return _finite_nodes[key]
    half_pi = mp.pi / 2
    t_max = mp.asinh((mp.prec + 20) * mp.log(2) / mp.pi) + 1
    lam_min = mpf(2) ** (-mp.prec)
    h = mpf(2) ** (-level)
    j, step = (1, 1) if level == 0 else (1, 2)
    nodes = []
    while True:
        t = j * h
        if t > t_max:
            break
        u = half_pi * mp.sinh(t)
        q = mp.exp(-2 * u)
        lam = q / (1 + q)
        if lam > lam_min:
            w = half_pi * mp.cosh(t) * 4 * q / (1 + q) ** 2
            nodes.append((lam, w))
        j += step
    _finite_nodes[key] = nodes
    return nodes


def de_quadrature(f, a, b, ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    """Integrate f over the finite interval (a, b); f maps mpf to mpf."""
    with mp.workprec(_engine_prec(ctx)):
        a = mpf(a)
        b = mpf(b)
        if a == b:
            return BigReal(0)
        span = b - a
        half_span = span / 2
        goal = mpf(10) ** (-(ctx.target_digits + 5))

        def shell(level: int) -> tuple[mpf, mpf]:
            total = mpf(0)
            absum = mpf(0)
            for lam, w in _finite_level_nodes(level):
                x_hi = b - span * lam
                x_lo = a + span * lam
                fx = mpf(0)
                if x_hi != b:
                    fx += f(x_hi)
                if x_lo != a:
                    fx += f(x_lo)
                fx *= w
                total += fx
                absum += abs(fx)
            return total, absum

        center = (mp.pi / 2) * f(a + half_span)
        raw0, abs_raw = shell(0)
        abs_raw += abs(center)
        estimate = (center + raw0) * half_span        # h = 1 at level 0
        prev = estimate
        for level in range(1, _MAX_LEVEL + 1):
            h = mpf(2) ** (-level)
            new, newabs = shell(level)
            abs_raw += newabs
            prev = estimate
            estimate = estimate / 2 + new * h * half_span
            diff = abs(estimate - prev)
            if level >= 3 and diff <= goal * max(1, abs(estimate)):
                err = 10 * diff + abs_raw * abs(half_span) * mpf(2) ** (8 - mp.prec)
                return BigReal(estimate, err)
        best = BigReal(estimate, 10 * abs(estimate - prev))
    raise AccuracyError("tanh-sinh quadrature did not converge", best=best)


def _half_line_level_nodes(level: int):
    """(t, weight) pairs for the map t = exp(u - e^-u) on (0, inf)."""
    key = (mp.prec, level)
    if key in _half_nodes:
        return _half_nodes[key]
    u_max = mp.log((mp.prec + 30) * mp.log(2)) + 1
    h = mpf(2) ** (-level)
    j, step = (0, 1) if level == 0 else (1, 2)
    nodes = []
    while True:
        u = j * h
        if u > u_max:
            break
        signs = (1,) if u == 0 else (1, -1)
        for sign in signs:
            uu = sign * u
            eu = mp.exp(-uu)
            t = mp.exp(uu - eu)
            nodes.append((t, t * (1 + eu)))
        j += step
    _half_nodes[key] = nodes
    return nodes


def de_quadrature_half_line(f, ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    """Integrate f over (0, inf); f must decay at least like exp(-t)."""
    with mp.workprec(_engine_prec(ctx)):
        goal = mpf(10) ** (-(ctx.target_digits + 5))

        def shell(level: int) -> tuple[mpf, mpf]:
            total = mpf(0)
            absum = mpf(0)
            for t, w in _half_line_level_nodes(level):
                fx = w * f(t)
                total += fx
                absum += abs(fx)
            return total, absum

        estimate, abs_raw = shell(0)                  # h = 1 at level 0
        prev = estimate
        for level in range(1, _MAX_LEVEL + 1):
            h = mpf(2) ** (-level)
            new, newabs = shell(level)
            abs_raw += newabs
            prev = estimate
            estimate = estimate / 2 + new * h
            diff = abs(estimate - prev)
            if level >= 3 and diff <= goal * max(1, abs(estimate)):
                err = 10 * diff + abs_raw * mpf(2) ** (8 - mp.prec)
                return BigReal(estimate, err)
        best = BigReal(estimate, 10 * abs(estimate - prev))
    raise AccuracyError("half-line quadrature did not converge", best=best)
