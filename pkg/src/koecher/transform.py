"""The series-acceleration transform.

For an admissible sequence z and exponent alpha, the slowly convergent sum
S(x) = sum_n 1/((z_n - x) z_n^alpha) is rewritten as

    S(x) = sum_k gamma_k(x) * prod_{l<k} (x - z_l),
    gamma_k(x) = 1/((z_k - x) (k;k-1)) + sum_{n>k} 1/(n;k),

which for the square-type kinds converges geometrically with ratio about
1/4.  The per-k infinite tails dispatch to exact closed forms for the
square, half-square and unit-linear kinds and to bounded direct summation
otherwise.  Coefficient extraction with x treated as a formal variable
reproduces the zeta values attached to the sequence, via exact
elementary-symmetric tables of the reciprocal z values.

Truncation contract: a run stops once the term magnitude falls below
10^-working_digits relative to the running sum with the observed ratio
over the last 10 terms under 0.9, and the geometric extrapolation of that
ratio is folded into the error.  The linear kind decays like 1/k^2 instead
of geometrically; there the run finishes under the alternating-series
remainder bound (|tail| <= next magnitude) with one averaging pass, which
keeps those series usable at oracle grade instead of failing the ratio
test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from mpmath import mp, mpf

from .errors import (AccuracyError, ConditioningError, DomainError,
                     UnsupportedCaseError)
from .precision import BigReal, DEFAULT_CTX, PrecisionContext
from .sequences import (AlphaExponent, CustomSequence, HalfSquare, Linear,
                        PowerShift, ShiftedSquare, ZSequence, as_alpha,
                        pochhammer_exact, pochhammer_product, zeta_z)

__all__ = [
    "TransformInstance",
    "SeriesValue",
    "telescoping_tail",
    "telescoping_partial",
    "series_tail",
    "series_tail_exact",
    "gamma_k",
    "gamma_k_exact",
    "accelerated_sum",
    "lhs_sum",
    "expand_coefficients",
    "sum_alternating_geometric",
]

_RATIO_CAP = mpf("0.9")
_WINDOW = 10


@dataclass(frozen=True)
class SeriesValue:
    value: BigReal
    terms_used: int
    tail_bound: mpf
    tail_rule: str = ""


@dataclass(frozen=True)
class TransformInstance:
    """A sequence, an exponent and a (real, exact) evaluation point x.

    x must lie inside the kind's certified disk: |x| < min(1, z_1) for the
    power-type kinds; |x| <= (alpha - c)/2 together with alpha > max(0, c)
    for the linear kind.
    """

    seq: ZSequence
    alpha: AlphaExponent
    x: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_alpha(self.alpha))
        object.__setattr__(self, "x", Fraction(self.x))
        seq = self.seq
        if isinstance(seq, CustomSequence):
            raise UnsupportedCaseError("custom sequences cannot drive the transform")
        self.alpha.check_for(seq)
        a = self.alpha.value
        z1 = seq.exact(1)
        if isinstance(seq, Linear):
            if a <= max(0, seq.c):
                raise DomainError("linear kind requires alpha > max(0, c)")
            if abs(self.x) > (a - seq.c) / 2:
                raise DomainError("linear kind requires |x| <= (alpha - c)/2")
            if abs(self.x) >= z1:
                raise DomainError("|x| must stay below z_1")
        else:
            if z1 is None:
                # non-rational power kind: compare |x| against z_1 numerically
                with DEFAULT_CTX.workprec():
                    z1_low = seq.approx(1).value - seq.approx(1).err
                    x_abs = abs(mpf(self.x.numerator)) / self.x.denominator
                    if x_abs >= min(mpf(1), z1_low):
                        raise DomainError("|x| must be below min(1, z_1) for this kind")
            elif abs(self.x) >= min(Fraction(1), z1):
                raise DomainError("|x| must be below min(1, z_1) for this kind")


# ---------------------------------------------------------------------------
# telescoping building block
# ---------------------------------------------------------------------------

def telescoping_tail(r: int, k: int) -> Fraction:
    """sum_{n>k} 1/((n+r+k)(n+r+k-1)...(n+r-k)) = r! / (2k (2k+r)!)."""
    if r < 0 or k < 1:
        raise DomainError("telescoping_tail requires r >= 0, k >= 1")
    return Fraction(factorial(r), 2 * k * factorial(2 * k + r))


def telescoping_partial(r: int, k: int, n_top: int) -> Fraction:
    """Exact partial sum of the same series for n = k+1 .. n_top."""
    if n_top <= k:
        raise DomainError("partial sum needs N > k")
    total = Fraction(0)
    for n in range(k + 1, n_top + 1):
        prod = 1
        for i in range(n + r - k, n + r + k + 1):
            prod *= i
        total += Fraction(1, prod)
    return total


# ---------------------------------------------------------------------------
# per-k tails
# ---------------------------------------------------------------------------

def series_tail_exact(seq: ZSequence, alpha, k: int) -> Fraction | None:
    """Closed-form sum_{n>k} 1/(n;k) for the kinds that have one."""
    a = as_alpha(alpha).value
    if isinstance(seq, ShiftedSquare) and a == Fraction(1, 2):
        from .apery import tail_sum_shifted_square

        return tail_sum_shifted_square(k, seq.c)
    if isinstance(seq, PowerShift) and a == Fraction(1, 2) \
            and seq.beta == 2 and seq.d == 0 and seq.c.denominator == 1 and seq.c >= 0:
        from .apery import tail_sum_shifted_square

        return tail_sum_shifted_square(k, int(seq.c))
    if isinstance(seq, HalfSquare) and a == 0:
        from .pipowers import lemma63_sum

        return lemma63_sum(k)
    if isinstance(seq, Linear) and a == 1 and seq.c == 0:
        return Fraction(1, k * factorial(k))
    return None


def _pow_alpha(z: BigReal, a_m: mpf) -> BigReal:
    """z**a for positive z with error propagation."""
    v = z.value ** a_m
    z_low = z.value - z.err
    if z_low <= 0:
        raise ConditioningError("power base indistinguishable from zero")
    deriv = abs(a_m) * abs(v) / z_low
    return BigReal(v, deriv * z.err + abs(v) * (6 + abs(a_m)) * mpf(2) ** (2 - mp.prec))


def series_tail(seq: ZSequence, alpha, k: int,
                ctx: PrecisionContext = DEFAULT_CTX) -> SeriesValue:
    """sum_{n>k} 1/(n;k): exact closed form where available, else direct
    summation with an integral-comparison tail bound."""
    if k < 1:
        raise DomainError("series_tail requires k >= 1")
    a = as_alpha(alpha).value
    closed = series_tail_exact(seq, alpha, k)
    with ctx.workprec():
        if closed is not None:
            v = BigReal.from_fraction(closed)
            return SeriesValue(v, 0, v.err, "closed-form")

        if isinstance(seq, Linear):
            decay = Fraction(a + k)
        elif isinstance(seq, PowerShift):
            decay = Fraction(a + k) * seq.beta
        else:
            decay = 2 * Fraction(a + k)
        if decay <= 1:
            raise DomainError("sum over n of 1/(n;k) diverges for this kind and alpha")

        decay_m = mpf(decay.numerator) / decay.denominator
        c_shift = getattr(seq, "c", Fraction(0))
        c_m = mpf(c_shift.numerator) / c_shift.denominator
        a_m = mpf(a.numerator) / a.denominator
        zk = seq.approx(k)
        total = BigReal(0)
        goal = mpf(10) ** (-(ctx.working_digits + 3))
        # polynomial decay cannot reach the working precision by raw
        # summation; cap the work per k and report the honest bound instead
        cap = min(ctx.max_terms, max(400, 40 * k))
        n = k
        bound = mpf("inf")
        first = None
        while n - k < cap:
            n += 1
            zn = seq.approx(n)
            prod = _pow_alpha(zn, a_m)
            for i in range(1, k + 1):
                prod = prod * (zn - seq.approx(i))
            term = 1 / prod
            total = total + term
            if first is None:
                first = abs(term.value)
            if zn.value >= 2 * zk.value and n > 2 * k:
                # beyond here (z_m - z_i) >= z_m/2, so 1/(m;k) <= 2^k z_m^(-a-k)
                bound = mpf(2) ** k * (n + c_m) ** (1 - decay_m) / (decay_m - 1)
                if bound <= goal * max(first, abs(total.value)):
                    break
        return SeriesValue(BigReal(total.value, total.err + bound),
                           n - k, bound, "direct+integral-bound")


# ---------------------------------------------------------------------------
# gamma_k
# ---------------------------------------------------------------------------

def gamma_k_exact(inst: TransformInstance, k: int) -> Fraction | None:
    """Exact gamma_k(x) when both the head product and the tail are rational."""
    tail = series_tail_exact(inst.seq, inst.alpha, k)
    if tail is None:
        return None
    head_prod = pochhammer_exact(inst.seq, inst.alpha, k, k - 1)
    if head_prod is None:
        return None
    zk = inst.seq.exact(k)
    return 1 / ((zk - inst.x) * head_prod) + tail


def gamma_k(inst: TransformInstance, k: int,
            ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    if k < 1:
        raise DomainError("gamma_k requires k >= 1")
    with ctx.workprec():
        q = gamma_k_exact(inst, k)
        if q is not None:
            return BigReal.from_fraction(q)
        head = pochhammer_product(inst.seq, inst.alpha, k, k - 1, ctx)
        gap = inst.seq.approx(k) - BigReal.from_fraction(inst.x)
        if abs(gap.value) <= abs(inst.seq.approx(k).value) * mpf(10) ** (-ctx.guard_digits):
            raise ConditioningError("x is within guard distance of z_k")
        tail = series_tail(inst.seq, inst.alpha, k, ctx)
        return 1 / (gap * head) + tail.value


def _gamma_stream(inst: TransformInstance, ctx: PrecisionContext):
    """Yield gamma_k(x) for k = 1, 2, ... reusing incremental state.

    The linear kind gets an O(1) head update ((k;k-1) = (k+c)^alpha (k-1)!);
    other kinds fall back to the plain per-k evaluation.
    """
    if isinstance(inst.seq, Linear):
        a = inst.alpha.value
        a_m = mpf(a.numerator) / a.denominator
        c = inst.seq.c
        unit_tail = a == 1 and c == 0
        x_b = BigReal.from_fraction(inst.x)
        fact = BigReal.exact(1)           # (k-1)!
        k = 0
        while True:
            k += 1
            if k > 1:
                fact = fact * (k - 1)
            zk = BigReal.from_fraction(k + c)
            head = _pow_alpha(zk, a_m) * fact
            if unit_tail:
                tail_v = 1 / (BigReal.exact(k * k) * fact)   # 1/(k * k!)
            else:
                tail_v = series_tail(inst.seq, inst.alpha, k, ctx).value
            yield 1 / ((zk - x_b) * head) + tail_v
    else:
        k = 0
        while True:
            k += 1
            yield gamma_k(inst, k, ctx)


# ---------------------------------------------------------------------------
# shared summation engine
# ---------------------------------------------------------------------------

def _run_series(next_term, ctx: PrecisionContext, rule: str,
                alternating_ok: bool = True, cap: int | None = None,
                alt_cap: int | None = None) -> SeriesValue:
    """Accumulate BigReal terms under the truncation contract.

    next_term(k) -> BigReal for k = 1, 2, ...
    """
    stop_scale = mpf(10) ** (-ctx.working_digits)
    cap = cap if cap is not None else min(ctx.max_terms, 100_000)
    alt_cap = alt_cap if alt_cap is not None else min(ctx.max_terms, 4000)
    total = BigReal(0)
    prev_total = total
    mags: list[mpf] = []
    ratios: list[mpf] = []
    prev_sign = 0
    alternating = True
    k = 0
    while True:
        k += 1
        term = next_term(k)
        prev_total = total
        total = total + term
        mag = abs(term.value)
        sign = 1 if term.value > 0 else (-1 if term.value < 0 else 0)
        if mags:
            # ratio against the best of the two previous magnitudes, so a
            # single near-zero term (a bracket crossing zero) cannot spike it
            base = max(mags[-2:])
            if base > 0 and mag > 0:
                ratios.append(mag / base)
                if len(ratios) > _WINDOW:
                    ratios.pop(0)
            if sign != 0 and sign == prev_sign:
                alternating = False
            if mag > mags[-1]:
                alternating = False
        if sign != 0:
            prev_sign = sign
        mags.append(mag)
        if len(mags) > 3:
            mags.pop(0)
        envelope = max(mags)

        if len(ratios) == _WINDOW:
            rmax = max(ratios)
            noise = total.err
            if rmax < _RATIO_CAP and (envelope < stop_scale * max(1, abs(total.value))
                                      or envelope < noise):
                tail = 2 * envelope * rmax / (1 - rmax)
                return SeriesValue(BigReal(total.value, total.err + tail), k, tail, rule)
            if rmax >= _RATIO_CAP:
                if not alternating or not alternating_ok:
                    raise AccuracyError(
                        "term ratios stay above 0.9 and the series cannot be certified",
                        best=BigReal(total.value, total.err + 10 * envelope))
                if k >= alt_cap:
                    averaged = (total.value + prev_total.value) / 2
                    return SeriesValue(BigReal(averaged, total.err + mag),
                                       k, mag, rule + "+alternating-bound")
        if k >= cap:
            raise AccuracyError("series truncation cap reached before certification",
                                best=BigReal(total.value, total.err + 10 * envelope))


def sum_alternating_geometric(term_fn, ctx: PrecisionContext = DEFAULT_CTX):
    """Sum an exact-rational term series under the truncation contract.

    Returns (BigReal, terms_used).  Meant for the geometrically decaying
    central-binomial series; terms are Fractions.
    """
    with ctx.workprec():
        sv = _run_series(lambda k: BigReal.from_fraction(term_fn(k)), ctx,
                         "exact-terms", alternating_ok=True)
        return sv.value, sv.terms_used


def accelerated_sum(inst: TransformInstance,
                    ctx: PrecisionContext = DEFAULT_CTX) -> SeriesValue:
    """Right-hand side of the transform, truncated under the geometric
    contract (alternating fallback for the linear kind)."""
    with ctx.workprec():
        if not isinstance(inst.seq, Linear) and gamma_k_exact(inst, 1) is not None:
            prods: list[Fraction] = [Fraction(1)]

            def term_fn(k: int) -> Fraction:
                while len(prods) < k:
                    kk = len(prods)
                    prods.append(prods[kk - 1] * (inst.x - inst.seq.exact(kk)))
                return gamma_k_exact(inst, k) * prods[k - 1]

            value, used = sum_alternating_geometric(term_fn, ctx)
            return SeriesValue(value, used, value.err, "accelerated-exact")

        gammas = _gamma_stream(inst, ctx)
        x_b = BigReal.from_fraction(inst.x)
        state = {"prod": BigReal.exact(1), "k": 0}

        def next_term(k: int) -> BigReal:
            g = next(gammas)
            term = g * state["prod"]
            state["prod"] = state["prod"] * (x_b - inst.seq.approx(k))
            return term

        cap = min(ctx.max_terms, 4000)
        sv = _run_series(next_term, ctx, "accelerated-generic", cap=cap)
        return sv


def lhs_sum(inst: TransformInstance,
            ctx: PrecisionContext = DEFAULT_CTX) -> SeriesValue:
    """Left-hand side sum_n 1/((z_n - x) z_n^alpha): direct summation with
    an analytic digamma tail for the rational kinds at x > 0, the sequence
    zeta function at x = 0, and an integral-comparison bound otherwise."""
    with ctx.workprec():
        if inst.x == 0:
            s = inst.alpha.value + 1
            v = zeta_z(inst.seq, s, ctx)
            return SeriesValue(v, 0, v.err, "zeta-closed")
        closed = _lhs_psi_tail(inst, ctx)
        if closed is not None:
            return closed
        return _lhs_direct(inst, ctx)


def _lhs_psi_tail(inst: TransformInstance, ctx: PrecisionContext) -> SeriesValue | None:
    from .gammafunc import digamma

    seq, a, x = inst.seq, inst.alpha.value, inst.x
    if isinstance(seq, Linear) and a == 1 and x != 0:
        shift, mode = seq.c, "linear"     # both signs of x factor over 1/x
    elif x <= 0:
        return None                       # square roots of x needed below
    elif isinstance(seq, ShiftedSquare) and a == Fraction(1, 2):
        shift, mode = Fraction(seq.c), "square-half"
    elif isinstance(seq, HalfSquare) and a == 0:
        shift, mode = Fraction(1, 2), "square-zero"
    else:
        return None

    head_n = 80
    partial = BigReal(0)
    for n in range(1, head_n + 1):
        zn = seq.exact(n)
        za = seq.power_exact(n, a)
        partial = partial + BigReal.from_fraction(1 / ((zn - x) * za))

    edge = BigReal.from_fraction(head_n + 1 + shift)
    x_b = BigReal.from_fraction(x)
    x_m = x_b.value
    if mode == "linear":
        tail = (digamma(edge.value, ctx) - digamma((edge - x_b).value, ctx)) / x_b
    else:
        w = x_b.sqrt()
        psi_m = digamma((edge - w).value, ctx)
        psi_p = digamma((edge + w).value, ctx)
        # psi is evaluated at a point known only to within w.err; |psi'| < 1/(y-1)
        input_slack = 2 * w.err / (edge.value - w.value - 1)
        if mode == "square-half":
            psi0 = digamma(edge.value, ctx)
            tail = (2 * psi0 - psi_m - psi_p) / (2 * x_b)
        else:
            tail = (psi_p - psi_m) / (2 * w)
        tail = BigReal(tail.value, tail.err + input_slack / x_m)
    value = partial + tail
    return SeriesValue(value, head_n, value.err, "direct+psi-tail")


def _lhs_direct(inst: TransformInstance, ctx: PrecisionContext) -> SeriesValue:
    seq, a, x = inst.seq, inst.alpha.value, inst.x
    a_m = mpf(a.numerator) / a.denominator
    x_m = mpf(x.numerator) / x.denominator
    goal = ctx.tolerance() / 100
    # raw mpf accumulation for speed; roundoff is folded in at the end
    total = mpf(0)
    abs_total = mpf(0)
    n = 0
    bound = mpf("inf")
    while n < ctx.max_terms:
        n += 1
        zn = seq.approx(n).value
        term = 1 / ((zn - x_m) * zn ** a_m)
        total += term
        abs_total += abs(term)
        if n % 64 == 0:
            z_next = seq.approx(n + 1).value
            if z_next <= x_m:
                continue
            delta = 1 / (1 - x_m / z_next) if x > 0 else mpf(1)
            bound = delta * _zeta_tail_bound(seq, a_m + 1, n)
            if bound <= goal * max(1, abs(total)):
                break
    roundoff = abs_total * (10 + abs(a_m)) * mpf(2) ** (2 - mp.prec) * 4
    if bound <= goal * max(1, abs(total)):
        return SeriesValue(BigReal(total, bound + roundoff), n, bound,
                           "direct+integral-bound")
    best = BigReal(total, bound + roundoff)
    raise AccuracyError("max_terms exhausted before the tail bound met tolerance", best=best)


def _zeta_tail_bound(seq: ZSequence, s_m: mpf, n: int) -> mpf:
    """Upper bound for sum_{m>n} z_m^(-s) by integral comparison."""
    c = getattr(seq, "c", Fraction(1, 2) if isinstance(seq, HalfSquare) else Fraction(0))
    c_m = mpf(c.numerator) / c.denominator
    if isinstance(seq, Linear):
        expo = s_m
    elif isinstance(seq, PowerShift):
        expo = s_m * mpf(seq.beta.numerator) / seq.beta.denominator
    else:
        expo = 2 * s_m
    return (n + c_m) ** (1 - expo) / (expo - 1)


# ---------------------------------------------------------------------------
# formal coefficient extraction
# ---------------------------------------------------------------------------

def expand_coefficients(inst: TransformInstance, order: int,
                        ctx: PrecisionContext = DEFAULT_CTX) -> list[BigReal]:
    """Coefficients of x^0..x^order of the accelerated side; coefficient m
    approximates zeta_z(m + alpha + 1).

    Supported: shifted squares with alpha = 1/2 (the formal variable is the
    squared one), half squares with alpha = 0, and the unit linear kind
    with alpha = 1.  The square kinds run term-by-term in exact rationals;
    the linear kind runs in tracked floating point with the alternating
    remainder bound (its exact tables grow without cancellation).
    """
    if order < 0 or order > 10:
        raise DomainError("order must lie in 0..10")
    seq, a = inst.seq, inst.alpha.value
    if isinstance(seq, ShiftedSquare) and a == Fraction(1, 2):
        geometric = True
    elif isinstance(seq, HalfSquare) and a == 0:
        geometric = True
    elif isinstance(seq, Linear) and a == 1 and seq.c == 0:
        geometric = False
    else:
        raise UnsupportedCaseError(
            "coefficient extraction supports sqshift(alpha=1/2), halfsq(alpha=0), linear:c=0(alpha=1)")

    with ctx.workprec():
        if geometric:
            return _expand_exact(seq, a, order, ctx)
        return _expand_linear_tracked(order, ctx)


def _term_coefficients_exact(seq, a, k: int, order: int,
                             elem: list[Fraction], prod_z: Fraction) -> list[Fraction]:
    zk = seq.exact(k)
    inv_zk = 1 / zk
    head = pochhammer_exact(seq, a, k, k - 1)
    tail = series_tail_exact(seq, a, k)
    sign = 1 if k % 2 == 1 else -1
    out = []
    for m in range(order + 1):
        inner = Fraction(0)
        for nu in range(0, m + 1):
            inner += (-1) ** nu * elem[nu] * inv_zk ** (m - nu + 1) / head
        inner += (-1) ** m * elem[m] * tail
        out.append(sign * prod_z * inner)
    return out


def _expand_exact(seq, a, order: int, ctx: PrecisionContext) -> list[BigReal]:
    stop_scale = mpf(10) ** (-ctx.working_digits)
    cap = min(ctx.max_terms, 10_000)
    sums = [BigReal(0) for _ in range(order + 1)]
    elem = [Fraction(1)] + [Fraction(0)] * order     # e_nu of {1/z_l : l < k}
    prod_z = Fraction(1)                             # prod_{l<k} z_l
    ratios: list[mpf] = []
    prev_mag = None
    k = 0
    while True:
        k += 1
        coefs = _term_coefficients_exact(seq, a, k, order, elem, prod_z)
        brs = [BigReal.from_fraction(cq) for cq in coefs]
        for m in range(order + 1):
            sums[m] = sums[m] + brs[m]
        mag = max(abs(b.value) for b in brs)
        if prev_mag is not None and prev_mag > 0 and mag > 0:
            ratios.append(mag / prev_mag)
            if len(ratios) > _WINDOW:
                ratios.pop(0)
        prev_mag = mag
        inv_zk = 1 / seq.exact(k)
        for nu in range(order, 0, -1):
            elem[nu] += elem[nu - 1] * inv_zk
        prod_z *= seq.exact(k)

        if len(ratios) == _WINDOW:
            rmax = max(ratios)
            scale = max([mpf(1)] + [abs(s.value) for s in sums])
            if rmax < _RATIO_CAP and mag < stop_scale * scale:
                tail_b = mag * rmax / (1 - rmax)
                return [BigReal(s.value, s.err + tail_b) for s in sums]
        if k >= cap:
            raise AccuracyError("coefficient series did not certify its tail")


def _expand_linear_tracked(order: int, ctx: PrecisionContext) -> list[BigReal]:
    # z_l = l, alpha = 1: head (k;k-1) = k!, tail 1/(k*k!), e_nu over {1/l}
    cap = min(ctx.max_terms, 4000)
    sums = [BigReal(0) for _ in range(order + 1)]
    prev_snapshot = list(sums)
    elem = [BigReal.exact(1)] + [BigReal(0)] * order
    prod_z = BigReal.exact(1)
    fact = BigReal.exact(1)                          # k!
    k = 0
    while k < cap:
        k += 1
        fact = fact * k
        inv_zk = BigReal.exact(1) / k
        tail = 1 / (k * fact)
        inv_head = 1 / fact
        sign = 1 if k % 2 == 1 else -1
        snapshot = list(sums)
        for m in range(order + 1):
            inner = BigReal(0)
            for nu in range(0, m + 1):
                inner = inner + (-1) ** nu * elem[nu] * inv_zk.pow_int(m - nu + 1) * inv_head
            inner = inner + (-1) ** m * elem[m] * tail
            sums[m] = sums[m] + sign * prod_z * inner
        prev_snapshot = snapshot
        for nu in range(order, 0, -1):
            elem[nu] = elem[nu] + elem[nu - 1] * inv_zk
        prod_z = prod_z * k
    out = []
    for m in range(order + 1):
        avg = (sums[m].value + prev_snapshot[m].value) / 2
        corr = abs(sums[m].value - prev_snapshot[m].value)
        out.append(BigReal(avg, sums[m].err + corr))
    return out
