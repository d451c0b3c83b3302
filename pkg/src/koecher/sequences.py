"""Increasing sequences z_1 < z_2 < ... and their derived quantities.

A sequence kind bundles: exact values where the parameters are rational,
working-precision values otherwise, the generalized Pochhammer-style
product z_n^alpha * prod_{i<=k} (z_n - z_i), the attached zeta function
sum z_n^(-s), and the boundedness diagnostic

    P_N = prod_{i=1..N} (z_1 + z_i) / (z_{N+1} - z_i),

whose boundedness is what makes the acceleration transform's telescoping
remainder vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .constants import hurwitz_zeta
from .errors import DomainError, UnsupportedCaseError
from .precision import BigReal, DEFAULT_CTX, PrecisionContext

__all__ = [
    "ZSequence",
    "PowerShift",
    "Linear",
    "ShiftedSquare",
    "HalfSquare",
    "CustomSequence",
    "AlphaExponent",
    "as_alpha",
    "z_value",
    "pochhammer_product",
    "pochhammer_exact",
    "zeta_z",
    "pn_bound_diagnostic",
    "parse_sequence_spec",
]


def _frac_mpf(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


class ZSequence:
    """Base class; subclasses implement one sequence kind."""

    def exact(self, n: int) -> Fraction | None:
        """Exact z_n when representable as a rational, else None."""
        raise NotImplementedError

    def approx(self, n: int) -> BigReal:
        """z_n at the ambient mpmath precision."""
        q = self.exact(n)
        if q is None:
            raise NotImplementedError
        return BigReal.from_fraction(q)

    def power_exact(self, n: int, alpha: Fraction) -> Fraction | None:
        """Exact z_n**alpha when that happens to be rational."""
        if alpha == 0:
            return Fraction(1)
        q = self.exact(n)
        if q is None:
            return None
        if alpha.denominator == 1:
            return q ** alpha.numerator
        return None

    def zeta_min_s(self) -> Fraction:
        """Infimum of s for which sum z_n^(-s) converges."""
        raise NotImplementedError

    def zeta(self, s, ctx: PrecisionContext) -> BigReal:
        raise NotImplementedError

    @property
    def growth_epsilon(self):
        """Empirical eps with z_n >= eps*n over the first 10^3 indices.

        Diagnostic only; used to size tail-bound integrals, never to claim
        a proof of the asymptotic growth condition.
        """
        eps = None
        for n in range(1, 1001):
            q = self.exact(n)
            r = (q if q is not None else self.approx(n).value) / n
            if eps is None or r < eps:
                eps = r
        return eps

    def spec_string(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return self.spec_string()


@dataclass(frozen=True, repr=False)
class PowerShift(ZSequence):
    """z_n = (n + c)^beta + d with c > -1, d >= 0, beta > 1."""

    c: Fraction
    d: Fraction
    beta: Fraction

    def __post_init__(self):
        if self.c <= -1:
            raise DomainError("PowerShift requires c > -1")
        if self.d < 0:
            raise DomainError("PowerShift requires d >= 0")
        if self.beta <= 1:
            raise DomainError("PowerShift requires beta > 1")

    def exact(self, n):
        if self.beta.denominator == 1:
            return (n + self.c) ** self.beta.numerator + self.d
        return None

    def approx(self, n):
        q = self.exact(n)
        if q is not None:
            return BigReal.from_fraction(q)
        base = _frac_mpf(n + self.c)
        b = _frac_mpf(self.beta)
        v = base ** b
        err = abs(v) * (6 + abs(b)) * mpf(2) ** (2 - mp.prec)
        return BigReal(v, err) + BigReal.from_fraction(self.d)

    def zeta_min_s(self) -> Fraction:
        return 1 / self.beta

    def zeta(self, s, ctx):
        if self.d == 0:
            return hurwitz_zeta(_to_mpf(s) * _frac_mpf(self.beta), 1 + self.c, ctx)
        return _zeta_direct(self, s, ctx)

    def spec_string(self):
        return f"power:c={_fmt(self.c)},d={_fmt(self.d)},beta={_fmt(self.beta)}"


@dataclass(frozen=True, repr=False)
class Linear(ZSequence):
    """z_n = n + c with c > -1."""

    c: Fraction

    def __post_init__(self):
        if self.c <= -1:
            raise DomainError("Linear requires c > -1")

    def exact(self, n):
        return n + self.c

    def zeta_min_s(self) -> Fraction:
        return Fraction(1)

    def zeta(self, s, ctx):
        return hurwitz_zeta(s, 1 + self.c, ctx)

    def spec_string(self):
        return f"linear:c={_fmt(self.c)}"


@dataclass(frozen=True, repr=False)
class ShiftedSquare(ZSequence):
    """z_n = (n + c)^2 with integer c >= 0."""

    c: int

    def __post_init__(self):
        if self.c < 0 or not isinstance(self.c, int):
            raise DomainError("ShiftedSquare requires integer c >= 0")

    def exact(self, n):
        return Fraction((n + self.c) ** 2)

    def power_exact(self, n, alpha):
        if 2 * alpha == int(2 * alpha):
            return Fraction(n + self.c) ** int(2 * alpha)
        return None

    def zeta_min_s(self) -> Fraction:
        return Fraction(1, 2)

    def zeta(self, s, ctx):
        return hurwitz_zeta(2 * _to_mpf(s), 1 + self.c, ctx)

    def spec_string(self):
        return f"sqshift:c={self.c}"


@dataclass(frozen=True, repr=False)
class HalfSquare(ZSequence):
    """z_n = (n + 1/2)^2."""

    def exact(self, n):
        return Fraction(2 * n + 1, 2) ** 2

    def power_exact(self, n, alpha):
        if 2 * alpha == int(2 * alpha):
            return Fraction(2 * n + 1, 2) ** int(2 * alpha)
        return None

    def zeta_min_s(self) -> Fraction:
        return Fraction(1, 2)

    def zeta(self, s, ctx):
        return hurwitz_zeta(2 * _to_mpf(s), Fraction(3, 2), ctx)

    def spec_string(self):
        return "halfsq"


@dataclass(frozen=True, repr=False)
class CustomSequence(ZSequence):
    """A finite verification-only prefix; no zeta (the tail is unknown)."""

    values: tuple
    declared_epsilon: Fraction

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "declared_epsilon", Fraction(self.declared_epsilon))
        if self.declared_epsilon <= 0:
            raise DomainError("growth epsilon must be positive")
        prev = Fraction(0)
        for i, v in enumerate(vals, start=1):
            if v <= prev:
                raise DomainError("custom sequence must be strictly increasing and positive")
            if v < self.declared_epsilon * i:
                raise DomainError(f"z_{i} violates the declared growth bound")
            prev = v

    def exact(self, n):
        if not 1 <= n <= len(self.values):
            raise DomainError(f"custom sequence has no index {n}")
        return self.values[n - 1]

    @property
    def growth_epsilon(self):
        return self.declared_epsilon

    def zeta_min_s(self) -> Fraction:
        raise UnsupportedCaseError("custom sequences do not define a zeta function")

    def zeta(self, s, ctx):
        raise UnsupportedCaseError(
            "a finite prefix cannot bound the zeta tail; custom sequences are verification-only")

    def spec_string(self):
        return "custom:" + ",".join(_fmt(v) for v in self.values)


# ---------------------------------------------------------------------------
# alpha
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlphaExponent:
    """Exponent alpha >= 0; alpha = 0 is allowed only when sum 1/z_n already
    converges (growth strictly faster than linear)."""

    value: Fraction

    def __post_init__(self):
        if self.value < 0:
            raise DomainError("alpha must be nonnegative")

    def check_for(self, seq: ZSequence) -> None:
        if self.value > 0:
            return
        try:
            needs = seq.zeta_min_s()
        except UnsupportedCaseError:
            return  # custom prefixes carry no convergence claim
        if needs >= 1:
            raise DomainError("alpha = 0 requires sum 1/z_n to converge for this kind")


def as_alpha(a) -> AlphaExponent:
    if isinstance(a, AlphaExponent):
        return a
    return AlphaExponent(Fraction(a))


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def z_value(seq: ZSequence, n: int, ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    if n < 1:
        raise DomainError("sequence indices start at 1")
    with ctx.workprec():
        return seq.approx(n)


def pochhammer_exact(seq: ZSequence, alpha, n: int, k: int) -> Fraction | None:
    """Exact (n;k) = z_n^alpha * prod_{i<=k}(z_n - z_i), or None."""
    alpha = as_alpha(alpha).value
    head = seq.power_exact(n, alpha)
    if head is None:
        return None
    zn = seq.exact(n)
    for i in range(1, k + 1):
        head *= zn - seq.exact(i)
    return head


def pochhammer_product(seq: ZSequence, alpha, n: int, k: int,
                       ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    if n < 1 or k < 0:
        raise DomainError("pochhammer_product requires n >= 1, k >= 0")
    with ctx.workprec():
        q = pochhammer_exact(seq, alpha, n, k)
        if q is not None:
            return BigReal.from_fraction(q)
        alpha_v = as_alpha(alpha).value
        zn = seq.approx(n)
        a_m = _frac_mpf(alpha_v)
        v = zn.value ** a_m
        head = BigReal(v, abs(v) * (6 + abs(a_m)) * mpf(2) ** (2 - mp.prec) + zn.err * (abs(a_m) + 1))
        for i in range(1, k + 1):
            head = head * (zn - seq.approx(i))
        return head


def zeta_z(seq: ZSequence, s, ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    """sum_n z_n^(-s) with a rigorous tail bound folded into err."""
    s_m = _to_mpf(s)
    try:
        min_s = seq.zeta_min_s()
    except UnsupportedCaseError:
        raise
    if s_m <= _frac_mpf(min_s):
        raise DomainError(f"zeta_z diverges for s <= {min_s} on {seq.spec_string()}")
    with ctx.workprec():
        return seq.zeta(s, ctx)


def _zeta_direct(seq: PowerShift, s, ctx: PrecisionContext) -> BigReal:
    # d > 0 has no Hurwitz reduction; sum directly, bound the tail by the
    # integral of (x+c)^(-beta*s)
    s_m = _to_mpf(s)
    beta_s = _frac_mpf(seq.beta) * s_m
    with ctx.workprec():
        goal = ctx.tolerance()
        total = BigReal(0)
        cap = min(ctx.max_terms, 50_000)
        c_m = _frac_mpf(seq.c)
        n = 0
        while n < cap:
            n += 1
            zn = seq.approx(n)
            v = zn.value ** (-s_m)
            total = total + BigReal(v, abs(v) * (6 + abs(s_m)) * mpf(2) ** (2 - mp.prec))
            if n >= 10:
                bound = (n + c_m) ** (1 - beta_s) / (beta_s - 1)
                if bound <= goal:
                    return BigReal(total.value, total.err + bound)
        bound = (n + c_m) ** (1 - beta_s) / (beta_s - 1)
        return BigReal(total.value, total.err + bound)


def pn_bound_diagnostic(seq: ZSequence, n_max: int):
    """P_N for N = 1..n_max plus a monotone-trend verdict.

    The verdict is advisory: "bounded-looking" when P_N is non-increasing
    over the last half of the range, "suspect" otherwise.
    """
    if n_max < 2:
        raise DomainError("n_max must be at least 2")
    exact_ok = all(seq.exact(n) is not None for n in (1, 2))
    values = []
    with DEFAULT_CTX.workprec():
        z = [None] + [seq.exact(n) if exact_ok else seq.approx(n).value
                      for n in range(1, n_max + 2)]
        for big_n in range(1, n_max + 1):
            p = Fraction(1) if exact_ok else mpf(1)
            for i in range(1, big_n + 1):
                p *= (z[1] + z[i]) / (z[big_n + 1] - z[i])
            values.append((big_n, p))
    half = n_max // 2
    tail = [v for _, v in values[half - 1:]]
    monotone = all(b <= a for a, b in zip(tail, tail[1:]))
    return values, ("bounded-looking" if monotone else "suspect")


# ---------------------------------------------------------------------------
# CLI grammar
# ---------------------------------------------------------------------------

def _fmt(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _parse_number(text: str) -> Fraction:
    # exact decimal / rational parsing; no binary float round trip
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(text)


def parse_sequence_spec(text: str) -> ZSequence:
    """Parse "power:c=..,d=..,beta=..", "linear:c=..", "sqshift:c=..",
    "halfsq" with bit-exact decimal parameters."""
    head, _, rest = text.strip().partition(":")
    params = {}
    if rest:
        for item in rest.split(","):
            key, _, val = item.partition("=")
            if not val:
                raise DomainError(f"malformed sequence parameter {item!r}")
            params[key.strip()] = _parse_number(val)
    try:
        if head == "power":
            return PowerShift(params["c"], params["d"], params["beta"])
        if head == "linear":
            return Linear(params["c"])
        if head == "sqshift":
            c = params["c"]
            if c.denominator != 1:
                raise DomainError("sqshift requires an integer c")
            return ShiftedSquare(int(c))
        if head == "halfsq":
            if params:
                raise DomainError("halfsq takes no parameters")
            return HalfSquare()
    except KeyError as exc:
        raise DomainError(f"missing sequence parameter {exc}") from None
    raise DomainError(f"unknown sequence kind {head!r}")


def _to_mpf(s) -> mpf:
    if isinstance(s, Fraction):
        return _frac_mpf(s)
    return mpf(s)
