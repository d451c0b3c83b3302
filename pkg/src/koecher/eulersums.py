"""Alternating Euler sums, their integral evaluations, and the identity
family expressing zeta(n) through them.

The nested sums zeta(s1,...,sm) run over k1 > ... > km >= 1 with
(-1)^(k_j) attached to each overlined slot.  The workhorse evaluator for
the shapes (k+2 overlined, then m-1 ones) is the integral

    zeta(ol(k+2), {1}^(m-1)) = (-1)^(m+k)/(m! k!)
        * int_0^1 (log x)^k (log(1+x))^m dx/x,

computed after the substitution x = e^(-t) as a half-line integral with
exponential decay, which removes the log-power endpoint singularity.  A
direct nested-summation oracle (with one averaging pass on the alternating
outermost index) provides low-precision cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .errors import DomainError, UnsupportedCaseError
from .precision import BigReal, DEFAULT_CTX, PrecisionContext
from .quadrature import de_quadrature, de_quadrature_half_line

__all__ = [
    "MzvIndex",
    "parse_mzv",
    "hyperharmonic",
    "HyperharmonicTable",
    "euler_sum_integral",
    "euler_sum_direct",
    "theorem41_rhs",
    "s_n",
    "theorem42_genfun",
    "genfun_tail_estimate",
    "genfun_default_n_max",
    "lemma43_integral",
]


# ---------------------------------------------------------------------------
# index notation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MzvIndex:
    """A signed composition: ((exponent, alternating), ...), outermost first."""

    entries: tuple

    def __post_init__(self):
        entries = tuple((int(s), bool(a)) for s, a in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise DomainError("an index needs at least one slot")
        for s, _ in entries:
            if s < 1:
                raise DomainError("exponents must be >= 1")
        s0, a0 = entries[0]
        if s0 < 2 and not a0:
            raise DomainError("divergent index: first slot needs exponent >= 2 or alternation")

    @property
    def depth(self) -> int:
        return len(self.entries)

    def text(self) -> str:
        return "z(" + ",".join(("-" if a else "") + str(s) for s, a in self.entries) + ")"

    @staticmethod
    def euler_shape(k: int, m: int) -> "MzvIndex":
        """(k+2 overlined, then m-1 plain ones)."""
        if k < 0 or m < 1:
            raise DomainError("euler_shape requires k >= 0, m >= 1")
        return MzvIndex(((k + 2, True),) + ((1, False),) * (m - 1))


def parse_mzv(text: str) -> MzvIndex:
    """Parse "z(-2,1,1)"; a leading minus marks an alternating slot."""
    t = text.strip()
    if not (t.startswith("z(") and t.endswith(")")):
        raise DomainError(f"malformed index {text!r}")
    slots = []
    for piece in t[2:-1].split(","):
        piece = piece.strip()
        if not piece:
            raise DomainError(f"malformed index {text!r}")
        alt = piece.startswith("-")
        slots.append((int(piece[1:] if alt else piece), alt))
    return MzvIndex(tuple(slots))


# ---------------------------------------------------------------------------
# hyperharmonic numbers
# ---------------------------------------------------------------------------

_hh_rows: list[list[Fraction]] = [[Fraction(1)]]  # row K holds H_K(0..K)


def hyperharmonic(big_k: int, m: int) -> Fraction:
    """H_K(m) = sum over K >= k1 > ... > km >= 1 of 1/(k1...km), exact."""
    if big_k < 1 or m < 0:
        raise DomainError("hyperharmonic requires K >= 1, m >= 0")
    if m > big_k:
        return Fraction(0)
    while len(_hh_rows) <= big_k:
        prev = _hh_rows[-1]
        k = len(_hh_rows)
        row = [Fraction(1)]
        for mm in range(1, k + 1):
            above = prev[mm] if mm < len(prev) else Fraction(0)
            row.append(above + prev[mm - 1] / k)
        _hh_rows.append(row)
    return _hh_rows[big_k][m]


@dataclass(frozen=True)
class HyperharmonicTable:
    """Materialized rectangle of H_K(m) for K <= k_max, m <= depth_max."""

    k_max: int
    depth_max: int

    def value(self, big_k: int, m: int) -> Fraction:
        if big_k > self.k_max or m > self.depth_max:
            raise DomainError("outside the materialized table")
        if m == 0:
            return Fraction(1)
        return hyperharmonic(big_k, m)


# ---------------------------------------------------------------------------
# evaluators
# ---------------------------------------------------------------------------

def euler_sum_integral(k: int, m: int, ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    """zeta(ol(k+2), {1}^(m-1)) via the half-line integral."""
    if k < 0 or m < 1:
        raise DomainError("euler_sum_integral requires k >= 0, m >= 1")

    def integrand(t):
        return t ** k * mp.log1p(mp.exp(-t)) ** m

    j = de_quadrature_half_line(integrand, ctx)
    scale = Fraction((-1) ** m, math.factorial(m) * math.factorial(k))
    with ctx.workprec():
        return BigReal.from_fraction(scale) * j


def euler_sum_direct(index: MzvIndex, terms: int,
                     ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    """Brute-force nested partial sum over k1 <= terms; oracle grade.

    One averaging pass is applied on an alternating outermost index and the
    error field is set to 10x the last averaging correction; otherwise an
    integral-style tail estimate is used.
    """
    if terms < 4:
        raise DomainError("need at least a few terms")
    if terms > ctx.max_terms:
        raise DomainError("terms exceeds ctx.max_terms")
    entries = index.entries
    with ctx.workprec():
        inner: list[mpf] | None = None
        for level in range(index.depth - 1, 0, -1):
            s, alt = entries[level]
            arr = [mpf(0)] * (terms + 1)
            run = mpf(0)
            for i in range(1, terms + 1):
                t = mpf(1) / i ** s
                if alt and i % 2 == 1:
                    t = -t
                run += t if inner is None else t * inner[i - 1]
                arr[i] = run
            inner = arr
        s, alt = entries[0]
        run = mpf(0)
        prev_run = mpf(0)
        last_term = mpf(0)
        for i in range(1, terms + 1):
            t = mpf(1) / i ** s
            if alt and i % 2 == 1:
                t = -t
            if inner is not None:
                t *= inner[i - 1]
            prev_run = run
            run += t
            last_term = t
        if alt:
            correction = abs(run - prev_run) / 2
            return BigReal((run + prev_run) / 2, 10 * correction)
        tail = 2 * abs(last_term) * terms / max(s - 1, 1)
        return BigReal(run, tail)


def theorem41_rhs(n: int, ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    """(-2)^(n-1) (2 zeta(ol2,{1}^(n-2)) + sum_{j=3}^{n-1} (-1)^j zeta(olj,{1}^(n-j))).

    Matches zeta(n).  The n = 2 case is excluded: under the alternation
    convention used here the literal formula reads zeta(2) = 2 zeta(2),
    which fails; callers get a diagnostic instead.
    """
    if n == 2:
        raise UnsupportedCaseError(
            "n = 2 is excluded: the literal right-hand side evaluates to "
            "-4*zeta(ol2) = pi^2/3, not zeta(2)")
    if n < 3:
        raise DomainError("theorem41_rhs requires n >= 3")
    with ctx.workprec():
        total = 2 * euler_sum_integral(0, n - 1, ctx)
        for j in range(3, n):
            term = euler_sum_integral(j - 2, n - j + 1, ctx)
            total = total + term if j % 2 == 0 else total - term
        return BigReal((-2) ** (n - 1)) * total


def s_n(n: int, method: str = "euler-sums",
        ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    """S_n = 2 zeta(ol2,{1}^(n-2)) + sum_{j=3}^{n-1} (-1)^j zeta(olj,{1}^(n-j))
    for n >= 3, by summing Euler-sum integrals or by one combined integral.

    n = 2 carries the same anomaly as the zeta(n) identity itself: the
    generating function (and its closed digamma form) requires the
    coefficient zeta(ol2) = -pi^2/12, i.e. the n = 2 sum WITHOUT the factor
    2.  Both methods return that value, so they agree for all n >= 2.
    """
    if n < 2:
        raise DomainError("s_n requires n >= 2")
    if method not in ("euler-sums", "integral"):
        raise DomainError("method must be 'euler-sums' or 'integral'")
    with ctx.workprec():
        if method == "euler-sums":
            lead = 2 if n >= 3 else 1
            total = lead * euler_sum_integral(0, n - 1, ctx)
            for j in range(3, n):
                term = euler_sum_integral(j - 2, n - j + 1, ctx)
                total = total + term if j % 2 == 0 else total - term
            return total
        return _s_n_integral(n, ctx)


def _s_n_integral(n: int, ctx: PrecisionContext) -> BigReal:
    # bracket rewritten as (-B)^(n-1) + sum_{i=2}^{n-1} C(n-1,i) A^(n-1-i) (-B)^i
    # with A = log x, B = log(1+x); the i = 0, 1 binomial terms cancel exactly
    # against -(log x)^(n-1) and (n-1)(log x)^(n-2) log(1+x), so no
    # catastrophic cancellation survives near x = 0.
    binoms = [math.comb(n - 1, i) for i in range(n)]

    def integrand(x):
        a = mp.log(x)
        nb = -mp.log1p(x)
        acc = nb ** (n - 1)
        for i in range(2, n):
            acc += binoms[i] * a ** (n - 1 - i) * nb ** i
        return acc / x

    j = de_quadrature(integrand, 0, 1, ctx)
    with ctx.workprec():
        return j / math.factorial(n - 1)


def genfun_default_n_max(z, tol) -> int:
    """Smallest cutoff with |S_n z^(n-1)| <= 2^(2-n)|z|^(n-1) below tol/10."""
    z_m = abs(mpf(z))
    n = 2
    while 4 * (z_m / 2) ** (n - 1) > mpf(tol) / 10 and n < 400:
        n += 1
    return n


def genfun_tail_estimate(z, n_max: int) -> mpf:
    """Geometric bound sum_{n>n_max} 2^(2-n) |z|^(n-1)."""
    z_m = abs(mpf(z))
    if z_m == 0:
        return mpf(0)
    r = z_m / 2
    return (4 / z_m) * r ** (n_max + 1) / (1 - r)


def theorem42_genfun(z, n_max: int, ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    """Truncated generating function H(z) = sum_{n=2}^{n_max} S_n z^(n-1);
    the full series equals psi(1) - psi(1 + z/2) for 0 < |z| <= 1."""
    z_m = mpf(z)
    if not 0 < abs(z_m) <= 1:
        raise DomainError("theorem42_genfun requires 0 < |z| <= 1")
    if n_max < 2:
        raise DomainError("n_max must be at least 2")
    with ctx.workprec():
        total = BigReal(0)
        zp = BigReal(z_m)
        for n in range(2, n_max + 1):
            total = total + s_n(n, "integral", ctx) * zp
            zp = zp * z_m
        return BigReal(total.value, total.err + genfun_tail_estimate(z_m, n_max))


def lemma43_integral(z, ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    """int_0^1 ((1+x^z)/(1+x)^z - 1) dx/x, which equals psi(1) - psi(z)."""
    z_m = mpf(z)
    if z_m <= 0:
        raise DomainError("lemma43_integral requires z > 0")

    def integrand(x):
        lg = mp.log1p(x)
        # (1+x)^-z - 1 and x^z (1+x)^-z, combined without cancellation
        return (mp.expm1(-z_m * lg) + x ** z_m * mp.exp(-z_m * lg)) / x

    return de_quadrature(integrand, 0, 1, ctx)

