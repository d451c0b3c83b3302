"""Identity registry: every verifiable statement gets a stable id, a
parameter schema, and a runner producing an IdentityReport.

Reports carry decimal strings (not binary floats) so they serialize
byte-identically across runs and survive HTTP round trips unchanged;
elapsed_ms is the one intentionally non-reproducible field.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from mpmath import mp, mpf

from . import apery, eulersums, pipowers
from .constants import pi_reference, zeta_reference, zeta_even_closed_form
from .errors import AccuracyError, DomainError, UnsupportedCaseError
from .gammafunc import digamma
from .precision import BigReal, PrecisionContext
from .sequences import ShiftedSquare
from .transform import TransformInstance, accelerated_sum, lhs_sum, sum_alternating_geometric

__all__ = [
    "IdentityReport",
    "IdentityEntry",
    "REGISTRY",
    "run_verify",
    "run_bench",
    "context_for",
    "REPORT_FIELDS",
]

REPORT_FIELDS = ["identity_id", "parameters", "lhs", "rhs", "abs_diff",
                 "tolerance", "terms_used", "provenance", "elapsed_ms", "pass"]


def context_for(digits: int, max_terms: int = 10**6) -> PrecisionContext:
    return PrecisionContext.for_digits(digits, max_terms)


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    parameters: dict
    lhs: str
    rhs: str
    abs_diff: str
    tolerance: str
    terms_used: int
    provenance: str
    elapsed_ms: int
    passed: bool

    def as_dict(self) -> dict:
        return {
            "identity_id": self.identity_id,
            "parameters": self.parameters,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_diff": self.abs_diff,
            "tolerance": self.tolerance,
            "terms_used": self.terms_used,
            "provenance": self.provenance,
            "elapsed_ms": self.elapsed_ms,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class Outcome:
    lhs: BigReal
    rhs: BigReal
    tolerance: mpf          # absolute tolerance the comparison must meet
    terms_used: int
    exact: bool = False     # exact rational identity: tolerance and diff are 0
    provenance: str = ""    # which tail/error rule certified each side


@dataclass(frozen=True)
class ParamSpec:
    kind: str               # "int" | "number"
    default: object
    minimum: object = None
    maximum: object = None
    help: str = ""


@dataclass(frozen=True)
class IdentityEntry:
    identity_id: str
    description: str
    params: dict = field(default_factory=dict)
    runner: object = None
    bench: object = None    # optional BenchSpec


@dataclass(frozen=True)
class BenchSpec:
    direct_term: object       # n -> mpf, term of the slow series
    direct_tail: object       # N -> mpf, upper bound of the slow tail
    estimate_terms: object    # tol -> int, N needed for the slow series
    accelerated: object       # ctx -> (BigReal, terms_used)
    direct_reference: str     # what the slow series converges to


# ---------------------------------------------------------------------------
# parameter plumbing
# ---------------------------------------------------------------------------

def _coerce_params(entry: IdentityEntry, raw: dict) -> dict:
    out = {}
    for name, spec in entry.params.items():
        if name in raw:
            val = raw[name]
        else:
            val = spec.default
        if spec.kind == "int":
            try:
                val = int(str(val))
            except ValueError:
                raise DomainError(f"parameter {name} must be an integer") from None
        else:
            try:
                val = val if isinstance(val, Fraction) else Fraction(str(val))
            except ValueError:
                raise DomainError(f"parameter {name} must be a decimal or p/q rational") from None
        if spec.minimum is not None and val < spec.minimum:
            raise DomainError(f"parameter {name} must be >= {spec.minimum}")
        if spec.maximum is not None and val > spec.maximum:
            raise DomainError(f"parameter {name} must be <= {spec.maximum}")
        out[name] = val
    unknown = set(raw) - set(entry.params)
    if unknown:
        raise DomainError(f"unknown parameters: {sorted(unknown)}")
    return out


def _fmt_param(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def _report(entry: IdentityEntry, params: dict, outcome: Outcome,
            ctx: PrecisionContext, elapsed_ms: int) -> IdentityReport:
    with ctx.workprec():
        diff = abs(outcome.lhs.value - outcome.rhs.value)
        passed = bool(diff <= outcome.tolerance)
        digits = ctx.target_digits
        return IdentityReport(
            identity_id=entry.identity_id,
            parameters={k: _fmt_param(v) for k, v in sorted(params.items())},
            lhs=mp.nstr(outcome.lhs.value, digits, strip_zeros=False),
            rhs=mp.nstr(outcome.rhs.value, digits, strip_zeros=False),
            abs_diff="0" if outcome.exact and diff == 0 else mp.nstr(diff, 6),
            tolerance="0" if outcome.exact else mp.nstr(outcome.tolerance, 6),
            terms_used=outcome.terms_used,
            provenance=outcome.provenance,
            elapsed_ms=elapsed_ms,
            passed=passed,
        )


def run_verify(identity_id: str, raw_params: dict, digits: int,
               max_terms: int = 10**6) -> IdentityReport:
    """Run one registered verification; raises KoecherError subclasses for
    usage problems and AccuracyError when the tail cannot be certified."""
    entry = REGISTRY.get(identity_id)
    if entry is None:
        raise DomainError(f"unknown identity {identity_id!r}; see `list`")
    params = _coerce_params(entry, raw_params)
    ctx = context_for(digits, max_terms)
    t0 = time.perf_counter()
    outcome = entry.runner(params, ctx)
    elapsed = int(round((time.perf_counter() - t0) * 1000))
    return _report(entry, params, outcome, ctx, elapsed)


# ---------------------------------------------------------------------------
# shared series pieces
# ---------------------------------------------------------------------------

def _tol(ctx: PrecisionContext, floor=None) -> mpf:
    t = ctx.tolerance()
    if floor is not None:
        t = max(t, mpf(floor))
    return t


def _require_certified(lhs: BigReal, rhs: BigReal, tol: mpf) -> None:
    if lhs.err + rhs.err > tol / 2:
        raise AccuracyError(
            "combined error bound exceeds half the tolerance; cannot certify",
            best=rhs)


def _binom_zeta3_term(k: int) -> Fraction:
    sign = 1 if k % 2 == 1 else -1
    return Fraction(sign * 5, 2 * comb(2 * k, k) * k ** 3)


_h2_cache: list[Fraction] = [Fraction(0)]  # H^(2)_j = sum_{i<=j} 1/i^2


def _h2(j: int) -> Fraction:
    while len(_h2_cache) <= j:
        i = len(_h2_cache)
        _h2_cache.append(_h2_cache[-1] + Fraction(1, i * i))
    return _h2_cache[j]


# ---------------------------------------------------------------------------
# runners
# ---------------------------------------------------------------------------

def _run_eq11(params, ctx) -> Outcome:
    lhs = zeta_reference(3, ctx)
    rhs, used = sum_alternating_geometric(_binom_zeta3_term, ctx)
    tol = _tol(ctx)
    _require_certified(lhs, rhs, tol)
    return Outcome(lhs, rhs, tol, used,
                   provenance="exact terms + geometric extrapolation vs Euler-Maclaurin zeta")


def _run_eq13(params, ctx) -> Outcome:
    x = params["x"]
    inst = TransformInstance(ShiftedSquare(0), Fraction(1, 2), x * x)
    left = lhs_sum(inst, ctx)
    right = accelerated_sum(inst, ctx)
    with ctx.workprec():
        tol = left.value.err + right.value.err  # agreement within combined error
    return Outcome(left.value, right.value, tol, right.terms_used,
                   provenance=f"lhs {left.tail_rule}; rhs {right.tail_rule}; combined-err comparison")


def _run_eq14(params, ctx) -> Outcome:
    lhs = zeta_reference(5, ctx)

    def term_a(k: int) -> Fraction:
        sign = 1 if k % 2 == 1 else -1
        return Fraction(sign * 2, comb(2 * k, k) * k ** 5)

    def term_b(k: int) -> Fraction:
        sign = 1 if k % 2 == 1 else -1
        return Fraction(sign * 5, 2 * comb(2 * k, k) * k ** 3) * _h2(k - 1)

    with ctx.workprec():
        a, used_a = sum_alternating_geometric(term_a, ctx)
        b, used_b = sum_alternating_geometric(term_b, ctx)
        rhs = a - b
    tol = _tol(ctx)
    _require_certified(lhs, rhs, tol)
    return Outcome(lhs, rhs, tol, max(used_a, used_b),
                   provenance="two exact central-binomial series vs Euler-Maclaurin zeta")


def _run_thm41(params, ctx) -> Outcome:
    n = params["n"]
    if n == 2:
        with ctx.workprec():
            lhs = zeta_reference(2, ctx)
            literal = -4 * eulersums.euler_sum_integral(0, 1, ctx)
        raise UnsupportedCaseError(
            "n = 2 is excluded by convention: zeta(2) = "
            f"{mp.nstr(lhs.value, 12)} but the literal right-hand side gives "
            f"{mp.nstr(literal.value, 12)} (= pi^2/3); see the registry notes")
    lhs = zeta_reference(n, ctx)
    rhs = eulersums.theorem41_rhs(n, ctx)
    tol = _tol(ctx, floor="1e-12")
    _require_certified(lhs, rhs, tol)
    return Outcome(lhs, rhs, tol, 0,
                   provenance="half-line DE integrals (level-doubling x10) vs Euler-Maclaurin zeta")


def _run_thm42(params, ctx) -> Outcome:
    z = params["z"]
    with ctx.workprec():
        z_m = mpf(z.numerator) / z.denominator
        n_max = eulersums.genfun_default_n_max(z_m, mpf("1e-9"))
        rhs = eulersums.theorem42_genfun(z_m, n_max, ctx)
        lhs = digamma(1, ctx) - digamma(1 + z_m / 2, ctx)
        tol = mpf("1e-8") + eulersums.genfun_tail_estimate(z_m, n_max)
    return Outcome(lhs, rhs, tol, n_max - 1,
                   provenance="combined DE integrals + geometric tail estimate vs digamma")


def _run_lemma43(params, ctx) -> Outcome:
    z = params["z"]
    with ctx.workprec():
        z_m = mpf(z.numerator) / z.denominator
        lhs = eulersums.lemma43_integral(z_m, ctx)
        rhs = digamma(1, ctx) - digamma(z_m, ctx)
    tol = _tol(ctx, floor="1e-12")
    _require_certified(lhs, rhs, tol)
    return Outcome(lhs, rhs, tol, 0,
                   provenance="tanh-sinh DE integral (level-doubling x10) vs digamma")


def _run_lemma24(params, ctx) -> Outcome:
    from .transform import telescoping_partial, telescoping_tail

    r, k, n_top = params["r"], params["k"], params["k"] + params["extra"]
    partial = telescoping_partial(r, k, n_top)
    block = 1
    for i in range(n_top + r - k + 1, n_top + r + k + 1):
        block *= i
    closed = telescoping_tail(r, k) - Fraction(1, 2 * k) * Fraction(1, block)
    with ctx.workprec():
        return Outcome(BigReal.from_fraction(partial), BigReal.from_fraction(closed),
                       mpf(0), n_top - k, exact=partial == closed,
                       provenance="exact rational telescoping, no tolerance")


def _run_thm51(params, ctx) -> Outcome:
    c = params["c"]
    lhs = apery.hurwitz_zeta_c(c, 3, ctx)
    rhs, used = apery.theorem51_series(c, ctx)
    tol = _tol(ctx)
    _require_certified(lhs, rhs, tol)
    return Outcome(lhs, rhs, tol, used,
                   provenance="exact polynomial terms + geometric extrapolation vs truncated zeta")


def _run_eq53(params, ctx) -> Outcome:
    lhs = zeta_reference(3, ctx)

    def term(k: int) -> Fraction:
        sign = 1 if k % 2 == 1 else -1
        poly = 5 * k ** 3 + 12 * k ** 2 + 4 * k + 2
        return Fraction(sign * poly, 4 * comb(2 * k, k) * k * (k + 1) ** 2 * (2 * k + 1))

    with ctx.workprec():
        series, used = sum_alternating_geometric(term, ctx)
        rhs = BigReal.exact(1) + series
    tol = _tol(ctx)
    _require_certified(lhs, rhs, tol)
    return Outcome(lhs, rhs, tol, used,
                   provenance="exact terms + geometric extrapolation vs Euler-Maclaurin zeta")


def _run_eq54(params, ctx) -> Outcome:
    lhs = zeta_reference(3, ctx)
    p2 = apery.pc_polynomial(2)

    def term(k: int) -> Fraction:
        sign = 1 if k % 2 == 1 else -1
        den = comb(2 * k + 2, k + 1) * k * (k + 1) * (k + 2) ** 2 * (2 * k + 3)
        return Fraction(sign * p2(k), 16 * den)

    with ctx.workprec():
        series, used = sum_alternating_geometric(term, ctx)
        rhs = BigReal.from_fraction(Fraction(9, 8)) + series
    tol = _tol(ctx)
    _require_certified(lhs, rhs, tol)
    return Outcome(lhs, rhs, tol, used,
                   provenance="exact terms + geometric extrapolation vs Euler-Maclaurin zeta")


def _run_eq62(params, ctx) -> Outcome:
    mu = params["mu"]
    with ctx.workprec():
        scale = 1 - Fraction(1, 4 ** (mu + 1))
        lhs = BigReal.from_fraction(scale) * zeta_even_closed_form(mu + 1, ctx)
    sv = pipowers.theorem61_rhs(mu, ctx)
    tol = _tol(ctx)
    _require_certified(lhs, sv.value, tol)
    return Outcome(lhs, sv.value, tol, sv.terms_used,
                   provenance="exact terms + geometric extrapolation vs Bernoulli closed form / Machin pi")


def _pi_power_over(n: int, den: int, ctx) -> BigReal:
    with ctx.workprec():
        return pi_reference(ctx).pow_int(n) / den


def _run_eq63(params, ctx) -> Outcome:
    lhs = _pi_power_over(2, 8, ctx)

    def term(k: int) -> Fraction:
        sign = 1 if k % 2 == 1 else -1
        num = 10 * k ** 3 + 9 * k ** 2 - k + 1
        return Fraction(sign * comb(2 * k, k) * num,
                        16 ** k * (2 * k - 1) * (2 * k + 1) ** 2)

    with ctx.workprec():
        series, used = sum_alternating_geometric(term, ctx)
        rhs = BigReal.exact(1) + series
    tol = _tol(ctx)
    _require_certified(lhs, rhs, tol)
    return Outcome(lhs, rhs, tol, used,
                   provenance="exact terms + geometric extrapolation vs Machin pi")


def _run_eq64(params, ctx) -> Outcome:
    lhs = _pi_power_over(4, 96, ctx)

    def term(k: int) -> Fraction:
        sign = 1 if k % 2 == 1 else -1
        bracket = (Fraction(4 * k * (k + 1), (2 * k + 1) ** 2)
                   - Fraction(10 * k ** 3 + 9 * k ** 2 - k + 1, 2 * k - 1)
                   * sum(Fraction(1, (2 * j + 1) ** 2) for j in range(1, k)))
        return Fraction(sign * comb(2 * k, k), 16 ** k * (2 * k + 1) ** 2) * bracket

    with ctx.workprec():
        series, used = sum_alternating_geometric(term, ctx)
        rhs = BigReal.exact(1) + series
    tol = _tol(ctx)
    _require_certified(lhs, rhs, tol)
    return Outcome(lhs, rhs, tol, used,
                   provenance="exact terms + geometric extrapolation vs Machin pi")


def _run_lemma63(params, ctx) -> Outcome:
    k = params["k"]
    closed = pipowers.lemma63_sum(k)
    recombined = pipowers.lemma63_decomposition(k)["total"]
    with ctx.workprec():
        return Outcome(BigReal.from_fraction(closed), BigReal.from_fraction(recombined),
                       mpf(0), 0, exact=closed == recombined,
                       provenance="exact hypergeometric recombination, no tolerance")


def _run_leshchiner(params, ctx) -> Outcome:
    mu = params["mu"]
    lhs = _pi_power_over(2, 10, ctx) if mu == 0 else _pi_power_over(4, 96, ctx)
    sv = pipowers.leshchiner_series(mu, ctx)
    tol = _tol(ctx)
    _require_certified(lhs, sv.value, tol)
    return Outcome(lhs, sv.value, tol, sv.terms_used,
                   provenance="exact terms + geometric extrapolation vs Machin pi")


# ---------------------------------------------------------------------------
# bench specs
# ---------------------------------------------------------------------------

def _bench_eq11() -> BenchSpec:
    def direct_term(n: int) -> mpf:
        return 1 / mpf(n) ** 3

    def direct_tail(n: int) -> mpf:
        return 1 / (2 * mpf(n) ** 2)

    def estimate(tol: mpf) -> int:
        return int(mp.ceil(mp.sqrt(1 / (2 * tol)))) + 1

    def accelerated(ctx):
        value, used = sum_alternating_geometric(_binom_zeta3_term, ctx)
        return value, used

    return BenchSpec(direct_term, direct_tail, estimate, accelerated,
                     "zeta(3) as sum 1/n^3")


def _bench_eq63() -> BenchSpec:
    def direct_term(n: int) -> mpf:
        return 1 / mpf(2 * n - 1) ** 2

    def direct_tail(n: int) -> mpf:
        return 1 / (4 * mpf(n))

    def estimate(tol: mpf) -> int:
        return int(mp.ceil(1 / (4 * tol))) + 1

    def accelerated(ctx):
        def term(k: int) -> Fraction:
            sign = 1 if k % 2 == 1 else -1
            num = 10 * k ** 3 + 9 * k ** 2 - k + 1
            return Fraction(sign * comb(2 * k, k) * num,
                            16 ** k * (2 * k - 1) * (2 * k + 1) ** 2)

        series, used = sum_alternating_geometric(term, ctx)
        return BigReal.exact(1) + series, used

    return BenchSpec(direct_term, direct_tail, estimate, accelerated,
                     "pi^2/8 as sum over odd 1/(2j+1)^2")


def run_bench(identity_id: str, digits: int, max_terms: int = 10**6) -> dict:
    entry = REGISTRY.get(identity_id)
    if entry is None:
        raise DomainError(f"unknown identity {identity_id!r}")
    if entry.bench is None:
        raise DomainError(f"identity {identity_id!r} has no direct/accelerated pairing")
    spec = entry.bench
    ctx = context_for(digits, max_terms)
    with ctx.workprec():
        tol = ctx.tolerance()
        t0 = time.perf_counter()
        value, acc_terms = spec.accelerated(ctx)
        acc_ms = int(round((time.perf_counter() - t0) * 1000))
        estimate = spec.estimate_terms(tol)
        feasible = estimate <= max_terms
        direct_terms = None
        direct_ms = None
        if feasible:
            t0 = time.perf_counter()
            total = mpf(0)
            n = 0
            while spec.direct_tail(n + 1) > tol and n < estimate + 10:
                n += 1
                total += spec.direct_term(n)
            direct_terms = n
            direct_ms = int(round((time.perf_counter() - t0) * 1000))
        return {
            "identity_id": identity_id,
            "digits": digits,
            "accelerated_terms": acc_terms,
            "accelerated_ms": acc_ms,
            "accelerated_value": mp.nstr(value.value, digits, strip_zeros=False),
            "direct_reference": spec.direct_reference,
            "direct_terms_estimate": str(estimate),
            "direct_feasible": feasible,
            "direct_terms": direct_terms,
            "direct_ms": direct_ms,
        }


# ---------------------------------------------------------------------------
# the registry itself
# ---------------------------------------------------------------------------

REGISTRY: dict[str, IdentityEntry] = {}


def _add(entry: IdentityEntry) -> None:
    REGISTRY[entry.identity_id] = entry


_add(IdentityEntry(
    "eq1.1",
    "zeta(3) = (5/2) sum (-1)^(k-1) / (C(2k,k) k^3)",
    {},
    _run_eq11,
    _bench_eq11()))
_add(IdentityEntry(
    "eq1.3",
    "sum 1/(n(n^2-x^2)) equals its accelerated central-binomial form (x real)",
    {"x": ParamSpec("number", Fraction(1, 4), Fraction(-1), Fraction(1),
                    "evaluation point, |x| < 1; the square enters the transform")},
    _run_eq13))
_add(IdentityEntry(
    "eq1.4",
    "zeta(5) = 2 sum (-1)^(k-1)/(C(2k,k)k^5) - (5/2) sum (-1)^(k-1) H2_(k-1)/(C(2k,k)k^3)",
    {},
    _run_eq14))
_add(IdentityEntry(
    "thm41",
    "zeta(n) = (-2)^(n-1) (2 z(ol2,{1}^(n-2)) + sum_j (-1)^j z(olj,{1}^(n-j))), n >= 3",
    {"n": ParamSpec("int", 3, 2, 12, "zeta argument; n = 2 prints a diagnostic")},
    _run_thm41))
_add(IdentityEntry(
    "thm42",
    "sum S_n z^(n-1) = psi(1) - psi(1 + z/2)",
    {"z": ParamSpec("number", Fraction(1, 2), None, Fraction(1), "0 < z <= 1")},
    _run_thm42))
_add(IdentityEntry(
    "lemma43",
    "int_0^1 ((1+x^z)/(1+x)^z - 1) dx/x = psi(1) - psi(z)",
    {"z": ParamSpec("number", Fraction(2), None, None, "z > 0")},
    _run_lemma43))
_add(IdentityEntry(
    "lemma24",
    "partial telescoping sum matches r!/(2k(2k+r)!) minus its explicit remainder, exactly",
    {"r": ParamSpec("int", 1, 0, 12), "k": ParamSpec("int", 2, 1, 12),
     "extra": ParamSpec("int", 50, 1, 500, "how many terms past k to sum")},
    _run_lemma24))
_add(IdentityEntry(
    "thm51",
    "zeta(3) - sum_{j<=c} j^-3 = (1/(2 c!^2)) sum (-1)^(k-1) P_c(k) / (C(2k+2c,k+c) (k+c)^2 k..(k+c))",
    {"c": ParamSpec("int", 1, 0, 8)},
    _run_thm51))
_add(IdentityEntry(
    "eq5.3",
    "zeta(3) = 1 + (1/4) sum (-1)^(k-1) (5k^3+12k^2+4k+2) / (C(2k,k) k (k+1)^2 (2k+1))",
    {},
    _run_eq53))
_add(IdentityEntry(
    "eq5.4",
    "zeta(3) = 1 + 1/8 + (1/16) sum (-1)^(k-1) P_2(k) / (C(2k+2,k+1) k (k+1) (k+2)^2 (2k+3))",
    {},
    _run_eq54))
_add(IdentityEntry(
    "eq6.2",
    "(1 - 4^(-mu-1)) zeta(2mu+2) as a central-binomial series over 16^k",
    {"mu": ParamSpec("int", 1, 0, 8)},
    _run_eq62))
_add(IdentityEntry(
    "eq6.3",
    "pi^2/8 = 1 + sum (-1)^(k-1) C(2k,k) (10k^3+9k^2-k+1) / (16^k (2k-1)(2k+1)^2)",
    {},
    _run_eq63,
    _bench_eq63()))
_add(IdentityEntry(
    "eq6.4",
    "pi^4/96 as the mu = 1 central-binomial series with odd-harmonic weights",
    {},
    _run_eq64))
_add(IdentityEntry(
    "lemma63",
    "sum_{n>k} n(n+1)(n-k-1)!/(n+k+1)! = (2k^3+5k^2+3k+1)/((2k-1)(2k+1)(2k+1)!), exactly",
    {"k": ParamSpec("int", 2, 1, 10)},
    _run_lemma63))
_add(IdentityEntry(
    "leshchiner",
    "pi^2/10 (mu=0) and pi^4/96 (mu=1) with the inner sum started at j = 0",
    {"mu": ParamSpec("int", 0, 0, 1)},
    _run_leshchiner))
