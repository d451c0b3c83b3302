"""Independent test oracles.

Everything here is deliberately written against different machinery than
the production code paths it checks: partial fractions over single linear
factors plus digamma telescoping (using mpmath's own digamma, not ours),
exhaustive enumerations, and brute-force rational partial sums with
monotone tail brackets.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial

from mpmath import mp, mpf


def em_euler_gamma(dps: int = 60) -> mpf:
    """Euler-Mascheroni constant from the harmonic-number expansion
    gamma = H_N - log N - 1/(2N) + sum B_2k/(2k N^2k), remainder below the
    first omitted term."""
    from koecher.bernoulli import bernoulli

    with mp.workdps(dps + 20):
        big_n, m_top = 60, 40
        h = Fraction(0)
        for i in range(1, big_n + 1):
            h += Fraction(1, i)
        g = mpf(h.numerator) / h.denominator - mp.log(big_n) - mpf(1) / (2 * big_n)
        for k in range(1, m_top):
            b = bernoulli(2 * k)
            g += (mpf(b.numerator) / b.denominator) / (2 * k * mpf(big_n) ** (2 * k))
        return +g


# frozen pre-build oracle digits (Euler-Maclaurin / Machin, cross-checked);
# kept as strings so they parse at the caller's working precision
ZETA3_40 = "1.202056903159594285399738161511449990765"
ZETA5_40 = "1.036927755143369926331365486457034168057"
GAMMA_40 = "0.5772156649015328606065120900824024310422"
PI_40 = "3.141592653589793238462643383279502884197"


def phi_by_residues(roots, k: int, dps: int) -> mpf:
    """sum_{n>k} 1/prod_j (n - a_j) with distinct roots a_j, via
    res_j = 1/prod_{i != j}(a_j - a_i) and psi telescoping:
    value = -sum_j res_j psi(k+1-a_j).  Uses mpmath's digamma."""
    with mp.workdps(dps):
        total = mp.mpc(0)
        for j, a in enumerate(roots):
            denom = mp.mpc(1)
            for i, b in enumerate(roots):
                if i != j:
                    denom *= (a - b)
            total -= mp.digamma(mp.mpc(k + 1) - a) / denom
        assert abs(total.imag) < mpf(10) ** (-dps + 8)
        return +total.real


def phi_oracle(kind: str, c, k: int, x, dps: int = 45) -> mpf:
    """phi_k(x) = sum_{n>k} 1/((z_n - x)(n;k)) for the rational kinds."""
    with mp.workdps(dps):
        x_m = mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpf(x)
        if kind == "sqshift":       # z = (n+c)^2, alpha = 1/2
            w = mp.sqrt(mp.mpc(x_m))
            roots = [-c + w, -c - w, mp.mpc(-c)]
            roots += [mp.mpc(i) for i in range(1, k + 1)]
            roots += [mp.mpc(-(2 * c + i)) for i in range(1, k + 1)]
        elif kind == "halfsq":      # z = (n+1/2)^2, alpha = 0
            w = mp.sqrt(mp.mpc(x_m))
            half = mpf(1) / 2
            roots = [-half + w, -half - w]
            roots += [mp.mpc(i) for i in range(1, k + 1)]
            roots += [mp.mpc(-(i + 1)) for i in range(1, k + 1)]
        elif kind == "linear":      # z = n + c, alpha = 1
            roots = [mp.mpc(x_m - c), mp.mpc(-c)]
            roots += [mp.mpc(i) for i in range(1, k + 1)]
        else:
            raise ValueError(kind)
        return phi_by_residues(roots, k, dps)


def phi_direct(kind: str, c, k: int, x, terms: int = 3000) -> tuple[mpf, mpf]:
    """Plain partial sum of phi_k plus a crude tail majorant; used once to
    validate the residue route itself."""
    with mp.workdps(40):
        x_m = mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpf(x)
        total = mpf(0)
        for n in range(k + 1, k + 1 + terms):
            if kind == "sqshift":
                z = mpf(n + c) ** 2
                prod = (z - x_m) * (n + c)
                for i in range(1, k + 1):
                    prod *= z - (i + c) ** 2
            elif kind == "halfsq":
                z = (mpf(n) + mpf(1) / 2) ** 2
                prod = z - x_m
                for i in range(1, k + 1):
                    prod *= z - (mpf(i) + mpf(1) / 2) ** 2
            else:
                z = mpf(n + c)
                prod = (z - x_m) * z
                for i in range(1, k + 1):
                    prod *= z - (i + c)
            total += 1 / prod
        tail = 2 / last_power(kind, k, terms + k)
        return total, tail


def last_power(kind: str, k: int, n: int) -> mpf:
    if kind == "linear":
        return mpf(n) ** (k + 1)
    return mpf(n) ** (2 * k + 2)


def hyperharmonic_enumerated(big_k: int, m: int) -> Fraction:
    if m == 0:
        return Fraction(1)
    total = Fraction(0)
    for combo in combinations(range(1, big_k + 1), m):
        prod = 1
        for v in combo:
            prod *= v
        total += Fraction(1, prod)
    return total


def odd_harmonic_enumerated(big_k: int, nu: int) -> Fraction:
    if nu == 0:
        return Fraction(1)
    total = Fraction(0)
    for combo in combinations(range(1, big_k + 1), nu):
        prod = 1
        for v in combo:
            prod *= (2 * v + 1) ** 2
        total += Fraction(1, prod)
    return total


def shifted_square_tail_brute(k: int, c: int, terms: int = 400) -> tuple[Fraction, Fraction]:
    """(partial, tail_bound) for sum_{n>k} 1/(n;k), z = (n+c)^2, alpha=1/2,
    all exact: 1/(n;k) <= 1/(n+c) * 1/(n-k)^(2k)."""
    partial = Fraction(0)
    top = k + terms
    for n in range(k + 1, top + 1):
        prod = Fraction(n + c)
        for i in range(1, k + 1):
            prod *= (n + c) ** 2 - (i + c) ** 2
        partial += 1 / prod
    # 1/(n;k) <= (n-k)^{-(2k+1)}; integral comparison on the exponent 2k+1
    bound = Fraction(1, (top - k) ** (2 * k)) * Fraction(1, 2 * k) \
        + Fraction(1, (top + 1 + c) * (top + 1 - k) ** (2 * k))
    return partial, bound


def half_square_tail_brute(k: int, terms: int = 400) -> tuple[Fraction, Fraction]:
    """(partial, tail_bound) for sum_{n>k} n(n+1)(n-k-1)!/(n+k+1)!, exact."""
    partial = Fraction(0)
    top = k + terms
    for n in range(k + 1, top + 1):
        partial += Fraction(n * (n + 1) * factorial(n - k - 1), factorial(n + k + 1))
    big_c = Fraction(top - k + 1 + k + 1, top - k + 1) ** 2
    bound = big_c * Fraction(1, (top - k) ** (2 * k - 1)) / (2 * k - 1)
    return partial, bound


def poly_mul(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out
