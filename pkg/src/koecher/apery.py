"""Central-binomial zeta(3) identities for shifted-square sequences.

Everything here is exact rational arithmetic except the final numeric
verification.  For z_n = (n+c)^2 and alpha = 1/2 the product (n;k) is a
run of integers with one interior factor, and the tail sum_{n>k} 1/(n;k)
reduces, through a lower-triangular linear system, to a combination of
elementary telescoping sums.  Feeding the tail back into the acceleration
transform at x = 0 produces the degree-3c integer polynomials P_c(k) and
the identity

    zeta(3) - 1 - 1/8 - ... - 1/c^3
        = (1/(2 c!^2)) sum_k (-1)^(k-1) P_c(k)
          / ( C(2k+2c, k+c) (k+c)^2 k (k+1) ... (k+c) ).

The lower-triangular system's right-hand side B_j has a removable
indeterminacy at j = k+c when k <= c: the closed formula turns into
0 * infinity there (a vanishing reciprocal factorial against a pole).  The
value actually needed is the residue of the summand at that point,

    B_{k+c} = (-1)^c (2k)! (c!)^2 / ((k+c)!)^2,

which the brute-force tail oracle confirms (for k = c = 1 the tail is
11/96; zeroing the indeterminate term would give 23/96).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .constants import zeta_reference
from .errors import DomainError, InternalConsistencyError
from .precision import BigReal, DEFAULT_CTX, PrecisionContext

__all__ = [
    "hurwitz_zeta_c",
    "b_coefficients",
    "PartialFractionSolution",
    "solve_partial_fraction",
    "tail_sum_shifted_square",
    "tail_sum_double_route",
    "PcPolynomial",
    "pc_polynomial",
    "pc_direct_value",
    "theorem51_series",
]


def hurwitz_zeta_c(c: int, s, ctx: PrecisionContext = DEFAULT_CTX) -> BigReal:
    """zeta(s) minus its first c terms."""
    if c < 0:
        raise DomainError("c must be a nonnegative integer")
    value = zeta_reference(s, ctx)
    with ctx.workprec():
        if isinstance(s, int) or (isinstance(s, Fraction) and s.denominator == 1):
            head = sum(Fraction(1, j ** int(s)) for j in range(1, c + 1))
            return value - BigReal.from_fraction(Fraction(head))
        total = value
        s_m = _to_mpf(s)
        for j in range(1, c + 1):
            total = total - BigReal.from_transcendental(_to_mpf(j) ** (-s_m))
        return total


def _to_mpf(s):
    from mpmath import mpf

    if isinstance(s, Fraction):
        return mpf(s.numerator) / s.denominator
    return mpf(s)


def _recip_fact(m: int) -> Fraction:
    """1/m!; zero for negative m (reciprocal of a gamma pole)."""
    if m < 0:
        return Fraction(0)
    return Fraction(1, factorial(m))


def b_coefficients(k: int, c: int) -> list[Fraction]:
    """Right-hand side B_0..B_{2c} of the triangular system.

    Generic entry: B_j = (2k)! (k+2c-j)! / ((k+c-j) (k-1-j)! (2k+2c-j)! j!),
    with reciprocal factorials of negative integers taken as 0.  When k <= c
    the entry at j = k+c is the genuinely indeterminate one and is replaced
    by the residue value (see module docstring).
    """
    if k < 1 or c < 0:
        raise DomainError("b_coefficients requires k >= 1, c >= 0")
    out = []
    for j in range(2 * c + 1):
        if j == k + c:
            out.append(Fraction((-1) ** c * factorial(2 * k) * factorial(c) ** 2,
                                factorial(k + c) ** 2))
            continue
        rec = _recip_fact(k - 1 - j)
        if rec == 0:
            out.append(Fraction(0))
            continue
        out.append(Fraction(factorial(k + 2 * c - j) * factorial(2 * k))
                   * rec / (Fraction(k + c - j) * factorial(2 * k + 2 * c - j) * factorial(j)))
    return out


@dataclass(frozen=True)
class PartialFractionSolution:
    """Exact solution A of M A = B plus both matrices for audit."""

    k: int
    c: int
    A: tuple
    B: tuple
    matrix: tuple        # M, rows of the triangular system
    inverse: tuple       # M-tilde, its explicit inverse

    def reconstruct(self, n: int) -> Fraction:
        """Evaluate sum_j A_j / ((n+2k+2c-j) ... (n+2c-j)) exactly."""
        total = Fraction(0)
        for j, a in enumerate(self.A):
            prod = 1
            for i in range(n + 2 * self.c - j, n + 2 * self.k + 2 * self.c - j + 1):
                prod *= i
            total += a / prod
        return total


def _system_matrix(k: int, c: int) -> tuple:
    rows = []
    for j in range(2 * c + 1):
        rows.append(tuple(Fraction((-1) ** i * comb(2 * k, j - i)) if i <= j else Fraction(0)
                          for i in range(2 * c + 1)))
    return tuple(rows)


def _inverse_matrix(k: int, c: int) -> tuple:
    rows = []
    for j in range(2 * c + 1):
        rows.append(tuple(Fraction((-1) ** l * comb(2 * k - 1 + j - l, j - l)) if l <= j else Fraction(0)
                          for l in range(2 * c + 1)))
    return tuple(rows)


def solve_partial_fraction(k: int, c: int) -> PartialFractionSolution:
    """Partial-fraction coefficients A_j of the shifted-square summand.

    A_j = sum_nu (-1)^nu C(2k+j-1-nu, j-nu) B_nu, exactly.
    """
    B = b_coefficients(k, c)
    inv = _inverse_matrix(k, c)
    A = []
    for j in range(2 * c + 1):
        A.append(sum((inv[j][nu] * B[nu] for nu in range(j + 1)), Fraction(0)))
    return PartialFractionSolution(k, c, tuple(A), tuple(B),
                                   _system_matrix(k, c), inv)


def q_summand(k: int, c: int, n: int) -> Fraction:
    """The shifted tail summand: 1/(n;k) at index n+k, as the explicit
    quotient of integer runs."""
    num = 1
    for i in range(n + k, n + k + 2 * c + 1):
        num *= i
    den = n + k + c
    for i in range(n, n + 2 * k + 2 * c + 1):
        den *= i
    return Fraction(num, den)


def tail_sum_shifted_square(k: int, c: int) -> Fraction:
    """Exact sum_{n>k} 1/(n;k) for z_n = (n+c)^2, alpha = 1/2.

    Composition of the partial-fraction solve with the elementary
    telescoping tail r!/(2k (2k+r)!) at r = 2c-j.
    """
    if k < 1 or c < 0:
        raise DomainError("tail_sum_shifted_square requires k >= 1, c >= 0")
    sol = solve_partial_fraction(k, c)
    total = Fraction(0)
    for j, a in enumerate(sol.A):
        total += a * Fraction(factorial(2 * c - j), 2 * k * factorial(2 * k + 2 * c - j))
    return total


def tail_sum_double_route(k: int, c: int) -> Fraction:
    """The same tail as the explicit double sum over (j, nu), with the
    1/(k+c-nu) factor inside the inner sum; independent code path used to
    cross-check the A_j route."""
    total = Fraction(0)
    for j in range(2 * c + 1):
        outer = Fraction(factorial(2 * c - j), factorial(2 * k + 2 * c - j))
        inner = Fraction(0)
        for nu in range(j + 1):
            if nu == k + c:
                t = Fraction((-1) ** c * factorial(c) ** 2 * factorial(2 * k + j - 1 - nu),
                             factorial(j - nu) * factorial(k + c) ** 2)
            else:
                rec = _recip_fact(k - 1 - nu)
                if rec == 0:
                    continue
                t = (Fraction(factorial(2 * k + j - 1 - nu) * factorial(k + 2 * c - nu))
                     * rec / (Fraction(k + c - nu) * factorial(j - nu)
                              * factorial(2 * k + 2 * c - nu) * factorial(nu)))
            inner += Fraction((-1) ** nu) * t
        total += outer * inner
    return total


# ---------------------------------------------------------------------------
# P_c polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PcPolynomial:
    c: int
    coefficients: tuple  # ints, index = power of k

    def __call__(self, k: int) -> int:
        acc = 0
        for a in reversed(self.coefficients):
            acc = acc * k + a
        return acc

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def conjecture_audit(self) -> dict:
        ok_degree = self.degree == 3 * self.c
        ok_leading = self.coefficients[-1] == 5
        ok_constant = self.c == 0 or self.coefficients[0] == factorial(self.c) * factorial(2 * self.c)
        return {
            "degree": self.degree,
            "degree_expected": 3 * self.c,
            "leading": self.coefficients[-1],
            "constant": self.coefficients[0],
            "confirmed": ok_degree and ok_leading and ok_constant,
        }


def pc_direct_value(c: int, k: int) -> Fraction:
    """P_c evaluated directly at integer k >= 1:
    4 (k+2c)! (k+c-1)! / ((k+c) (k-1)!^2) + 2 (k+c)! (2k+2c)! / (k-1)! * tail."""
    head = Fraction(4 * factorial(k + 2 * c) * factorial(k + c - 1),
                    (k + c) * factorial(k - 1) ** 2)
    scale = Fraction(2 * factorial(k + c) * factorial(2 * k + 2 * c), factorial(k - 1))
    return head + scale * tail_sum_shifted_square(k, c)


def _newton_interpolate(points: list[tuple[int, Fraction]]) -> list[Fraction]:
    """Newton divided differences; returns monomial coefficients."""
    xs = [Fraction(x) for x, _ in points]
    coeffs = [y for _, y in points]
    n = len(points)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - level])
    # expand the nested form into monomials
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coeffs[i]
        carry = [Fraction(0)] * n
        for p in range(n - 1):
            carry[p + 1] += poly[p]
            carry[p] -= poly[p] * xs[i]
        carry[0] += coeffs[i]
        poly = carry
    return poly


_pc_cache: dict[int, PcPolynomial] = {}


def pc_polynomial(c: int) -> PcPolynomial:
    """P_c as an integer polynomial in k, by exact interpolation at
    k = 1..3c+1; integrality of every coefficient is asserted."""
    if c < 0 or c > 12:
        raise DomainError("pc_polynomial supports 0 <= c <= 12")
    if c in _pc_cache:
        return _pc_cache[c]
    pts = [(k, pc_direct_value(c, k)) for k in range(1, 3 * c + 2)]
    coeffs = _newton_interpolate(pts)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    ints = []
    for q in coeffs:
        if q.denominator != 1:
            raise InternalConsistencyError(
                f"P_{c} interpolation produced non-integer coefficient {q}")
        ints.append(q.numerator)
    poly = PcPolynomial(c, tuple(ints))
    _pc_cache[c] = poly
    return poly


# ---------------------------------------------------------------------------
# identity of Theorem-5.1 type
# ---------------------------------------------------------------------------

def theorem51_term(c: int, k: int) -> Fraction:
    """k-th term of the accelerated series for zeta_c(3), exact."""
    poly = pc_polynomial(c)
    den = comb(2 * k + 2 * c, k + c) * (k + c) ** 2
    rising = 1
    for i in range(k, k + c + 1):
        rising *= i
    sign = -1 if k % 2 == 0 else 1
    return Fraction(sign * poly(k), den * rising) / (2 * factorial(c) ** 2)


def theorem51_series(c: int, ctx: PrecisionContext = DEFAULT_CTX):
    """Accelerated right-hand side for zeta_c(3); returns (BigReal, terms)."""
    from .transform import sum_alternating_geometric

    if c < 0 or c > 8:
        raise DomainError("theorem51_series supports 0 <= c <= 8")
    return sum_alternating_geometric(lambda k: theorem51_term(c, k), ctx)
