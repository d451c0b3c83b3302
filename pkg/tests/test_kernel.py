"""Reference constants, digamma/log-gamma, Bernoulli numbers, quadrature."""

from fractions import Fraction
from math import comb, factorial

import pytest
from mpmath import mp, mpf

from oracles import GAMMA_40, PI_40, ZETA3_40, em_euler_gamma
from koecher.bernoulli import bernoulli
from koecher.constants import (hurwitz_zeta, pi_reference, zeta_even_closed_form,
                               zeta_reference)
from koecher.errors import DomainError
from koecher.gammafunc import digamma, log_gamma
from koecher.precision import BigReal, PrecisionContext
from koecher.quadrature import de_quadrature, de_quadrature_half_line


class TestBernoulli:
    def test_base_values(self):
        assert bernoulli(0) == 1
        assert bernoulli(1) == Fraction(-1, 2)
        assert bernoulli(2) == Fraction(1, 6)
        assert bernoulli(4) == Fraction(-1, 30)
        assert bernoulli(6) == Fraction(1, 42)

    def test_defining_recurrence_exact(self):
        # sum_{k=0}^{n-1} C(n+1,k) B_k = -(n+1) B_n for n = 1..40
        def b_any(k):
            if k % 2 == 1 and k > 1:
                return Fraction(0)
            return bernoulli(k)

        for n in range(1, 41):
            s = sum(comb(n + 1, k) * b_any(k) for k in range(n))
            assert s == -(n + 1) * b_any(n)

    def test_odd_rejected(self):
        with pytest.raises(DomainError):
            bernoulli(3)


class TestConstants:
    def test_pi_against_frozen_digits(self, ctx30):
        pi = pi_reference(ctx30)
        with ctx30.workprec():
            assert abs(pi.value - mpf(PI_40)) < mpf("1e-39")
            assert pi.err < mpf(10) ** (-ctx30.target_digits)

    def test_zeta3_frozen(self, ctx30):
        z3 = zeta_reference(3, ctx30)
        with ctx30.workprec():
            assert abs(z3.value - mpf(ZETA3_40)) < mpf("1e-39")
            assert z3.err < mpf(10) ** (-ctx30.target_digits)

    def test_zeta2_is_pi_squared_over_six(self, ctx30):
        z2 = zeta_reference(2, ctx30)
        pi = pi_reference(ctx30)
        with ctx30.workprec():
            ref = pi.pow_int(2) / 6
            assert abs(z2.value - ref.value) <= z2.err + ref.err

    def test_zeta4_is_pi_fourth_over_ninety(self, ctx30):
        z4 = zeta_reference(4, ctx30)
        with ctx30.workprec():
            ref = pi_reference(ctx30).pow_int(4) / 90
            assert abs(z4.value - ref.value) <= z4.err + ref.err

    def test_even_closed_form_matches_reference(self, ctx30):
        for n in range(1, 6):
            closed = zeta_even_closed_form(n, ctx30)
            ref = zeta_reference(2 * n, ctx30)
            with ctx30.workprec():
                assert abs(closed.value - ref.value) <= closed.err + ref.err

    def test_zeta6_value(self, ctx30):
        closed = zeta_even_closed_form(3, ctx30)
        with ctx30.workprec():
            ref = pi_reference(ctx30).pow_int(6) / 945
            assert abs(closed.value - ref.value) <= closed.err + ref.err

    def test_domain_errors(self, ctx30):
        with pytest.raises(DomainError):
            zeta_reference(1, ctx30)
        with pytest.raises(DomainError):
            hurwitz_zeta(2, 0, ctx30)

    def test_recompute_higher_precision_within_err(self):
        low_ctx = PrecisionContext(25, 10, 10**6)
        high_ctx = PrecisionContext(45, 10, 10**6)
        for s in (2, 3, Fraction(7, 2)):
            low = zeta_reference(s, low_ctx)
            high = zeta_reference(s, high_ctx)
            with high_ctx.workprec():
                assert abs(low.value - high.value) <= low.err


class TestDigamma:
    def test_psi_one_is_minus_gamma(self, ctx30):
        d = digamma(1, ctx30)
        with ctx30.workprec():
            assert abs(d.value + mpf(GAMMA_40)) < mpf("1e-39")
            assert abs(d.value + em_euler_gamma(45)) < mpf("1e-39")
            assert d.err <= mpf(10) ** (-ctx30.target_digits)

    def test_psi_two(self, ctx30):
        d = digamma(2, ctx30)
        with ctx30.workprec():
            assert abs(d.value - (1 - mpf(GAMMA_40))) < mpf("1e-39")

    def test_duplication_at_three_halves(self, ctx30):
        # psi(2y) = (psi(y) + psi(y + 1/2))/2 + log 2 at y = 3/2
        with ctx30.workprec():
            lhs = digamma(3, ctx30)
            rhs = (digamma(mpf(3) / 2, ctx30) + digamma(2, ctx30)) / 2 \
                + BigReal.from_transcendental(mp.log(2))
            assert abs(lhs.value - rhs.value) <= 10 * (lhs.err + rhs.err)

    def test_functional_equation_sampled(self, ctx30):
        import random

        rng = random.Random(20260809)
        with ctx30.workprec():
            for _ in range(20):
                z = mpf(rng.uniform(0.1, 50))
                a = digamma(z + 1, ctx30)
                b = digamma(z, ctx30)
                gap = a - b - BigReal(1) / BigReal(z)
                assert abs(gap.value) <= 10 * gap.err

    def test_pole_rejected(self, ctx30):
        with pytest.raises(DomainError):
            digamma(0, ctx30)

    def test_recompute_higher_precision_within_err(self):
        low = digamma(mpf("0.37"), PrecisionContext(25, 10, 10**6))
        high = digamma(mpf("0.37"), PrecisionContext(45, 10, 10**6))
        with PrecisionContext(45, 10, 10**6).workprec():
            assert abs(low.value - high.value) <= low.err


class TestLogGamma:
    def test_integers(self, ctx30):
        with ctx30.workprec():
            for n in (3, 7, 12):
                lg = log_gamma(n, ctx30)
                ref = mp.log(factorial(n - 1))
                assert abs(lg.value - ref) <= lg.err + mpf("1e-40")

    def test_half_integer(self, ctx30):
        # Gamma(1/2) = sqrt(pi)
        lg = log_gamma(Fraction(1, 2), ctx30)
        pi = pi_reference(ctx30)
        with ctx30.workprec():
            assert abs(mp.exp(lg.value) ** 2 - pi.value) < mpf("1e-25")


class TestQuadrature:
    def test_constant(self, ctx20):
        v = de_quadrature(lambda x: mpf(1), 0, 1, ctx20)
        with ctx20.workprec():
            assert abs(v.value - 1) <= v.err + mpf("1e-30")

    def test_log_over_x(self, ctx20):
        # int_0^1 log(1+x)/x = pi^2/12; derived via the alternating series
        v = de_quadrature(lambda x: mp.log1p(x) / x, 0, 1, ctx20)
        pi = pi_reference(ctx20)
        with ctx20.workprec():
            ref = pi.pow_int(2) / 12
            assert abs(v.value - ref.value) <= v.err + ref.err + mpf("1e-24")

    def test_log_plain(self, ctx20):
        # int_0^1 log(1+x) = 2 log 2 - 1
        v = de_quadrature(lambda x: mp.log1p(x), 0, 1, ctx20)
        with ctx20.workprec():
            ref = 2 * mp.log(2) - 1
            assert abs(v.value - ref) <= v.err + mpf("1e-24")

    def test_power_singularity(self, ctx20):
        v = de_quadrature(lambda x: 1 / mp.sqrt(x), 0, 1, ctx20)
        with ctx20.workprec():
            assert abs(v.value - 2) <= v.err + mpf("1e-20")

    def test_half_line(self, ctx20):
        v = de_quadrature_half_line(lambda t: t * mp.exp(-t), ctx20)
        with ctx20.workprec():
            assert abs(v.value - 1) <= v.err + mpf("1e-24")

    def test_error_estimate_covers(self, ctx20):
        v = de_quadrature(lambda x: mp.log(x) ** 2 * mp.log1p(x) / x, 0, 1, ctx20)
        w = de_quadrature(lambda x: mp.log(x) ** 2 * mp.log1p(x) / x, 0, 1,
                          PrecisionContext(35, 20, 10**6))
        with PrecisionContext(35, 20, 10**6).workprec():
            assert abs(v.value - w.value) <= v.err + w.err + mpf("1e-38")
