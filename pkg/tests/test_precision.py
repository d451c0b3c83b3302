from fractions import Fraction

import pytest
from mpmath import mpf

from koecher.errors import ConditioningError
from koecher.precision import BigReal, PrecisionContext


def test_context_validation():
    with pytest.raises(ValueError):
        PrecisionContext(0, 20, 100)
    with pytest.raises(ValueError):
        PrecisionContext(30, 5, 100)
    with pytest.raises(ValueError):
        PrecisionContext(30, 20, 0)


def test_for_digits_guard_rule():
    ctx = PrecisionContext.for_digits(30, 10**6)
    assert ctx.guard_digits == 16  # 10 + ceil(log10(1e6))
    assert ctx.working_digits == 46


def test_exact_and_fraction_roundtrip(ctx30):
    with ctx30.workprec():
        x = BigReal.exact(7)
        assert x.err == 0
        q = BigReal.from_fraction(Fraction(1, 3))
        assert q.err > 0
        assert abs(q.value - mpf(1) / 3) <= q.err


def test_arithmetic_error_bounds(ctx30):
    with ctx30.workprec():
        a = BigReal(mpf(1) / 3, mpf("1e-40"))
        b = BigReal(mpf(2) / 7, mpf("1e-42"))
        s = a + b
        assert s.err >= a.err + b.err
        p = a * b
        assert p.err >= abs(a.value) * b.err
        d = a / b
        assert d.err > 0
        with pytest.raises(ConditioningError):
            a / BigReal(mpf("1e-50"), mpf("1e-49"))


def test_pow_and_sqrt(ctx30):
    with ctx30.workprec():
        x = BigReal.from_fraction(Fraction(9, 4))
        r = x.sqrt()
        assert abs(r.value - mpf(3) / 2) <= r.err + mpf("1e-60")
        cube = x.pow_int(3)
        assert abs(cube.value - mpf(729) / 64) <= cube.err + mpf("1e-60")
        inv = x.pow_int(-2)
        assert abs(inv.value - mpf(16) / 81) <= inv.err + mpf("1e-60")


def test_higher_precision_within_err():
    # recomputing a chain at +20 digits moves the value by less than the
    # reported error of the lower-precision run
    def chain(ctx):
        with ctx.workprec():
            x = BigReal.from_fraction(Fraction(1, 3))
            y = BigReal.from_fraction(Fraction(7, 11))
            out = (x * y + x / y - y).pow_int(3)
            return out

    low = chain(PrecisionContext(25, 10, 100))
    high = chain(PrecisionContext(45, 10, 100))
    with PrecisionContext(50, 10, 100).workprec():
        assert abs(low.value - high.value) <= low.err
