import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vcsp.rational import (MINUS_INF, ONE, PLUS_INF, ZERO, ExtRat, Q, ceil_q,
                           exp_bounds, format_value, parse_value, rat)


def test_canonical_fractions():
    assert Q(2, 4) == Q(1, 2)
    assert rat(Q(6, 3)) == rat(2)
    assert str(rat(Q(3, 6))) == "1/2"


def test_parse_and_format():
    assert parse_value("7") == rat(7)
    assert parse_value("-3/2") == rat(Q(-3, 2))
    assert parse_value("inf") is PLUS_INF
    assert parse_value("-inf") is MINUS_INF
    assert format_value(rat(Q(5, 3))) == "5/3"
    assert format_value(PLUS_INF) == "inf"
    assert format_value(MINUS_INF) == "-inf"


@pytest.mark.parametrize("bad", ["", "1/0", "1/-2", "0.5", "+3", " 1", "1 ", "nan", "1/02"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_value(bad)


def test_addition():
    assert rat(1) + rat(Q(1, 2)) == rat(Q(3, 2))
    assert PLUS_INF + rat(5) is PLUS_INF or (PLUS_INF + rat(5)).is_plus_inf
    assert (MINUS_INF + rat(5)).is_minus_inf
    assert (PLUS_INF + PLUS_INF).is_plus_inf
    assert (MINUS_INF + MINUS_INF).is_minus_inf


def test_indeterminate_sum_raises():
    with pytest.raises(ArithmeticError):
        PLUS_INF + MINUS_INF
    with pytest.raises(ArithmeticError):
        MINUS_INF + PLUS_INF


def test_multiplication_zero_annihilates_infinity():
    # the weighted-sum convention: weight 0 silences any table value
    assert (ZERO * PLUS_INF).is_zero()
    assert (ZERO * MINUS_INF).is_zero()
    assert (PLUS_INF * ZERO).is_zero()
    assert (rat(3) * PLUS_INF).is_plus_inf
    assert (rat(3) * MINUS_INF).is_minus_inf
    assert rat(Q(2, 3)) * rat(Q(3, 4)) == rat(Q(1, 2))


def test_ordering():
    assert MINUS_INF < rat(-100) < ZERO < ONE < rat(10**9) < PLUS_INF
    assert not (PLUS_INF < PLUS_INF)
    assert MINUS_INF <= MINUS_INF
    assert sorted([PLUS_INF, ZERO, MINUS_INF, rat(2)]) == [MINUS_INF, ZERO, rat(2), PLUS_INF]


def test_predicates_and_sign():
    assert PLUS_INF.sign() == 1
    assert MINUS_INF.sign() == -1
    assert ZERO.sign() == 0
    assert rat(Q(-1, 7)).sign() == -1
    assert ZERO.is_zero() and not ONE.is_zero()
    assert ONE.is_finite and not PLUS_INF.is_finite


def test_hash_consistency():
    assert hash(rat(Q(4, 2))) == hash(rat(2))
    d = {PLUS_INF: "a", rat(2): "b"}
    assert d[rat(Q(8, 4))] == "b"


def test_ceil_q():
    assert ceil_q(Q(5, 4)) == 2
    assert ceil_q(Q(8, 4)) == 2
    assert ceil_q(Q(-5, 4)) == -1
    assert ceil_q(7) == 7
    assert isinstance(ceil_q(Q(1, 3)), int)


@pytest.mark.parametrize("x", [Q(0), Q(1), Q(-1), Q(2, 3), Q(-2, 3), Q(5, 2), Q(-1, 10)])
def test_exp_bounds_sound_and_tight(x):
    lo, hi = exp_bounds(x)
    assert lo <= hi
    assert hi - lo <= Q(1, 10**9)
    e = math.exp(float(x))
    assert float(lo) <= e * (1 + 1e-12) + 1e-12
    assert float(hi) >= e * (1 - 1e-12) - 1e-12


@given(st.integers(-400, 400), st.integers(1, 40))
def test_exp_bounds_property(num, den):
    x = Q(num, den * 100)  # keep |x| <= 4
    lo, hi = exp_bounds(x, Q(1, 10**6))
    assert Q(0) < lo <= hi
    assert hi - lo <= Q(1, 10**6)


@given(st.integers(-50, 50), st.integers(1, 20), st.integers(-50, 50), st.integers(1, 20))
def test_field_ops_match_fractions(a, b, c, d):
    x, y = rat(Q(a, b)), rat(Q(c, d))
    assert (x + y).q == Q(a, b) + Q(c, d)
    assert (x * y).q == Q(a, b) * Q(c, d)
    assert (x < y) == (Q(a, b) < Q(c, d))
