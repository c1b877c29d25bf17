from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from m24prod.exactseries import (Q3Series, QSeries, QZSeries, binomial_product_direct, dedekind_eta,
                                 divisors, eisenstein_e2, euler_product_ints, moebius, rat,
                                 series_log1p_product, sigma1)

F = Fraction


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.5)
    assert rat("3/4") == F(3, 4)


def test_number_theory_helpers():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert sigma1(6) == 12
    assert [moebius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_e2_coefficients():
    assert eisenstein_e2(5).to_list(5) == [1, -24, -72, -96, -168]


def test_eta_and_euler_product():
    assert euler_product_ints(8) == [1, -1, -1, 0, 0, 1, 0, 1]
    eta = dedekind_eta(4)
    assert eta[F(1, 24)] == 1 and eta[F(25, 24)] == -1 and eta[F(49, 24)] == -1
    assert eta[F(73, 24)] == 0


def test_eta_product_level_11():
    f = euler_product_ints(6, 2)
    g = [0] * 6
    for i in range(0, 6, 11):
        g[i] = 1
    eta2 = QSeries.from_list(f).shift(1)
    assert eta2.to_list(6) == [0, 1, -2, -1, 2, 1]


def test_mul_precision_and_valuation():
    a = QSeries({1: 1, 2: 3}, 5)
    b = QSeries({0: 2, 3: 1}, 4)
    c = a * b
    assert c.prec == 5
    assert c.to_list(5) == [0, 2, 6, 0, 1]


def test_inverse_and_division():
    e2 = eisenstein_e2(12)
    one = e2 * e2.inverse()
    assert one.to_list(12) == [1] + [0] * 11
    assert (e2 / e2).to_list(12) == [1] + [0] * 11


def test_fractional_lattice_and_shift():
    eta = dedekind_eta(4)
    eta24 = eta ** 24
    # Delta = q - 24 q^2 + 252 q^3 - ...
    assert eta24.reduce_lattice().to_list(4) == [0, 1, -24, 252]


def test_pow_zero_and_negative():
    f = QSeries({0: 1, 1: 1}, 6)
    assert (f ** 0).to_list(6) == [1, 0, 0, 0, 0, 0]
    assert (f ** -1).to_list(6) == [1, -1, 1, -1, 1, -1]


def test_log_exp_examples():
    f = QSeries({0: 1, 1: -1}, 8)
    assert f.log().to_list(8) == [0] + [F(-1, k) for k in range(1, 8)]
    assert f.log().exp() == f


def test_getitem_beyond_precision():
    with pytest.raises(IndexError):
        QSeries({0: 1}, 3)[3]


def test_qz_mul():
    a = QZSeries({(0, 1): 1, (0, -1): 1}, 3)
    b = QZSeries({(0, 1): 1, (1, 0): 2}, 3)
    c = a * b
    assert c[(0, 2)] == 1 and c[(0, 0)] == 1 and c[(1, 1)] == 2 and c[(1, -1)] == 2


def test_q3_window_and_offset():
    s = Q3Series({(0, 0, 0): 1, (1, -1, 0): 2}, 1, 1, offset=(1, 1, 1))
    assert s[(2, 0, 1)] == 2
    with pytest.raises(IndexError):
        s[(3, 1, 1)]


def test_log1p_matches_direct_on_mixed_instance():
    factors = [((0, -1, 0), 2), ((1, 1, 0), -3), ((1, 0, 1), 5), ((0, -1, 1), -1)]
    a = series_log1p_product(factors, 2, 2)
    b = binomial_product_direct(factors, 2, 2, a.r_floor)
    assert a == b


# property tests

small_series = st.lists(st.integers(-5, 5), min_size=1, max_size=8)


@given(small_series, small_series, small_series)
def test_mul_associative_commutative(a, b, c):
    A, B, C = (QSeries.from_list(x) for x in (a, b, c))
    assert (A * B) * C == A * (B * C)
    assert A * B == B * A


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=10))
def test_exp_log_roundtrip(tail):
    f = QSeries.from_list([1] + tail)
    assert f.log().exp() == f


@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=1, max_size=8))
def test_inverse_roundtrip(tail):
    f = QSeries.from_list([1] + tail)
    prod = f * f.inverse()
    assert prod.to_list(len(tail) + 1) == [1] + [0] * len(tail)
