from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from m24prod import kernels
from m24prod.borcherds import BorcherdsSpec
from m24prod.exactseries import Q3Series, series_log1p_product
from m24prod.expander import (BoundMismatch, NonIntegralExponent, compare, default_bounds, expand_borcherds_side,
                              expand_factors, expand_phi_power)
from m24prod.jacobi import JacobiForm01
from m24prod.solver import published_rows

F = Fraction


def test_1a_at_zero_bounds():
    s = expand_phi_power("1A", 1, 0, 0)
    assert s.offset == (1, 1, 1)
    assert {k: v for k, v in s.coeffs.items()} == {(0, 0, 0): 1, (0, -1, 0): -2, (0, -2, 0): 1}


def test_igusa_row_leading_behaviour():
    s = expand_borcherds_side([BorcherdsSpec(1, JacobiForm01.make(1, 24))], 1, 1, 1)
    assert s.offset == (1, 1, 1)
    assert s[(1, 1, 1)] == 1


def test_empty_rows_give_one():
    s = expand_borcherds_side([], 5, 2, 2)
    assert s.offset == (0, 0, 0)
    assert s.coeffs == {(0, 0, 0): 1}


@pytest.mark.parametrize("label,p,bounds", [("3B", 3, (2, 2)), ("11A", 1, (2, 2)), ("2B", 1, (3, 3))])
def test_two_sided_examples(label, p, bounds):
    rows = published_rows(label)
    c = compare(expand_phi_power(label, p, *bounds), expand_borcherds_side(rows, p, *bounds))
    assert c.equal and c.mismatch is None and c.n_coefficients > 0


def test_leading_coefficient_normalization():
    for label, p in (("3B", 3), ("4A", 2)):
        a = expand_phi_power(label, p, 1, 1)
        b = expand_borcherds_side(published_rows(label), p, 1, 1)
        assert a.offset == b.offset == (p, p, p)
        assert a[(p, p, p)] == b[(p, p, p)] == 1


def test_compare_reports_mismatch():
    a = Q3Series({(0, 0, 0): 1, (1, 0, 1): 3}, 1, 1, -2)
    b = Q3Series({(0, 0, 0): 1, (1, 0, 1): 5}, 1, 1, -2)
    assert compare(a, a).equal
    c = compare(a, b)
    assert not c.equal
    m = c.mismatch
    assert (m.n, m.r, m.m, m.lhs, m.rhs) == (1, 0, 1, 3, 5)
    with pytest.raises(BoundMismatch):
        compare(a, Q3Series({}, 2, 1, -2))


def test_non_integral_exponent_raises():
    # the 3B rows carry exponent -1/3 on the pure zeta factor until p = 3
    with pytest.raises(NonIntegralExponent):
        expand_borcherds_side(published_rows("3B"), 1, 1, 1)


def test_23ab_needs_rational_exponents():
    rows = published_rows("23AB")
    with pytest.raises(NonIntegralExponent):
        expand_borcherds_side(rows, 1, 3, 3)
    a = expand_phi_power("23AB", 1, 3, 3, allow_rational=True)
    b = expand_borcherds_side(rows, 1, 3, 3, allow_rational=True)
    assert compare(a, b).equal


def test_rational_exponent_matches_log_route():
    factors = [((0, -1, 0), F(1, 3)), ((1, 1, 0), F(-5, 7)), ((1, 0, 1), F(2, 11))]
    exact = series_log1p_product(factors, 2, 2, -6)
    dense = expand_factors(factors, 2, 2, -6)
    assert dense.coeffs == {k: v for k, v in exact.coeffs.items() if v}


def test_default_bounds_cover_blocks():
    assert default_bounds("1A", published_rows("1A")) == (3, 3)
    assert default_bounds("23AB", published_rows("23AB")) == (3, 23)
    assert default_bounds("4C", published_rows("4C"))[1] >= 8


@given(st.integers(1, 3), st.integers(-2, 2), st.integers(0, 2), st.data())
def test_backends_agree(a, s, b, data):
    rng = np.random.default_rng(data.draw(st.integers(0, 2 ** 16)))
    p = 2147483629
    F0 = rng.integers(0, p, size=(4, 3, 7), dtype=np.int64)
    t = rng.integers(0, p, size=5, dtype=np.int64)
    t[0] = 1
    x, y = F0.copy(), F0.copy()
    kernels.apply_factor_mod(x, a, s, b, t, p, backend="numba")
    kernels.apply_factor_mod(y, a, s, b, t, p, backend="numpy")
    assert np.array_equal(x, y)
    fx, fy = F0.astype(float) / p, F0.astype(float) / p
    tf = t.astype(float) / p
    tf[0] = 1.0
    kernels.apply_factor_float(fx, a, s, b, tf, backend="numba")
    kernels.apply_factor_float(fy, a, s, b, tf, backend="numpy")
    assert np.allclose(fx, fy)


def test_pure_zeta_kernel_backends_agree():
    p = 2147483647
    F0 = np.arange(2 * 2 * 9, dtype=np.int64).reshape(2, 2, 9)
    t = np.array([1, p - 2, 1], dtype=np.int64)
    x, y = F0.copy(), F0.copy()
    kernels.apply_factor_mod(x, 0, -1, 0, t, p, backend="numba")
    kernels.apply_factor_mod(y, 0, -1, 0, t, p, backend="numpy")
    assert np.array_equal(x, y)


def test_backend_selection(monkeypatch):
    monkeypatch.setenv(kernels.BACKEND_ENV, "numpy")
    assert kernels.backend_name() == "numpy"
    monkeypatch.setenv(kernels.BACKEND_ENV, "cuda")
    with pytest.raises(ValueError):
        kernels.backend_name()


def test_numpy_backend_full_identity(monkeypatch):
    monkeypatch.setenv(kernels.BACKEND_ENV, "numpy")
    rows = published_rows("4A")
    assert compare(expand_phi_power("4A", 2, 3, 3), expand_borcherds_side(rows, 2, 3, 3)).equal


def test_bad_kernel_monomial():
    with pytest.raises(ValueError):
        kernels.apply_factor_mod(np.zeros((1, 1, 1), np.int64), 0, 1, 0, np.ones(2, np.int64), 7)


@st.composite
def rational_factors(draw):
    out = []
    for _ in range(draw(st.integers(1, 4))):
        n, m = draw(st.integers(0, 2)), draw(st.integers(0, 2))
        r = draw(st.sampled_from([-1, -2])) if n + m == 0 else draw(st.integers(-(n + m), n + m))
        c = draw(st.fractions(min_value=-3, max_value=3, max_denominator=13).filter(bool))
        out.append(((n, r, m), c))
    return out


@given(rational_factors(), st.integers(0, 2), st.integers(0, 2))
def test_rational_exponents_match_log_route(factors, A, B):
    from m24prod.exactseries import default_zeta_floor
    floor = default_zeta_floor(factors, A, B)
    exact = series_log1p_product(factors, A, B, floor)
    dense = expand_factors(factors, A, B, floor)
    assert dense.coeffs == {k: v for k, v in exact.coeffs.items() if v}
