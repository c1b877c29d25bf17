from fractions import Fraction

import pytest

from conftest import load_fixture
from m24prod.borcherds import (BorcherdsSpec, borcherds_weight, cusp_exponent_tables, leading_monomial,
                               minimal_power, product_factors)
from m24prod.jacobi import JacobiForm01
from m24prod.moonshine import CLASS_LABELS
from m24prod.solver import published_rows

F = Fraction
MINIMAL_POWERS = {"3B": 3, "4A": 2, "4C": 8, "8A": 8}


def test_3b_scaled_exponents():
    rows = [r.scale(3) for r in published_rows("3B")]
    assert [r.exponents for r in rows] == [(-1, -1, -1), (4, 4, 4)]


def test_level1_product_is_igusa_cusp_form_weight():
    spec = BorcherdsSpec(1, JacobiForm01.make(1, 24))
    assert spec.weight == 10
    assert spec.exponents == (1, 1, 1)


def test_23ab_exponents_and_weight():
    (row,) = published_rows("23AB")
    assert row.exponents == (1, 1, 1)
    assert row.weight == -1


@pytest.mark.parametrize("label", CLASS_LABELS)
def test_weights_match_table(label):
    N_g, k_g = load_fixture("Ng")[label]
    assert sum(borcherds_weight(r.N, r.phi) for r in published_rows(label)) == F(k_g)


@pytest.mark.parametrize("label", CLASS_LABELS)
def test_minimal_powers(label):
    assert minimal_power(published_rows(label)) == MINIMAL_POWERS.get(label, 1)


def test_23ab_window_denominators():
    # exponents deeper in the product carry a denominator 11
    rows = published_rows("23AB")
    assert minimal_power(rows, d_max=0) == 1
    assert minimal_power(rows, d_max=20) == 11


def test_rescaled_level_and_exponents():
    phi = JacobiForm01.make(4, 0, [1, -8])
    spec = BorcherdsSpec(4, phi, 2)
    assert spec.level == 8
    assert spec.exponents == tuple(2 * e for e in BorcherdsSpec(4, phi).exponents)


def test_product_factor_scaling():
    spec = BorcherdsSpec(2, JacobiForm01.make(2, 8, [F(4, 3)]), 1)
    tables = dict((c.label, t) for c, t in cusp_exponent_tables(spec, 0))
    facs = dict(product_factors(spec, 1, 2, 2))
    # infinity of Gamma0(2) has N_c = 1, cusp 0 has N_c = 2
    assert facs[(0, -1, 0)] == tables["Infinity"][0] == 2
    assert (0, -2, 0) not in facs and tables["0"][0] == 0


def test_leading_monomial():
    (row,) = published_rows("11A")
    assert leading_monomial(row, 2) == (2, 2, 2)


def test_bad_specs():
    with pytest.raises(ValueError):
        BorcherdsSpec(2, JacobiForm01.make(4, 1), 1)
    with pytest.raises(ValueError):
        BorcherdsSpec(1, JacobiForm01.make(1, 1), 0)
