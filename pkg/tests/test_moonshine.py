from fractions import Fraction

import pytest

from conftest import fracs, load_fixture
from m24prod.exactseries import divisors
from m24prod.expander import log_matching_series
from m24prod.modforms import q_coeff_lists
from m24prod.moonshine import (CLASS_LABELS, class_data, comparison_terms, moebius_component, phi_g,
                               power_class, power_map)

F = Fraction


def test_zg_table_exact():
    fx = load_fixture("Zg")
    n = 0
    for label, rows in fx.items():
        for d, (m0, coords) in rows.items():
            a, b = moebius_component(label, int(d))
            assert a == F(m0)
            assert b.coords == tuple(fracs(coords))
            n += 1
    assert n == 30


def test_ng_table():
    for label, (N, k) in load_fixture("Ng").items():
        g = class_data(label)
        assert (g.N_g, g.k_g) == (N, F(k))


@pytest.mark.parametrize("label", CLASS_LABELS)
def test_power_map_laws(label):
    g = class_data(label)
    assert power_class(label, 1) == label
    assert power_class(label, g.order) == "1A"
    for a in divisors(g.order):
        for b in divisors(g.order):
            if g.order % (a * b) == 0:
                assert power_class(power_class(label, a), b) == power_class(label, a * b)


def test_power_map_values():
    assert power_map("8A") == {1: "8A", 2: "4A", 4: "2A", 8: "1A"}
    assert power_map("4C")[2] == "2B"
    assert power_class("6A", 2) == "3A" and power_class("6A", 3) == "2A"


def test_evector_support_is_divisors():
    for label in CLASS_LABELS:
        ev = phi_g(label).evec
        assert sorted(ev.support) == divisors(class_data(label).order)
        assert phi_g(label).exponents == (1, 1, 1)


def test_moebius_rejects_non_divisor():
    with pytest.raises(ValueError):
        moebius_component("3A", 2)


def test_unknown_class():
    with pytest.raises(KeyError):
        class_data("9Z")


@pytest.mark.parametrize("label", CLASS_LABELS)
def test_log_matching_identity(label):
    for D in (-1, 0, 3, 4, 7, 8):
        lhs, rhs = log_matching_series(label, D, 12)
        assert lhs == rhs


def test_comparison_terms():
    assert comparison_terms([8]) == 2 + 9
    assert comparison_terms([4, 6]) == 4 + 9


def test_evector_addition_embeds():
    a = phi_g("2A").evec
    b = phi_g("3A").evec
    s = a + b
    assert s.comparison_level == 6
    assert q_coeff_lists(s.support[1][1], 10) == \
        [x + y for x, y in zip(q_coeff_lists(a.support[1][1], 10), q_coeff_lists(b.support[1][1], 10))]
