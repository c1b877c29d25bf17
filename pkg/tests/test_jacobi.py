from fractions import Fraction

import pytest

from conftest import load_fixture
from m24prod.jacobi import PHI01, PHIM21, JacobiForm01, discriminant_coeffs, fourier_qz, generator_coeffs
from m24prod.exactseries import sigma1
from m24prod.moonshine import CLASS_LABELS, PROBE_LABELS, class_data

F = Fraction
PREC = 6


def _mul(a, b):
    out = {}
    for (n1, r1), c1 in a.items():
        for (n2, r2), c2 in b.items():
            if n1 + n2 < PREC:
                k = (n1 + n2, r1 + r2)
                out[k] = out.get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _power(base, e):
    out = {(0, 0): 1}
    for _ in range(e):
        out = _mul(out, base)
    return out


def _inverse_one_minus_q(n, e):
    # (1 - q^n)^-e as a q-series
    out = {(0, 0): 1}
    geo = {(k * n, 0): 1 for k in range(PREC // n + 1) if k * n < PREC}
    for _ in range(e):
        out = _mul(out, geo)
    return out


def _product_R():
    """prod_{n>=1} (1 - q^n zeta)^2 (1 - q^n zeta^-1)^2 / (1 - q^n)^4."""
    out = {(0, 0): 1}
    for n in range(1, PREC):
        out = _mul(out, _power({(0, 0): 1, (n, 1): -1}, 2))
        out = _mul(out, _power({(0, 0): 1, (n, -1): -1}, 2))
        out = _mul(out, _inverse_one_minus_q(n, 4))
    return out


def _generators_from_products():
    R = _product_R()
    phim21 = _mul({(0, 1): 1, (0, 0): -2, (0, -1): 1}, R)
    # 12 wp/(2 pi i)^2 = 1 + 12 zeta/(1 - zeta)^2 + 12 sum_n sum_{d|n} d (zeta^d - 2 + zeta^-d) q^n
    P = {(0, 0): 1}
    for n in range(1, PREC):
        for d in range(1, n + 1):
            if n % d == 0:
                for r, c in ((d, 1), (0, -2), (-d, 1)):
                    P[(n, r)] = P.get((n, r), 0) + 12 * d * c
    phi01 = _mul(P, phim21)
    for k, v in R.items():
        phi01[k] = phi01.get(k, 0) + 12 * v
    return {k: v for k, v in phi01.items() if v}, phim21


def test_generator_initial_values():
    g01 = generator_coeffs(PHI01, 8)
    gm = generator_coeffs(PHIM21, 8)
    assert [g01[D] for D in (-1, 0, 3, 4)] == [1, 10, -64, 108]
    assert [gm[D] for D in (-1, 0, 3, 4)] == [1, -2, 8, -12]
    assert g01[1] == g01[2] == 0 and g01[-2] == 0


def test_generators_match_product_formulas():
    phi01, phim21 = _generators_from_products()
    g01 = generator_coeffs(PHI01, 4 * PREC)
    gm = generator_coeffs(PHIM21, 4 * PREC)
    for n in range(PREC):
        for r in range(-2 * n - 2, 2 * n + 3):
            D = 4 * n - r * r
            assert phi01.get((n, r), 0) == g01[D], (n, r)
            assert phim21.get((n, r), 0) == gm[D], (n, r)


def test_polar_identities():
    g01 = generator_coeffs(PHI01, 0)
    gm = generator_coeffs(PHIM21, 0)
    assert F(g01[0], 12) + 2 * F(g01[-1], 12) == 1
    assert gm[0] + 2 * gm[-1] == 0


def test_taylor_decomposition():
    phi = JacobiForm01.make(2, 8, [F(4, 3)])
    qz = fourier_qz(phi, 2)
    assert qz[(0, 1)] == 2 and qz[(0, 0)] == 8 * F(10, 12) + F(4, 3) * -2


@pytest.mark.parametrize("label", CLASS_LABELS + PROBE_LABELS)
def test_twined_genus_polar_coefficient_is_two(label):
    g = class_data(label)
    phi = JacobiForm01(g.native_level, JacobiForm01.make(g.native_level, g.chi).tc0, g.tdT)
    assert phi.coefficient(-1) == 2


def test_chi_fixture_matches_data():
    for label, (chi, lvl, tdT) in load_fixture("chi_tdT").items():
        g = class_data(label)
        assert (g.chi, g.native_level, g.tdT.coords) == (F(chi), lvl, tuple(F(x) for x in tdT))


def test_elliptic_genus_of_k3():
    # 2 phi01 at level 1: c(-1) = 2, c(0) = 20
    phi = JacobiForm01.make(1, 24)
    assert discriminant_coeffs(phi, 0) == (2, 20)


def test_wrong_level_rejected():
    with pytest.raises(ValueError):
        JacobiForm01(2, JacobiForm01.make(3, 1).tc0, JacobiForm01.make(2, 1).tc2)
