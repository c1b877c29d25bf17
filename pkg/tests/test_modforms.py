from fractions import Fraction

import pytest

from conftest import load_fixture
from m24prod import datagen, dataio
from m24prod.modforms import (SUPPORTED_LEVELS, ModFormVec, cusp_set, dimension, echelon_basis,
                              embed_level, find_cusp, gamma0_index, pi_fe, projection_matrix,
                              q_coeff_lists, sturm_bound)

F = Fraction


def test_dimensions_and_index():
    assert [dimension(2, N) for N in SUPPORTED_LEVELS] == [0, 1, 1, 2, 1, 3, 1, 3, 2, 3]
    assert gamma0_index(23) == 24 and gamma0_index(8) == 12
    assert sturm_bound(2, 8) == 2


def test_cusp_table_and_widths():
    fx = load_fixture("cusps")
    for N, rows in fx.items():
        N = int(N)
        got = [[c.label, c.width, c.N_c] for c in cusp_set(N)]
        assert sorted(got) == sorted(rows)
        assert sum(c.width for c in cusp_set(N)) == gamma0_index(N)


def test_find_cusp_aliases():
    assert find_cusp(8, "oo").is_infinity
    with pytest.raises(ValueError):
        find_cusp(8, "1/3")


def test_echelon_pivots():
    for N in SUPPORTED_LEVELS:
        for i, f in enumerate(echelon_basis(2, N, 10)):
            lst = f.to_list(10)
            assert lst[i] == 1
            assert all(lst[j] == 0 for j in range(dimension(2, N)) if j != i)


def test_level11_cusp_form_in_basis():
    f = echelon_basis(2, 11, 8)[1]
    assert f.to_list(6) == [0, 1, -2, -1, 2, 1]


def test_projection_example_level8():
    # image of the first basis vector at cusp 1/2; its q^3 coefficient is 12
    v = pi_fe(2, 8, "1/2", ModFormVec(2, 8, (1, 0, 0)))
    assert v.coords == (F(-1, 8), F(3), F(-3))
    assert q_coeff_lists(v, 5) == [F(-1, 8), 3, -3, 12, -3]


def test_projection_fixture_matches_data():
    fx = load_fixture("projections")
    for key, mat in fx.items():
        N, label = key.split(":")
        assert projection_matrix(2, int(N), label) == [[F(x) for x in r] for r in mat]


def test_projection_at_infinity_is_identity():
    assert projection_matrix(2, 8, "Infinity") == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_embed_level_roundtrip():
    v = ModFormVec(2, 2, (F(4, 3),))
    w = embed_level(v, 8)
    assert q_coeff_lists(w, 50) == q_coeff_lists(v, 50)
    with pytest.raises(ValueError):
        embed_level(ModFormVec(2, 4, (0, 1)), 6)


def test_modformvec_validates_length():
    with pytest.raises(ValueError):
        ModFormVec(2, 8, (1, 2))


def test_datagen_roundtrip_is_exact():
    assert dataio.dumps(datagen.build()) == dataio.DEFAULT_PATH.read_text(encoding="utf-8")
