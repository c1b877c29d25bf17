from fractions import Fraction

from hypothesis import given, strategies as st

from m24prod.linalg import bareiss_echelon, mat_vec, rref, solve_affine

F = Fraction


def naive_rref(rows, ncols=None):
    M = [[F(x) for x in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0]) if ncols is None else ncols
    pivots, r = [], 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        M[r] = [x / M[r][c] for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3),
                                min_size=n, max_size=n), min_size=1, max_size=5))


@given(matrices)
def test_rref_matches_naive(rows):
    assert rref(rows) == naive_rref(rows)


@given(matrices)
def test_bareiss_rank(rows):
    _, piv = bareiss_echelon(rows)
    assert len(piv) == len(naive_rref(rows)[1])


@given(matrices, st.data())
def test_solve_affine_consistency(rows, data):
    n = len(rows[0])
    x0 = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    b = mat_vec(rows, x0)
    sol = solve_affine(rows, b)
    assert sol is not None
    assert mat_vec(rows, sol.particular) == b
    for v in sol.kernel:
        assert all(x == 0 for x in mat_vec(rows, v))


def test_inconsistent_system():
    assert solve_affine([[1, 1], [2, 2]], [1, 3]) is None


def test_free_variables_zero():
    sol = solve_affine([[1, 1, 0]], [2])
    assert sol.particular == [2, 0, 0]
    assert len(sol.kernel) == 2
