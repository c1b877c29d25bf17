"""Exact linear algebra over the rationals.

Forward elimination is fraction-free (Bareiss) on an integer-scaled copy of
the matrix; the reduced row echelon form is then produced with Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm


def _integer_rows(rows):
    out = []
    for row in rows:
        den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        out.append([int(Fraction(x) * den) for x in row])
    return out


def bareiss_echelon(rows, ncols: int | None = None):
    """Fraction-free row echelon form. Returns (integer rows, pivot columns).

    Only the first ``ncols`` columns are used for pivoting; trailing columns
    (e.g. an augmented right-hand side) are carried along.
    """
    M = _integer_rows(rows)
    if not M:
        return [], []
    width = len(M[0])
    ncols = width if ncols is None else ncols
    pivots = []
    r, prev = 0, 1
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        for i in range(r + 1, len(M)):
            mic = M[i][c]
            M[i] = [(piv * M[i][j] - mic * M[r][j]) // prev for j in range(width)]
        pivots.append(c)
        prev = piv
        r += 1
        if r == len(M):
            break
    return M, pivots


def rref(rows, ncols: int | None = None):
    """Reduced row echelon form over Q. Returns (Fraction rows, pivots)."""
    M, pivots = bareiss_echelon(rows, ncols)
    R = [[Fraction(x) for x in row] for row in M[:len(pivots)]]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        inv = 1 / R[i][c]
        R[i] = [x * inv for x in R[i]]
        for k in range(i):
            f = R[k][c]
            if f:
                R[k] = [a - f * b for a, b in zip(R[k], R[i])]
    return R, pivots


@dataclass
class AffineSolution:
    """Solution set particular + span(kernel) of A x = b."""

    particular: list[Fraction]
    kernel: list[list[Fraction]]
    pivots: list[int]


def solve_affine(A, b) -> AffineSolution | None:
    """Solve A x = b exactly; None if inconsistent.

    The particular solution sets all free variables to zero.
    """
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, ncols=n)
    if not A:
        return AffineSolution([Fraction(0)] * n, [], [])
    # an inconsistent row has all-zero coefficients and nonzero rhs: it shows
    # up as a pivot in the rhs column, which ncols=n forbids, so check rank
    full, full_piv = rref(aug)
    if n in full_piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(R, pivots):
        x[c] = row[n]
    free = [c for c in range(n) if c not in pivots]
    kernel = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, c in zip(R, pivots):
            v[c] = -row[f]
        kernel.append(v)
    return AffineSolution(x, kernel, pivots)


def mat_vec(M, v):
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in M]


def mat_mul(A, B):
    cols = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in A]
