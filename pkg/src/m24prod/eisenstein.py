"""Exact cusp expansions of weight-2 Eisenstein combinations.

For f = sum_t a_t E2(t*tau) with sum_t a_t / t = 0 (so f is holomorphic
modular on Gamma0(N)), the slash action by gamma in SL2(Z) is computed by
factoring diag(t, 1) * gamma = gamma' * [[A, B], [0, D]] with gamma' in
SL2(Z). The quasimodular corrections cancel, leaving

    (f |_2 gamma)(tau) = sum_t a_t D^-2 E2((A tau + B) / D).

Projecting to integral exponents gives rational coefficients whenever the
roots of unity involved are +-1, which holds for all levels whose odd part
is squarefree and whose 2-part divides 8.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .exactseries import QSeries, sigma1


def _egcd(a: int, b: int):
    if b == 0:
        return a, 1, 0
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def e2_slash_data(t: int, gamma) -> tuple[int, int, int]:
    """Return (A, B, D) with diag(t,1)*gamma = gamma' * [[A, B], [0, D]]."""
    a, b, c, d = gamma
    g = gcd(t * a, c)
    # gamma' = [[t a / g, x], [c / g, y]] with (t a / g) y - x (c / g) = 1
    g2, y, mx = _egcd(t * a // g, c // g)
    if g2 != 1:
        raise ArithmeticError("unexpected gcd while factoring")
    x = -mx
    A, D = g, t // g
    B = y * t * b - x * d
    return A, B, D


def projected_e2_slash(t: int, gamma, n_terms: int) -> QSeries:
    """pi_FE(E2(t .) |_2 gamma), ignoring the non-holomorphic 1/(c tau + d) term."""
    A, B, D = e2_slash_data(t, gamma)
    G = gcd(A, D)
    Dp, Ap = D // G, A // G
    out = {0: Fraction(1, D * D)}
    k = 1
    while k * Ap < n_terms:
        n = k * Dp
        phase = (k * B) % G
        if G == 1 or phase == 0:
            sign = 1
        elif 2 * phase == G:
            sign = -1
        else:
            raise ArithmeticError("projection has non-rational roots of unity")
        out[k * Ap] = out.get(k * Ap, 0) + Fraction(-24 * sigma1(n) * sign, D * D)
        k += 1
    return QSeries(out, n_terms)


def projected_eisenstein_slash(combo: dict[int, Fraction], gamma, n_terms: int) -> QSeries:
    """pi_FE(f |_2 gamma) for f = sum_t combo[t] E2(t tau)."""
    if sum(Fraction(a) / t for t, a in combo.items()) != 0:
        raise ValueError("combination is not holomorphic (sum a_t / t != 0)")
    total = QSeries({}, n_terms)
    for t, a in combo.items():
        if a:
            total = total + projected_e2_slash(t, gamma, n_terms).scale(a)
    return total


def eisenstein_generators(N: int) -> list[dict[int, Fraction]]:
    """E2(tau) - t E2(t tau) for 1 < t | N, as combinations over divisors."""
    return [{1: Fraction(1), t: Fraction(-t)} for t in range(2, N + 1) if N % t == 0]
