"""Rescaled Borcherds products B_N[phi, n] of level-N weak Jacobi forms.

For phi of weight 0 and index 1 at level N, the product runs over the cusps
c of Gamma0(N):

    B_N[phi] = q1^A zeta^B q2^C prod_c prod_{(n,r,m)>0}
               (1 - (q1^n zeta^r q2^m)^{N_c})^{(h_c/N_c) c(phi_c; 4nm - r^2)}

and B_N[phi, n] substitutes (q1, zeta, q2) -> (q1^n, zeta^n, q2^n).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt, lcm

from .jacobi import JacobiForm01, discriminant_coeffs
from .modforms import cusp_set, pi_fe
from .moonshine import EVector


@dataclass(frozen=True)
class BorcherdsSpec:
    N: int
    phi: JacobiForm01
    n: int = 1

    def __post_init__(self):
        if self.phi.N != self.N:
            raise ValueError("phi must live at the base level")
        if self.n < 1:
            raise ValueError("scaling must be a positive integer")

    @property
    def level(self) -> int:
        return self.n * self.N

    @cached_property
    def exponents(self) -> tuple[Fraction, Fraction, Fraction]:
        return borcherds_exponents(self.N, self.phi, self.n)

    @cached_property
    def weight(self) -> Fraction:
        return borcherds_weight(self.N, self.phi)

    @cached_property
    def evec(self) -> EVector:
        return borcherds_evector(self.N, self.phi, self.n)

    def scale(self, p) -> "BorcherdsSpec":
        return BorcherdsSpec(self.N, self.phi.scale(p), self.n)


def projected_forms(N: int, phi: JacobiForm01):
    """(cusp, phi_c) for every cusp, phi_c having tc2 replaced by its projection."""
    return [(c, JacobiForm01(N, phi.tc0, pi_fe(2, N, c, phi.tc2))) for c in cusp_set(N)]


def borcherds_evector(N: int, phi: JacobiForm01, n: int = 1) -> EVector:
    """E(B_N[phi, n])(d) = sum over cusps with n N_c = d of (h_c/N_c)(tc0, Pi_FE tc2)."""
    support = {}
    for c, phic in projected_forms(N, phi):
        d = n * c.N_c
        w = Fraction(c.width, c.N_c)
        m0 = w * phic.c0
        m2 = phic.tc2.scale(w)
        if d in support:
            a, b = support[d]
            support[d] = (a + m0, b + m2)
        else:
            support[d] = (m0, m2)
    return EVector(dict(sorted(support.items())), N)


def borcherds_exponents(N: int, phi: JacobiForm01, n: int = 1):
    """Leading exponents (e_q1, e_zeta, e_q2) of B_N[phi, n].

    Only D in {-1, 0} enter for index-1 weak forms, and the generator
    identities reduce the sums to e_q1 = (n/24) sum h_c tc0 and
    e_zeta = e_q2 = (n/2) sum h_c (tc0/12 + constant term of Pi_FE tc2).
    """
    e1 = Fraction(0)
    ez = Fraction(0)
    for c, phic in projected_forms(N, phi):
        e1 += c.width * phic.c0
        ez += c.width * (phic.c0 / 12 + phic.tc2.constant_term)
    return (Fraction(n, 24) * e1, Fraction(n, 2) * ez, Fraction(n, 2) * ez)


def borcherds_exponents_from_coefficients(N: int, phi: JacobiForm01, n: int = 1):
    """Same exponents from the general formulas in the coefficients c(phi_c; -l^2).

    A = (1/24) sum_c h_c sum_l c(phi_c; -l^2), B = (1/2) sum_c h_c sum_{l>0} l c(phi_c; -l^2),
    C = (1/4) sum_c h_c sum_l l^2 c(phi_c; -l^2); for weak index-1 forms l ranges over 0, +-1.
    """
    A = B = C = Fraction(0)
    for c, phic in projected_forms(N, phi):
        cm1, c0 = phic.coefficient(-1), phic.coefficient(0)
        A += c.width * (c0 + 2 * cm1)
        B += c.width * cm1
        C += c.width * 2 * cm1
    return (Fraction(n, 24) * A, Fraction(n, 2) * B, Fraction(n, 4) * C)


def borcherds_weight(N: int, phi: JacobiForm01) -> Fraction:
    """k = (1/2) sum_c (h_c/N_c) c(phi_c; 0), with c(phi_c; 0) = (10/12) tc0 - 2 const(Pi_FE tc2)."""
    k = Fraction(0)
    for c, phic in projected_forms(N, phi):
        c0 = Fraction(10, 12) * phic.c0 - 2 * phic.tc2.constant_term
        k += Fraction(c.width, c.N_c) * c0
    return k / 2


def cusp_exponent_tables(spec: BorcherdsSpec, d_max: int):
    """[(cusp, (h_c/N_c) c(phi_c; D) for D = -1..d_max)] for one product."""
    out = []
    for c, phic in projected_forms(spec.N, spec.phi):
        w = Fraction(c.width, c.N_c)
        out.append((c, tuple(w * x for x in discriminant_coeffs(phic, d_max))))
    return out


def _lcm_denominators(values) -> int:
    return lcm(1, *(Fraction(v).denominator for v in values))


def minimal_power(specs, d_max: int = 0) -> int:
    """Smallest p with p (h_c/N_c) c(phi_c; D) integral for every spec, cusp and D <= d_max.

    With the default d_max = 0 this is exactly the integrality hypothesis of
    the product theorem (D in {-1, 0}). Pass a larger d_max to also clear the
    denominators of the exponents inside an expansion window.
    """
    p = 1
    for spec in specs:
        if not isinstance(spec, BorcherdsSpec):
            spec = BorcherdsSpec(*spec)
        for _, table in cusp_exponent_tables(spec, max(d_max, 0)):
            p = lcm(p, _lcm_denominators(table[:d_max + 2]))
    return p


def product_factors(spec: BorcherdsSpec, power, A: int, B: int):
    """Factors ((a, r, b), exponent) of B_N[power * phi, n] within q1^A, q2^B."""
    power = Fraction(power)
    d_max = 4 * A * B + 1
    factors = []
    for c, table in cusp_exponent_tables(spec, d_max):
        s = spec.n * c.N_c
        for a in range(0, A // s + 1):
            for b in range(0, B // s + 1):
                if a == 0 and b == 0:
                    rs = [-1]
                else:
                    t = isqrt(4 * a * b + 1)
                    rs = range(-t, t + 1)
                for r in rs:
                    D = 4 * a * b - r * r
                    e = power * table[D + 1]
                    if e:
                        factors.append(((s * a, s * r, s * b), e))
    return factors


def leading_monomial(spec: BorcherdsSpec, power) -> tuple[Fraction, Fraction, Fraction]:
    return tuple(Fraction(power) * e for e in spec.exponents)
