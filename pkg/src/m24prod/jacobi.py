"""Weak Jacobi forms of weight 0 and index 1.

A form is stored through its Taylor pair: phi = tc0 * phi01/12 + tc2 * phim21,
with tc0 a constant and tc2 in M_2(Gamma0(N)). Fourier coefficients depend on
(n, r) only through the discriminant D = 4n - r^2 and vanish for D < -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm

from .exactseries import QZSeries, euler_product_ints, int_series_inverse, int_series_mul, rat
from .modforms import ModFormVec, dimension, find_cusp, pi_fe, q_coeff_lists

PHI01 = "phi01"
PHIM21 = "phim21"


@dataclass(frozen=True)
class GeneratorTable:
    """Integer coefficients c(D), D = -1 .. d_max, of phi01 or phim21."""

    name: str
    d_max: int
    values: tuple[int, ...]

    def __getitem__(self, D: int) -> int:
        if D < -1:
            return 0
        if D > self.d_max:
            raise IndexError(f"discriminant {D} beyond table bound {self.d_max}")
        return self.values[D + 1]


def _zeta_layers_phim21(n_terms: int) -> tuple[list[int], list[int]]:
    """q-series of the zeta^0 and zeta^1 coefficients of phim21.

    theta1(z)^2 / eta^6 with theta1^2 = q^(1/4) sum_{a,b} (-1)^(a+b) q^(T(a)+T(b)) zeta^(a+b+1),
    T(a) = a(a+1)/2, and eta^6 = q^(1/4) prod (1 - q^n)^6.
    """
    inv_eta6 = euler_product_ints(n_terms, -6)
    layers = []
    for s in (0, 1):
        num = [0] * n_terms
        amax = isqrt(2 * n_terms) + 2
        for a in range(-amax - abs(s), amax + abs(s) + 1):
            b = s - 1 - a
            e = a * (a + 1) // 2 + b * (b + 1) // 2
            if e < n_terms:
                num[e] += 1 if s % 2 else -1
        layers.append(int_series_mul(num, inv_eta6, n_terms))
    return layers[0], layers[1]


def _zeta_layers_phi01(n_terms: int) -> tuple[list[int], list[int]]:
    """q-series of the zeta^0 and zeta^1 coefficients of phi01.

    phi01 = 4 sum_{i=2,3,4} theta_i(z)^2 / theta_i(0)^2. The even thetas are
    handled in the variable t = q^(1/2); odd powers of t cancel in the sum.
    """
    tn = 2 * n_terms
    lim = isqrt(tn) + 2
    th3 = [0] * tn
    for a in range(-lim, lim + 1):
        if a * a < tn:
            th3[a * a] += 1
    th4 = [c * (-1) ** isqrt(i) if c else 0 for i, c in enumerate(th3)]
    inv3 = int_series_inverse(int_series_mul(th3, th3, tn), tn)
    inv4 = int_series_inverse(int_series_mul(th4, th4, tn), tn)
    # theta2(0)^2 = 4 q^(1/4) (sum_{n>=0} q^T(n))^2
    tri = [0] * n_terms
    k = 0
    while k * (k + 1) // 2 < n_terms:
        tri[k * (k + 1) // 2] += 1
        k += 1
    inv2 = int_series_inverse(int_series_mul(tri, tri, n_terms), n_terms)
    layers = []
    for s in (0, 1):
        num_t = [0] * tn
        for a in range(-lim - 1, lim + 2):
            b = s - a
            e = a * a + b * b
            if e < tn:
                num_t[e] += 1
        part3 = int_series_mul(num_t, inv3, tn)
        part4 = int_series_mul(num_t, inv4, tn)
        sign = (-1) ** s
        even = [part3[i] + sign * part4[i] for i in range(tn)]
        if any(even[i] for i in range(1, tn, 2)):
            raise ArithmeticError("half-integral powers failed to cancel")
        even = [4 * even[2 * i] for i in range(n_terms)]
        num2 = [0] * n_terms
        for a in range(-lim - 1, lim + 2):
            b = s - 1 - a
            e = a * (a + 1) // 2 + b * (b + 1) // 2
            if e < n_terms:
                num2[e] += 1
        part2 = int_series_mul(num2, inv2, n_terms)
        layers.append([even[i] + part2[i] for i in range(n_terms)])
    return layers[0], layers[1]


@lru_cache(maxsize=8)
def _generator_table(which: str, d_max: int) -> GeneratorTable:
    n_terms = (d_max + 1) // 4 + 2
    if which == PHI01:
        z0, z1 = _zeta_layers_phi01(n_terms)
    elif which == PHIM21:
        z0, z1 = _zeta_layers_phim21(n_terms)
    else:
        raise ValueError(f"unknown generator {which!r}")
    values = []
    for D in range(-1, d_max + 1):
        # D = 4n - r^2 with r in {0, 1}; D = 1, 2 mod 4 never occurs
        if D % 4 == 0:
            values.append(z0[D // 4])
        elif D % 4 == 3:
            values.append(z1[(D + 1) // 4])
        else:
            values.append(0)
    return GeneratorTable(which, d_max, tuple(values))


_TABLE_BOUND = {PHI01: 63, PHIM21: 63}


def generator_coeffs(which: str, d_max: int) -> GeneratorTable:
    """Discriminant-indexed coefficients of phi01 or phim21 up to d_max."""
    if d_max < -1:
        raise ValueError("d_max must be at least -1")
    if which not in _TABLE_BOUND:
        raise ValueError(f"unknown generator {which!r}")
    # compute on a doubling grid so repeated requests share work
    bound = _TABLE_BOUND[which]
    while bound < d_max:
        bound = 2 * bound + 1
    _TABLE_BOUND[which] = bound
    full = _generator_table(which, bound)
    return GeneratorTable(which, d_max, full.values[:d_max + 2])


@dataclass(frozen=True)
class JacobiForm01:
    """phi = tc0 * phi01/12 + tc2 * phim21 at level N."""

    N: int
    tc0: ModFormVec
    tc2: ModFormVec

    def __post_init__(self):
        if (self.tc0.k, self.tc0.N) != (0, self.N) or (self.tc2.k, self.tc2.N) != (2, self.N):
            raise ValueError("Taylor coefficients must live in M_0(N) and M_2(N)")

    @classmethod
    def make(cls, N: int, tc0, tc2=()) -> "JacobiForm01":
        tc2 = tuple(tc2) or (0,) * dimension(2, N)
        return cls(N, ModFormVec(0, N, (rat(tc0),)), ModFormVec(2, N, tc2))

    @property
    def c0(self) -> Fraction:
        return self.tc0.coords[0]

    def __add__(self, other: "JacobiForm01") -> "JacobiForm01":
        return JacobiForm01(self.N, self.tc0 + other.tc0, self.tc2 + other.tc2)

    def scale(self, c) -> "JacobiForm01":
        return JacobiForm01(self.N, self.tc0.scale(c), self.tc2.scale(c))

    def is_zero(self) -> bool:
        return self.tc0.is_zero() and self.tc2.is_zero()

    def coefficient(self, D: int) -> Fraction:
        if D < -1:
            return Fraction(0)
        return discriminant_coeffs(self, D)[D + 1]

    def at_cusp(self, cusp) -> "JacobiForm01":
        c0, tc2 = cusp_taylor_pair(self, cusp)
        return JacobiForm01(self.N, self.tc0, tc2)

    def __str__(self):
        return f"({self.c0}, {self.tc2})"


def discriminant_coeffs(phi: JacobiForm01, d_max: int) -> tuple[Fraction, ...]:
    """c(phi; D) for D = -1 .. d_max (index D + 1)."""
    return _discriminant_coeffs(phi, _round_up(d_max))[:d_max + 2]


def _round_up(d: int) -> int:
    return (max(d, 0) // 64 + 1) * 64 - 1


@lru_cache(maxsize=512)
def _discriminant_coeffs(phi: JacobiForm01, d_max: int) -> tuple[Fraction, ...]:
    g01 = generator_coeffs(PHI01, d_max)
    gm21 = generator_coeffs(PHIM21, d_max)
    n_terms = (d_max + 1) // 4 + 1
    a = q_coeff_lists(phi.tc2, n_terms) if not phi.tc2.is_zero() else [Fraction(0)] * n_terms
    c0 = phi.c0 / 12
    den = lcm(c0.denominator, *(x.denominator for x in a))
    A = [int(x * den) for x in a]
    C0 = int(c0 * den)
    out = []
    for D in range(-1, d_max + 1):
        s = C0 * g01[D]
        j = 0
        while D - 4 * j >= -1:
            if A[j]:
                s += A[j] * gm21[D - 4 * j]
            j += 1
        out.append(Fraction(s, den))
    return tuple(out)


def fourier_qz(phi: JacobiForm01, n_max: int) -> QZSeries:
    """Coefficients c(n, r) for 0 <= n <= n_max and all r with 4n - r^2 >= -1."""
    d_max = 4 * n_max + 1
    table = discriminant_coeffs(phi, d_max)
    coeffs = {}
    for n in range(n_max + 1):
        rmax = isqrt(4 * n + 1)
        for r in range(-rmax, rmax + 1):
            D = 4 * n - r * r
            if D >= -1:
                coeffs[(n, r)] = table[D + 1]
    return QZSeries(coeffs, n_max + 1)


def cusp_taylor_pair(phi: JacobiForm01, cusp) -> tuple[Fraction, ModFormVec]:
    """Taylor pair of the projected cusp expansion: (tc0, Pi_FE(2, N, c) tc2)."""
    c = find_cusp(phi.N, cusp)
    return phi.c0, pi_fe(2, phi.N, c, phi.tc2)
