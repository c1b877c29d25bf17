"""Truncated trivariate expansions of Phi_g^p and of products of Borcherds lifts.

Both sides are products of factors (1 - q1^a zeta^s q2^b)^E times a leading
monomial. Expansions are computed modulo several word-sized primes with the
dense kernels and lifted to exact rationals by CRT. Exponents may be
rational: the coefficients then lie in Z[1/b] for b the lcm of exponent
denominators, and S * coefficient is an integer for the scale S below.

The stored window is 0 <= n <= A, 0 <= m <= B relative to the leading
monomial and relative zeta-degree r >= zeta_floor, default -(A + B + 2p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, isqrt, lcm, log2

import numpy as np

from . import kernels
from .borcherds import BorcherdsSpec, leading_monomial, product_factors
from .exactseries import Q3Series, divisors, rat
from .jacobi import JacobiForm01, discriminant_coeffs
from .modforms import ModFormVec
from .moonshine import class_data, moebius_component, power_class


class NonIntegralExponent(ValueError):
    """A product exponent in the window is not an integer."""


class BoundMismatch(ValueError):
    """Two expansions do not share a window."""


@dataclass(frozen=True)
class Mismatch:
    n: int
    r: int
    m: int
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class Comparison:
    equal: bool
    mismatch: Mismatch | None = None
    n_coefficients: int = 0

    def __bool__(self):
        return self.equal


# factor lists

def phi_factors(g: str, p, A: int, B: int):
    """((a, s, b), p c_{g,d}(4nm - r^2)) for the factors of Phi_g^p inside the window."""
    p = Fraction(p)
    cls = class_data(g)
    out = []
    for d in divisors(cls.order):
        m0, m2 = moebius_component(g, d)
        form = JacobiForm01(cls.native_level, ModFormVec(0, cls.native_level, (m0,)), m2)
        table = discriminant_coeffs(form, 4 * (A // d) * (B // d) + 1)
        for a in range(A // d + 1):
            for b in range(B // d + 1):
                if a == 0 and b == 0:
                    rs = [-1]
                else:
                    t = isqrt(4 * a * b + 1)
                    rs = range(-t, t + 1)
                for r in rs:
                    e = p * table[4 * a * b - r * r + 1]
                    if e:
                        out.append(((d * a, d * r, d * b), e))
    return out


def borcherds_side_factors(rows, p, A: int, B: int):
    out = []
    for spec in rows:
        out.extend(product_factors(spec, p, A, B))
    return out


# exact lifting

def _lcm_den(factors) -> int:
    return lcm(1, *(e.denominator for _, e in factors))


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def denominator_scale(den: int, K: int) -> int:
    """S with S * binom-product coefficients integral, for total degree <= K."""
    S = den ** K
    for q in _prime_factors(den):
        v, f = 0, q
        while f <= K:
            v += K // f
            f *= q
        S *= q ** v
    return S


@lru_cache(maxsize=1)
def _prime_pool(count: int = 64) -> tuple[int, ...]:
    """Largest primes below 2^31, by trial division against a small sieve."""
    lim = isqrt(2 ** 31) + 1
    sieve = np.ones(lim + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, isqrt(lim) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    small = np.flatnonzero(sieve)
    out = []
    c = 2 ** 31 - 1
    while len(out) < count:
        if all(c % int(q) for q in small if q * q <= c):
            out.append(c)
        c -= 2
    return tuple(out)


def _binomial_terms_mod(E: Fraction, kmax: int, p: int) -> np.ndarray:
    """(-1)^k binom(E, k) mod p for k = 0..kmax."""
    e = E.numerator % p * pow(E.denominator % p, -1, p) % p
    t = np.zeros(kmax + 1, dtype=np.int64)
    t[0] = 1
    c = 1
    for k in range(1, kmax + 1):
        c = c * ((e - k + 1) % p) % p * pow(k, -1, p) % p
        t[k] = (p - c) % p if k % 2 else c
    return t


def _binomial_majorant(E: Fraction, kmax: int) -> np.ndarray:
    """binom(ceil|E| + k - 1, k) >= |binom(E, k)| as floats."""
    c = ceil(abs(E))
    t = np.zeros(kmax + 1)
    t[0] = 1.0
    v = 1.0
    for k in range(1, kmax + 1):
        v = v * (c + k - 1) / k
        t[k] = v
    return t


def _kmax(a: int, s: int, b: int, A: int, B: int, nR: int, E: Fraction) -> int:
    if a or b:
        k = min(A // a if a else A + B + nR, B // b if b else A + B + nR)
    else:
        k = (nR - 1) // (-s)
    if E >= 0 and E.denominator == 1:
        k = min(k, int(E))
    return k


@dataclass
class _Grid:
    A: int
    B: int
    r_lo: int
    nR: int

    @classmethod
    def make(cls, A: int, B: int, zeta_floor: int) -> "_Grid":
        r_lo = zeta_floor - (A + B)
        return cls(A, B, r_lo, (A + B) - r_lo + 1)


def _usable(factors, A: int, B: int, grid: _Grid):
    out = []
    for (a, s, b), E in factors:
        if a > A or b > B or not E:
            continue
        if a == 0 and b == 0 and -s >= grid.nR:
            continue
        out.append(((a, s, b), E))
    return out


def _expand_mod(factors, grid: _Grid, p: int, backend: str | None) -> np.ndarray:
    F = np.zeros((grid.A + 1, grid.B + 1, grid.nR), dtype=np.int64)
    F[0, 0, -grid.r_lo] = 1
    for (a, s, b), E in factors:
        t = _binomial_terms_mod(E, _kmax(a, s, b, grid.A, grid.B, grid.nR, E), p)
        kernels.apply_factor_mod(F, a, s, b, t, p, backend)
    return F


def _majorant(factors, grid: _Grid, backend: str | None) -> np.ndarray:
    F = np.zeros((grid.A + 1, grid.B + 1, grid.nR))
    F[0, 0, -grid.r_lo] = 1.0
    for (a, s, b), E in factors:
        t = _binomial_majorant(E, _kmax(a, s, b, grid.A, grid.B, grid.nR, E))
        kernels.apply_factor_float(F, a, s, b, t, backend)
    return F


def _crt(residues: list[np.ndarray], primes: list[int]) -> dict[tuple[int, int, int], int]:
    """Symmetric CRT lift of int64 residue arrays (Garner mixed radix)."""
    digits = [residues[0].astype(np.int64)]
    for i in range(1, len(primes)):
        p = primes[i]
        # value of the partial lift modulo p, by Horner over earlier digits
        acc = np.zeros_like(residues[i])
        for j in range(i - 1, -1, -1):
            acc = (acc * (primes[j] % p) + digits[j] % p) % p
        inv = pow(int(np.prod([q % p for q in primes[:i]], dtype=object) % p), -1, p)
        digits.append(((residues[i] - acc) % p) * inv % p)
    M = 1
    for q in primes:
        M *= q
    nz = np.zeros(residues[0].shape, dtype=bool)
    for d in digits:
        nz |= d != 0
    out = {}
    for idx in zip(*np.nonzero(nz)):
        y, radix = 0, 1
        for d, q in zip(digits, primes):
            y += int(d[idx]) * radix
            radix *= q
        if y > M // 2:
            y -= M
        if y:
            out[tuple(int(i) for i in idx)] = y
    return out


def expand_factors(factors, A: int, B: int, zeta_floor: int, offset=(0, 0, 0),
                   backend: str | None = None) -> Q3Series:
    """Exact truncated expansion of offset * prod (1 - x)^E."""
    if A < 0 or B < 0:
        raise ValueError("bounds must be nonnegative")
    grid = _Grid.make(A, B, zeta_floor)
    factors = _usable([(tuple(int(v) for v in k), Fraction(e)) for k, e in factors], A, B, grid)
    out_lo = zeta_floor - grid.r_lo
    # binomial degrees sum to at most A + B over q-bearing factors, plus at
    # most nR - 1 over pure zeta factors (each step moves down the grid)
    K = A + B
    if any(a == 0 and b == 0 and E.denominator != 1 for (a, _, b), E in factors):
        K += grid.nR - 1
    S = denominator_scale(_lcm_den(factors), K)
    maj = _majorant(factors, grid, backend)[:, :, out_lo:]
    peak = float(maj.max()) if maj.size else 1.0
    if not np.isfinite(peak):
        raise OverflowError("coefficient majorant overflows double precision; reduce the bounds")
    bits = log2(S) + log2(max(peak, 1.0)) + 2
    primes, residues = [], []
    for q in _prime_pool():
        if len(primes) * 30 > bits:
            break
        if S % q == 0:
            continue
        F = _expand_mod(factors, grid, q, backend)[:, :, out_lo:]
        if S != 1:
            F = F * (S % q) % q
        primes.append(q)
        residues.append(F)
    else:
        raise OverflowError("not enough primes for the coefficient bound")
    ints = _crt(residues, primes)
    coeffs = {(n, j + zeta_floor, m): Fraction(v, S) for (n, m, j), v in ints.items()}
    return Q3Series(coeffs, A, B, zeta_floor, offset)


def _check_integral(factors, what: str):
    for k, e in factors:
        if e.denominator != 1:
            raise NonIntegralExponent(f"{what}: exponent {e} of factor {k} is not an integer")


def default_zeta_floor(p, A: int, B: int) -> int:
    return -(A + B + 2 * int(ceil(Fraction(p))))


def expand_phi_power(g: str, p, A: int, B: int, zeta_floor: int | None = None,
                     allow_rational: bool = False, backend: str | None = None) -> Q3Series:
    """Truncated (q1 zeta q2)^p prod_d prod (1 - x^d)^{p c_{g,d}}."""
    p = rat(p)
    factors = phi_factors(g, p, A, B)
    if not allow_rational:
        _check_integral(factors, f"Phi_{g}^{p}")
    zf = default_zeta_floor(p, A, B) if zeta_floor is None else zeta_floor
    return expand_factors(factors, A, B, zf, (p, p, p), backend)


def expand_borcherds_side(rows, p, A: int, B: int, zeta_floor: int | None = None,
                          allow_rational: bool = False, backend: str | None = None) -> Q3Series:
    """Truncated product of B_{N_i}[p phi_i, n_i] over the rows."""
    p = rat(p)
    rows = [r if isinstance(r, BorcherdsSpec) else BorcherdsSpec(*r) for r in rows]
    factors = borcherds_side_factors(rows, p, A, B)
    if not allow_rational:
        _check_integral(factors, "Borcherds side")
    offset = [Fraction(0)] * 3
    for r in rows:
        for i, e in enumerate(leading_monomial(r, p)):
            offset[i] += e
    zf = default_zeta_floor(p, A, B) if zeta_floor is None else zeta_floor
    return expand_factors(factors, A, B, zf, tuple(offset), backend)


def compare(a: Q3Series, b: Q3Series) -> Comparison:
    """Exact comparison over the common stored window."""
    if (a.A, a.B, a.r_floor) != (b.A, b.B, b.r_floor):
        raise BoundMismatch(f"windows differ: {(a.A, a.B, a.r_floor)} vs {(b.A, b.B, b.r_floor)}")
    if a.offset != b.offset:
        n, r, m = a.offset
        return Comparison(False, Mismatch(n, r, m, Fraction(1), Fraction(0)))
    keys = sorted(set(a.coeffs) | set(b.coeffs))
    for k in keys:
        x, y = a.coeffs.get(k, Fraction(0)), b.coeffs.get(k, Fraction(0))
        if x != y:
            n, r, m = (u + o for u, o in zip(k, a.offset))
            return Comparison(False, Mismatch(n, r, m, x, y), len(keys))
    return Comparison(True, None, len(keys))


def block_scales(rows) -> list[int]:
    """Monomial scale n N_c of every cusp of every row."""
    from .modforms import cusp_set
    return sorted({r.n * c.N_c for r in rows for c in cusp_set(r.N)})


def default_bounds(g: str, rows) -> tuple[int, int]:
    """Bounds >= 3 reaching a q-bearing factor of every divisor layer and every cusp block."""
    scales = set(block_scales(rows)) | set(divisors(class_data(g).order))
    top = max(scales)
    return (3, max(3, top)) if top > 3 else (3, 3)


def log_matching_series(g: str, D: int, n_terms: int = 12):
    """Both sides of the Moebius sign identity in a formal marker x.

    Returns (prod_d (1 - x^d)^{c_{g,d}(D)}, exp(-sum_k c_{g^k}(D) x^k / k))
    as lists of the first n_terms coefficients.
    """
    from .exactseries import QSeries
    cls = class_data(g)
    lhs = QSeries.constant(1, n_terms)
    for d in divisors(cls.order):
        m0, m2 = moebius_component(g, d)
        c = JacobiForm01(cls.native_level, ModFormVec(0, cls.native_level, (m0,)), m2).coefficient(D)
        if c:
            base = QSeries({0: 1, d: -1}, n_terms)
            lhs = lhs * _power_rational(base, c, n_terms)
    logs = {}
    for k in range(1, n_terms):
        h = class_data(power_class(g, k))
        c = JacobiForm01(h.native_level, ModFormVec(0, h.native_level, (h.chi,)), h.tdT).coefficient(D)
        if c:
            logs[k] = -c / k
    rhs = QSeries(logs, n_terms).exp()
    return lhs.to_list(n_terms), rhs.to_list(n_terms)


def _power_rational(f, c: Fraction, n_terms: int):
    return (f.log().scale(c)).exp()
