"""Exact truncated series over the rationals.

Three carriers are provided:

* ``QSeries``: univariate q-series with exponents on a lattice (1/h)Z.
* ``QZSeries``: bivariate (q, zeta) series, zeta Laurent, truncated in q.
* ``Q3Series``: trivariate (q1, zeta, q2) series with a leading monomial,
  truncated in q1 and q2 and, when infinite in zeta^-1, below a zeta floor.

All coefficients are ``fractions.Fraction`` (aliased ``Rat``).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Mapping

Rat = Fraction


def rat(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass an int, Fraction or string")
    return Fraction(x)


def rat_str(x) -> str:
    return str(Fraction(x))


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def divisors(n: int) -> list[int]:
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def sigma1(n: int) -> int:
    return sum(divisors(n))


def moebius(n: int) -> int:
    if n == 1:
        return 1
    res, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    if m > 1:
        res = -res
    return res


def _frac_ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


class QSeries:
    """Truncated q-series sum c(n/h) q^(n/h), known for all exponents < prec.

    Coefficients are stored sparsely, keyed by the integer numerator n.
    Zero coefficients are not stored but are still known up to ``prec``.
    """

    __slots__ = ("h", "coeffs", "prec")

    def __init__(self, coeffs: Mapping[int, object] | None = None, prec=0, h: int = 1):
        if h < 1:
            raise ValueError("lattice denominator must be positive")
        self.h = int(h)
        self.prec = rat(prec)
        bound = self.prec * self.h
        data = {}
        for n, c in (coeffs or {}).items():
            c = rat(c)
            if c and n < bound:
                data[int(n)] = c
        self.coeffs = data

    # construction helpers
    @classmethod
    def from_list(cls, values: Iterable, prec=None, h: int = 1) -> "QSeries":
        vals = list(values)
        if prec is None:
            prec = Fraction(len(vals), h)
        return cls({i: v for i, v in enumerate(vals)}, prec, h)

    @classmethod
    def constant(cls, c, prec) -> "QSeries":
        return cls({0: c}, prec, 1)

    @classmethod
    def monomial(cls, exponent, prec, c=1) -> "QSeries":
        e = rat(exponent)
        return cls({e.numerator: c}, prec, e.denominator)

    # basic queries
    def __getitem__(self, exponent) -> Fraction:
        e = rat(exponent)
        if e >= self.prec:
            raise IndexError(f"exponent {e} beyond precision {self.prec}")
        n = e * self.h
        if n.denominator != 1:
            return Fraction(0)
        return self.coeffs.get(int(n), Fraction(0))

    def valuation(self) -> Fraction:
        """Smallest exponent with a nonzero coefficient, or prec for zero."""
        if not self.coeffs:
            return self.prec
        return Fraction(min(self.coeffs), self.h)

    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self):
        """(exponent, coefficient) pairs in increasing exponent order."""
        for n in sorted(self.coeffs):
            yield Fraction(n, self.h), self.coeffs[n]

    def to_list(self, n_terms: int) -> list[Fraction]:
        """Integral-exponent coefficients of q^0 .. q^(n_terms-1)."""
        if n_terms > self.prec:
            raise IndexError(f"{n_terms} terms requested, precision {self.prec}")
        return [self[i] for i in range(n_terms)]

    def rehome(self, h: int) -> "QSeries":
        if h % self.h:
            raise ValueError("new lattice must refine the old one")
        k = h // self.h
        return QSeries({n * k: c for n, c in self.coeffs.items()}, self.prec, h)

    def truncate(self, prec) -> "QSeries":
        prec = rat(prec)
        if prec > self.prec:
            raise ValueError("cannot raise precision by truncation")
        return QSeries(self.coeffs, prec, self.h)

    def reduce_lattice(self) -> "QSeries":
        g = self.h
        for n in self.coeffs:
            g = gcd(g, n)
            if g == 1:
                return self
        return QSeries({n // g: c for n, c in self.coeffs.items()}, self.prec, self.h // g)

    # ring operations
    def _common(self, other: "QSeries"):
        h = lcm(self.h, other.h)
        return self.rehome(h), other.rehome(h), h

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.constant(other, self.prec)
        a, b, h = self._common(other)
        out = dict(a.coeffs)
        for n, c in b.coeffs.items():
            out[n] = out.get(n, 0) + c
        return QSeries(out, min(a.prec, b.prec), h)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({n: -c for n, c in self.coeffs.items()}, self.prec, self.h)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        c = rat(c)
        return QSeries({n: c * v for n, v in self.coeffs.items()}, self.prec, self.h)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        a, b, h = self._common(other)
        prec = min(a.prec + b.valuation(), b.prec + a.valuation())
        bound = prec * h
        out: dict[int, Fraction] = {}
        bkeys = sorted(b.coeffs.items())
        for n1, c1 in a.coeffs.items():
            for n2, c2 in bkeys:
                n = n1 + n2
                if n >= bound:
                    break
                out[n] = out.get(n, 0) + c1 * c2
        return QSeries(out, prec, h)

    __rmul__ = __mul__

    def shift(self, exponent) -> "QSeries":
        """Multiply by q^exponent."""
        e = rat(exponent)
        h = lcm(self.h, e.denominator)
        a = self.rehome(h)
        k = int(e * h)
        return QSeries({n + k: c for n, c in a.coeffs.items()}, a.prec + e, h)

    def rescale(self, t: int) -> "QSeries":
        """f(q) -> f(q^t), i.e. tau -> t*tau."""
        if t < 1:
            raise ValueError("rescale factor must be a positive integer")
        return QSeries({n * t: c for n, c in self.coeffs.items()}, self.prec * t, self.h)

    def __pow__(self, k: int) -> "QSeries":
        if not isinstance(k, int):
            raise TypeError("integer powers only")
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return QSeries.constant(1, self.prec - self.valuation())
        base, result = self, None
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "QSeries":
        """Multiplicative inverse of c*q^v*(1 + higher terms)."""
        if self.is_zero():
            raise ZeroDivisionError("series has no known nonzero coefficient")
        v = self.valuation()
        lead = self[v]
        unit = self.shift(-v).scale(1 / lead)
        h = unit.h
        bound = _frac_ceil(unit.prec * h)
        u = unit.coeffs
        inv = {0: Fraction(1)}
        ukeys = sorted(k for k in u if k > 0)
        for n in range(1, bound):
            s = Fraction(0)
            for k in ukeys:
                if k > n:
                    break
                c = inv.get(n - k)
                if c:
                    s -= u[k] * c
            if s:
                inv[n] = s
        out = QSeries(inv, unit.prec, h).scale(1 / lead)
        return out.shift(-v)

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.inverse()
        return self.scale(1 / rat(other))

    def derivative(self) -> "QSeries":
        """q d/dq."""
        return QSeries({n: c * Fraction(n, self.h) for n, c in self.coeffs.items()},
                       self.prec, self.h)

    def log(self) -> "QSeries":
        """log of a series with constant term 1 and nonnegative exponents."""
        if self.valuation() < 0 or self[0] != 1:
            raise ValueError("log needs constant term 1 and no negative exponents")
        dl = self.derivative() * self.inverse()
        return QSeries({n: c / Fraction(n, self.h) for n, c in dl.coeffs.items() if n},
                       self.prec, dl.h)

    def exp(self) -> "QSeries":
        """exp of a series with zero constant term and positive exponents."""
        if self.coeffs and (min(self.coeffs) <= 0):
            raise ValueError("exp needs a series with only positive exponents")
        h = self.h
        bound = _frac_ceil(self.prec * h)
        g = sorted(self.coeffs.items())
        f = {0: Fraction(1)}
        for n in range(1, bound):
            s = Fraction(0)
            for k, c in g:
                if k > n:
                    break
                prev = f.get(n - k)
                if prev:
                    s += k * c * prev
            if s:
                f[n] = s / n
        return QSeries(f, self.prec, h)

    # comparison
    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b, _ = self._common(other)
        return a.prec == b.prec and a.coeffs == b.coeffs

    def agrees_with(self, other: "QSeries") -> bool:
        """Equality on the common known range."""
        prec = min(self.prec, other.prec)
        return self.truncate(prec) == other.truncate(prec)

    def __repr__(self):
        terms = []
        for e, c in list(self.items())[:8]:
            terms.append(f"{c}*q^{e}")
        tail = " + ..." if len(self.coeffs) > 8 else ""
        return f"QSeries({' + '.join(terms) or '0'}{tail} + O(q^{self.prec}))"


def eisenstein_e2(prec) -> QSeries:
    """Normalized quasimodular E2 = 1 - 24 sum sigma_1(n) q^n."""
    prec = rat(prec)
    if prec < 1:
        raise ValueError("prec must be at least 1")
    top = _frac_ceil(prec)
    sig = [0] * top
    for d in range(1, top):
        for k in range(d, top, d):
            sig[k] += d
    coeffs = {0: 1}
    coeffs.update({n: -24 * sig[n] for n in range(1, top)})
    return QSeries(coeffs, prec)


def euler_product_ints(n_terms: int, power: int = 1) -> list[int]:
    """Integer coefficients of prod_{n>=1} (1 - q^n)^power up to q^(n_terms-1)."""
    f = [0] * n_terms
    f[0] = 1
    if power >= 0:
        for n in range(1, n_terms):
            for _ in range(power):
                for k in range(n_terms - 1, n - 1, -1):
                    f[k] -= f[k - n]
    else:
        for n in range(1, n_terms):
            for _ in range(-power):
                for k in range(n, n_terms):
                    f[k] += f[k - n]
    return f


def dedekind_eta(prec) -> QSeries:
    """q^(1/24) prod (1 - q^n) on the lattice (1/24)Z."""
    prec = rat(prec)
    if prec < Fraction(1, 24):
        raise ValueError("prec must be at least 1/24")
    n_terms = max(_frac_ceil(prec - Fraction(1, 24)), 1)
    f = euler_product_ints(n_terms)
    return QSeries({24 * k + 1: c for k, c in enumerate(f) if c}, prec, 24)


def int_series_mul(a: list[int], b: list[int], n_terms: int) -> list[int]:
    out = [0] * n_terms
    for i, x in enumerate(a[:n_terms]):
        if x:
            lim = n_terms - i
            for j, y in enumerate(b[:lim]):
                if y:
                    out[i + j] += x * y
    return out


def int_series_inverse(a: list[int], n_terms: int) -> list[int]:
    """Inverse of an integer series with constant term +-1."""
    if a[0] not in (1, -1):
        raise ValueError("leading coefficient must be a unit")
    inv = [0] * n_terms
    inv[0] = a[0]
    for n in range(1, n_terms):
        s = 0
        for k in range(1, min(n, len(a) - 1) + 1):
            if a[k]:
                s += a[k] * inv[n - k]
        inv[n] = -s * a[0]
    return inv


class QZSeries:
    """Bivariate sum c(n, r) q^n zeta^r with n integral, known for n < prec."""

    __slots__ = ("coeffs", "prec", "n_min")

    def __init__(self, coeffs: Mapping[tuple[int, int], object] | None = None, prec: int = 0,
                 n_min: int = 0):
        self.prec = int(prec)
        self.n_min = int(n_min)
        data = {}
        for (n, r), c in (coeffs or {}).items():
            c = rat(c)
            if n < self.n_min:
                raise ValueError("exponent below the declared lower bound")
            if c and n < self.prec:
                data[(int(n), int(r))] = c
        self.coeffs = data

    def __getitem__(self, key) -> Fraction:
        n, r = key
        if n >= self.prec:
            raise IndexError(f"q-exponent {n} beyond precision {self.prec}")
        return self.coeffs.get((n, r), Fraction(0))

    def __add__(self, other: "QZSeries") -> "QZSeries":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return QZSeries(out, min(self.prec, other.prec), min(self.n_min, other.n_min))

    def scale(self, c) -> "QZSeries":
        c = rat(c)
        return QZSeries({k: c * v for k, v in self.coeffs.items()}, self.prec, self.n_min)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            other = QZSeries({(int(e), 0): c for e, c in other.items() if e.denominator == 1},
                             _frac_ceil(other.prec), 0)
        if not isinstance(other, QZSeries):
            return self.scale(other)
        va = min((n for n, _ in self.coeffs), default=self.prec)
        vb = min((n for n, _ in other.coeffs), default=other.prec)
        prec = min(self.prec + vb, other.prec + va)
        out: dict = {}
        for (n1, r1), c1 in self.coeffs.items():
            for (n2, r2), c2 in other.coeffs.items():
                n = n1 + n2
                if n < prec:
                    out[(n, r1 + r2)] = out.get((n, r1 + r2), 0) + c1 * c2
        return QZSeries(out, prec, self.n_min + other.n_min)

    def __eq__(self, other):
        if not isinstance(other, QZSeries):
            return NotImplemented
        return self.prec == other.prec and self.coeffs == other.coeffs

    def __repr__(self):
        return f"QZSeries({len(self.coeffs)} terms, O(q^{self.prec}))"


def monomial_is_positive(n: int, r: int, m: int) -> bool:
    """(n, r, m) > 0 means n > 0, or n = 0 and m > 0, or n = m = 0 and r < 0."""
    return n > 0 or (n == 0 and (m > 0 or (m == 0 and r < 0)))


class Q3Series:
    """Trivariate series offset * sum c(n, r, m) q1^n zeta^r q2^m.

    The stored part has 0 <= n <= A and 0 <= m <= B relative to the leading
    monomial ``offset``. When ``r_floor`` is set, coefficients are only known
    for relative zeta-degree r >= r_floor; the true series may continue
    infinitely in zeta^-1 below it.
    """

    __slots__ = ("coeffs", "A", "B", "r_floor", "offset")

    def __init__(self, coeffs: Mapping[tuple[int, int, int], object] | None, A: int, B: int,
                 r_floor: int | None = None, offset=(0, 0, 0)):
        self.A, self.B = int(A), int(B)
        self.r_floor = None if r_floor is None else int(r_floor)
        self.offset = tuple(rat(x) for x in offset)
        data = {}
        for (n, r, m), c in (coeffs or {}).items():
            if n < 0 or m < 0:
                raise ValueError("relative q-exponents must be nonnegative")
            c = rat(c)
            if c and n <= self.A and m <= self.B and (self.r_floor is None or r >= self.r_floor):
                data[(int(n), int(r), int(m))] = c
        self.coeffs = data

    @classmethod
    def one(cls, A: int, B: int) -> "Q3Series":
        return cls({(0, 0, 0): 1}, A, B)

    def known(self, n: int, r: int, m: int) -> bool:
        return 0 <= n <= self.A and 0 <= m <= self.B and (self.r_floor is None or r >= self.r_floor)

    def __getitem__(self, key) -> Fraction:
        """Coefficient at an absolute exponent (n, r, m)."""
        n, r, m = (k - o for k, o in zip(key, self.offset))
        if not self.known(n, r, m):
            raise IndexError(f"coefficient {key} outside the known window")
        return self.coeffs.get((n, r, m), Fraction(0))

    def _max_r(self) -> int:
        return max((r for _, r, _ in self.coeffs), default=0)

    def __mul__(self, other):
        if not isinstance(other, Q3Series):
            c = rat(other)
            return Q3Series({k: c * v for k, v in self.coeffs.items()}, self.A, self.B,
                            self.r_floor, self.offset)
        vna = min((n for n, _, _ in self.coeffs), default=self.A + 1)
        vnb = min((n for n, _, _ in other.coeffs), default=other.A + 1)
        vma = min((m for _, _, m in self.coeffs), default=self.B + 1)
        vmb = min((m for _, _, m in other.coeffs), default=other.B + 1)
        A = min(self.A + vnb, other.A + vna)
        B = min(self.B + vmb, other.B + vma)
        floors = []
        if self.r_floor is not None:
            floors.append(self.r_floor + other._max_r())
        if other.r_floor is not None:
            floors.append(other.r_floor + self._max_r())
        floor = max(floors) if floors else None
        out: dict = {}
        bitems = list(other.coeffs.items())
        for (n1, r1, m1), c1 in self.coeffs.items():
            for (n2, r2, m2), c2 in bitems:
                n, m = n1 + n2, m1 + m2
                if n > A or m > B:
                    continue
                key = (n, r1 + r2, m)
                out[key] = out.get(key, 0) + c1 * c2
        offset = tuple(a + b for a, b in zip(self.offset, other.offset))
        return Q3Series(out, A, B, floor, offset)

    __rmul__ = __mul__

    def __add__(self, other: "Q3Series") -> "Q3Series":
        if self.offset != other.offset:
            raise ValueError("addition needs a common leading monomial")
        floors = [f for f in (self.r_floor, other.r_floor) if f is not None]
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return Q3Series(out, min(self.A, other.A), min(self.B, other.B),
                        max(floors) if floors else None, self.offset)

    def __eq__(self, other):
        if not isinstance(other, Q3Series):
            return NotImplemented
        return (self.A, self.B, self.r_floor, self.offset, self.coeffs) == \
            (other.A, other.B, other.r_floor, other.offset, other.coeffs)

    def __repr__(self):
        return (f"Q3Series({len(self.coeffs)} terms, offset={self.offset}, A={self.A}, "
                f"B={self.B}, r_floor={self.r_floor})")


def default_zeta_floor(factors, A: int, B: int) -> int:
    pure = sum(-r * max(_frac_ceil(abs(rat(c))), 1)
               for (n, r, m), c in factors if n == 0 and m == 0)
    return -(A + B) - pure


def series_log1p_product(factors, A: int, B: int, zeta_floor: int | None = None) -> Q3Series:
    """Expand prod (1 - x_i)^(c_i) as exp(sum c_i log(1 - x_i)).

    ``factors`` is a list of ((n, r, m), c). Terms with n > A or m > B are
    dropped. The output is exact for zeta-degree >= ``zeta_floor``; the
    default floor covers every term a pure zeta^-1 factor with a positive
    integral exponent can reach.
    """
    factors = [((int(n), int(r), int(m)), rat(c)) for (n, r, m), c in factors]
    for (n, r, m), _ in factors:
        if n < 0 or m < 0 or not monomial_is_positive(n, r, m):
            raise ValueError(f"monomial {(n, r, m)} is not positive; product does not converge")
    if zeta_floor is None:
        zeta_floor = default_zeta_floor(factors, A, B)
    # grading w = K(n + m) - r is positive on every factor monomial
    K = _grading_constant(factors)
    r_top = K * (A + B)
    work_floor = zeta_floor - r_top

    def in_window(n, r, m):
        return n <= A and m <= B and r >= work_floor

    log_terms: dict = {}
    for (n, r, m), c in factors:
        if not c:
            continue
        k = 1
        while in_window(k * n, k * r, k * m):
            key = (k * n, k * r, k * m)
            log_terms[key] = log_terms.get(key, 0) - c / k
            k += 1
    log_terms = {k: v for k, v in log_terms.items() if v}

    def weight(key):
        n, r, m = key
        return K * (n + m) - r

    # exp via the grading derivation: w(a) F_a = sum_{b+g=a} w(b) L_b F_g
    by_weight = sorted(log_terms.items(), key=lambda kv: weight(kv[0]))
    F = {(0, 0, 0): Fraction(1)}
    max_w = K * (A + B) - work_floor
    buckets: dict[int, list] = {0: [(0, 0, 0)]}
    for w in range(1, max_w + 1):
        # candidate monomials of weight w: sums of a log term and a known F term
        acc: dict = {}
        for key_l, val in by_weight:
            wl = weight(key_l)
            if wl > w:
                break
            for key_f in buckets.get(w - wl, ()):
                n = key_l[0] + key_f[0]
                r = key_l[1] + key_f[1]
                m = key_l[2] + key_f[2]
                if not in_window(n, r, m):
                    continue
                tgt = (n, r, m)
                acc[tgt] = acc.get(tgt, 0) + wl * val * F[key_f]
        new = []
        for tgt, s in acc.items():
            if s:
                F[tgt] = s / w
                new.append(tgt)
        if new:
            buckets[w] = new
    return Q3Series(F, A, B, zeta_floor)


def _grading_constant(factors) -> int:
    K = 1
    for (n, r, m), _ in factors:
        if n + m > 0:
            K = max(K, -(-(r + 1) // (n + m)))
    return K


def binomial_product_direct(factors, A: int, B: int, zeta_floor: int | None = None) -> Q3Series:
    """Reference: multiply binomial expansions of (1 - x)^c one factor at a time.

    Integer exponents only. Terms far below the zeta floor are cut at every
    step; the cut never reaches the reported window.
    """
    factors = [((int(n), int(r), int(m)), rat(c)) for (n, r, m), c in factors]
    if zeta_floor is None:
        zeta_floor = default_zeta_floor(factors, A, B)
    work_floor = zeta_floor - _grading_constant(factors) * (A + B)
    acc = {(0, 0, 0): 1}
    for (n, r, m), c in factors:
        if c.denominator != 1:
            raise ValueError("direct expansion needs integral exponents")
        c = int(c)
        terms = [(0, 0, 0, 1)]
        k, binom = 1, 1
        while k * n <= A and k * m <= B and k * r >= work_floor:
            if c >= 0 and k > c:
                break
            binom = binom * (c - k + 1) // k
            terms.append((k * n, k * r, k * m, binom * (-1) ** k))
            k += 1
        out: dict = {}
        for (a, b, d), v in acc.items():
            for dn, dr, dm, t in terms:
                key = (a + dn, b + dr, d + dm)
                if key[0] > A or key[2] > B or key[1] < work_floor:
                    continue
                out[key] = out.get(key, 0) + v * t
        acc = {k_: v for k_, v in out.items() if v}
    return Q3Series(acc, A, B, zeta_floor)
