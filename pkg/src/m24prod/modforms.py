"""Spaces M_k(Gamma0(N)) for k in {0, 2}: echelon bases, cusps, level
embeddings and projected cusp expansions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import dataio
from .exactseries import QSeries, divisors, rat

SUPPORTED_LEVELS = (1, 2, 3, 4, 5, 6, 7, 8, 11, 23)
BASIS_DIMS_WEIGHT2 = {1: 0, 2: 1, 3: 1, 4: 2, 5: 1, 6: 3, 7: 1, 8: 3, 11: 2, 23: 3}
INFINITY = "Infinity"


def gamma0_index(N: int) -> int:
    """[SL2(Z) : Gamma0(N)] = N prod_{p | N} (1 + 1/p)."""
    idx, m, p = Fraction(N), N, 2
    while p * p <= m:
        if m % p == 0:
            idx *= Fraction(p + 1, p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        idx *= Fraction(m + 1, m)
    return int(idx)


def sturm_bound(k: int, N: int) -> int:
    """Coefficients q^0 .. q^bound determine a weight-k form on Gamma0(N)."""
    return k * gamma0_index(N) // 12


def dimension(k: int, N: int) -> int:
    if k == 0:
        return 1
    if k == 2:
        try:
            return BASIS_DIMS_WEIGHT2[N]
        except KeyError:
            raise ValueError(f"unsupported level {N}") from None
    raise ValueError(f"unsupported weight {k}")


@dataclass(frozen=True)
class CuspData:
    """A cusp f/e of Gamma0(N) with its width h and N_c = N / e.

    Infinity is stored with e = N (it is Gamma0(N)-equivalent to 1/N) and
    reports (1, 0) as its fraction.
    """

    label: str
    f: int
    e: int
    width: int
    N_c: int

    @property
    def is_infinity(self) -> bool:
        return self.label == INFINITY

    @property
    def fraction(self) -> tuple[int, int]:
        return (1, 0) if self.is_infinity else (self.f, self.e)

    def gamma(self) -> tuple[int, int, int, int]:
        """A matrix in SL2(Z) mapping infinity to this cusp."""
        if self.is_infinity:
            return (1, 0, 0, 1)
        f, e = self.f, self.e
        if f == 0:
            return (0, -1, 1, 0)
        # (f b; e d) with f d - b e = 1
        for d in range(1, e + 1):
            if (f * d - 1) % e == 0:
                return (f, (f * d - 1) // e, e, d)
        raise ArithmeticError("no completion to SL2(Z)")

    def slash_gamma(self) -> tuple[int, int, int, int]:
        """The lower-triangular (1 0; e 1) used for cusps 1/e, else gamma()."""
        if not self.is_infinity and self.f == 1:
            return (1, 0, self.e, 1)
        if not self.is_infinity and self.e == 1:
            return (1, 0, 1, 1)
        return self.gamma()


def _cusp_label(f: int, e: int) -> str:
    return "0" if e == 1 else f"{f}/{e}"


@lru_cache(maxsize=None)
def _cusp_set(N: int) -> tuple[CuspData, ...]:
    cusps = []
    for e in divisors(N):
        g = gcd(e, N // e)
        h = N // gcd(e * e, N)
        if e == N:
            cusps.append(CuspData(INFINITY, 1, N, h, 1))
            continue
        seen = set()
        f = 0
        while len(seen) < _euler_phi(g):
            if gcd(f, e) == 1 and f % g not in seen:
                seen.add(f % g)
                cusps.append(CuspData(_cusp_label(f, e), f, e, h, N // e))
            f += 1
    cusps.sort(key=lambda c: (not c.is_infinity, c.e, c.f))
    return tuple(cusps)


def _euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def cusp_set(N: int) -> list[CuspData]:
    """Cusp representatives of Gamma0(N), infinity first."""
    if N not in SUPPORTED_LEVELS:
        raise ValueError(f"unsupported level {N}")
    return list(_cusp_set(N))


def find_cusp(N: int, cusp) -> CuspData:
    if isinstance(cusp, CuspData):
        return cusp
    label = str(cusp)
    if label in ("oo", "inf", "infinity", "1/0"):
        label = INFINITY
    for c in cusp_set(N):
        if c.label == label:
            return c
    raise ValueError(f"no cusp {cusp!r} at level {N}")


@dataclass(frozen=True)
class ModFormVec:
    """A form in M_k(Gamma0(N)) as coordinates in the echelon basis."""

    k: int
    N: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(rat(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != dimension(self.k, self.N):
            raise ValueError(f"expected {dimension(self.k, self.N)} coordinates for "
                             f"M_{self.k}({self.N}), got {len(coords)}")

    @classmethod
    def zero(cls, k: int, N: int) -> "ModFormVec":
        return cls(k, N, (0,) * dimension(k, N))

    def __add__(self, other: "ModFormVec") -> "ModFormVec":
        if (self.k, self.N) != (other.k, other.N):
            raise ValueError("cannot add forms in different spaces; embed first")
        return ModFormVec(self.k, self.N, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "ModFormVec":
        c = rat(c)
        return ModFormVec(self.k, self.N, tuple(c * a for a in self.coords))

    __rmul__ = scale

    def __mul__(self, c):
        return self.scale(c)

    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def constant_term(self) -> Fraction:
        """Coordinate 1 is the q^0 coefficient (echelon pivots sit at 0..d-1)."""
        return self.coords[0] if self.coords else Fraction(0)

    def q_expansion(self, n_terms: int) -> QSeries:
        basis = echelon_basis(self.k, self.N, n_terms)
        out = QSeries({}, n_terms)
        for c, f in zip(self.coords, basis):
            if c:
                out = out + f.scale(c)
        return out

    def q_coeffs(self, n_terms: int) -> list[Fraction]:
        return q_coeff_lists(self, n_terms)

    def __str__(self):
        body = ", ".join(str(c) for c in self.coords)
        return f"M_{self.k}({self.N})[{body}]"


def q_coeff_lists(v: ModFormVec, n_terms: int) -> list[Fraction]:
    """Plain list of the first n_terms q-coefficients of v."""
    out = [Fraction(0)] * n_terms
    if v.k == 0:
        out[0] = v.coords[0]
        return out
    for c, row in zip(v.coords, basis_rows(v.k, v.N, n_terms)):
        if c:
            for i, x in enumerate(row):
                if x:
                    out[i] += c * x
    return out


def basis_rows(k: int, N: int, n_terms: int) -> list[tuple[Fraction, ...]]:
    if N not in SUPPORTED_LEVELS:
        raise ValueError(f"unsupported level {N}")
    if k == 0:
        return [(Fraction(1),) + (Fraction(0),) * (n_terms - 1)]
    rows = dataio.load().bases[(k, N)] if dimension(k, N) else []
    if rows and n_terms > len(rows[0]):
        raise ValueError(f"requested {n_terms} terms but the embedded basis has {len(rows[0])}")
    return [tuple(r[:n_terms]) for r in rows]


def echelon_basis(k: int, N: int, prec: int) -> list[QSeries]:
    """Echelon basis of M_k(Gamma0(N)) truncated at q^prec."""
    return [QSeries.from_list(r, prec) for r in basis_rows(k, N, prec)]


def basis_length() -> int:
    return dataio.load().basis_terms


def embed_level(v: ModFormVec, N: int) -> ModFormVec:
    """Coordinates at level N (a multiple of v.N) of the same q-expansion."""
    if N % v.N:
        raise ValueError(f"level {v.N} does not divide {N}")
    if N == v.N:
        return v
    if v.k == 0:
        return ModFormVec(0, N, v.coords)
    L = basis_length()
    f = q_coeff_lists(v, L)
    d = dimension(v.k, N)
    coords = f[:d]
    g = q_coeff_lists(ModFormVec(v.k, N, tuple(coords)), L)
    if f != g:
        raise ValueError(f"q-expansion of {v} is not in the span of the level-{N} basis")
    return ModFormVec(v.k, N, tuple(coords))


def projection_matrix(k: int, N: int, cusp) -> list[list[Fraction]]:
    c = find_cusp(N, cusp)
    d = dimension(k, N)
    if k == 0 or c.is_infinity:
        return [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    try:
        return [list(r) for r in dataio.load().projections[(k, N, c.label)]]
    except KeyError:
        raise KeyError(f"no projection matrix for (k={k}, N={N}, cusp={c.label})") from None


def pi_fe(k: int, N: int, cusp, v: ModFormVec) -> ModFormVec:
    """Projected cusp expansion of v at the given cusp, in echelon coordinates."""
    if (v.k, v.N) != (k, N):
        raise ValueError(f"vector lives in M_{v.k}({v.N}), not M_{k}({N})")
    M = projection_matrix(k, N, cusp)
    coords = tuple(sum((M[i][j] * v.coords[j] for j in range(len(v.coords))), Fraction(0))
                   for i in range(len(v.coords)))
    return ModFormVec(k, N, coords)
