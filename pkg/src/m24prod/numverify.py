"""Floating-point checks of the embedded bases and projection matrices.

verify_projection compares the average (1/h) sum_{j mod h} (f|_k gamma)(tau + j)
with the claimed projected expansion. Points gamma(tau + j) can sit close to
the real line; f is then evaluated after moving the point up by an element of
Gamma0(N) (which verify_modularity checks separately).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import gcd

import numpy as np

from .exactseries import QSeries
from .modforms import SUPPORTED_LEVELS, basis_rows, cusp_set, dimension, find_cusp, projection_matrix

DEFAULT_TERMS = 128
DEFAULT_TOL = 1e-8
MIN_HEIGHT = 0.03
SAMPLE_TAUS = (complex(0.1, 1.0), complex(-0.23, 0.8), complex(0.37, 1.3))


@dataclass(frozen=True)
class Residual:
    k: int
    N: int
    what: str
    value: float

    def ok(self, tol: float) -> bool:
        return self.value < tol


def eval_series(f: QSeries, tau: complex, n_terms: int | None = None) -> complex:
    """sum c(e) exp(2 pi i e tau) over stored exponents (below n_terms if given)."""
    total = 0j
    for e, c in f.items():
        if n_terms is not None and e >= n_terms:
            continue
        total += float(c) * cmath.exp(2j * math.pi * float(e) * tau)
    return total


def _coeff_array(k: int, N: int, n_terms: int) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in basis_rows(k, N, n_terms)])


def _eval_rows(rows: np.ndarray, tau: complex) -> np.ndarray:
    q = np.exp(2j * np.pi * tau * np.arange(rows.shape[1]))
    return rows @ q


def _egcd(a: int, b: int):
    if b == 0:
        return a, 1, 0
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def raise_point(w: complex, N: int, c_max: int = 64):
    """(a, b, c, d) in Gamma0(N) maximizing Im of (a w + b)/(c w + d) over small c."""
    best, best_h = (1, 0, 0, 1), w.imag
    for kk in range(1, c_max + 1):
        c = N * kk
        d0 = round(-c * w.real)
        for d in range(d0 - 2, d0 + 3):
            if gcd(c, d) != 1:
                continue
            h = w.imag / abs(c * w + d) ** 2
            if h > best_h + 1e-15:
                _, x, y = _egcd(d, c)  # x d + y c = 1
                best, best_h = (x, -y, c, d), h
    return best


def _mobius(g, z: complex) -> complex:
    a, b, c, d = g
    return (a * z + b) / (c * z + d)


def eval_basis_at(k: int, N: int, rows: np.ndarray, w: complex) -> np.ndarray:
    """Values of all basis forms at w, using Gamma0(N)-modularity to gain height."""
    g = raise_point(w, N)
    a, b, c, d = g
    w2 = _mobius(g, w)
    if w2.imag < MIN_HEIGHT:
        raise ValueError(f"point {w} cannot be raised above height {MIN_HEIGHT}")
    # f(g w) = (c w + d)^k f(w)
    return _eval_rows(rows, w2) / (c * w + d) ** k


def slash_values(k: int, N: int, rows: np.ndarray, gamma, tau: complex) -> np.ndarray:
    a, b, c, d = gamma
    return eval_basis_at(k, N, rows, _mobius(gamma, tau)) / (c * tau + d) ** k


def verify_projection(k: int, N: int, cusp, taus=SAMPLE_TAUS, n_terms: int = DEFAULT_TERMS) -> float:
    """Max deviation between averaged slashes and the claimed projected expansions."""
    c = find_cusp(N, cusp)
    d = dimension(k, N)
    if d == 0:
        return 0.0
    rows = _coeff_array(k, N, n_terms)
    M = np.array([[float(x) for x in r] for r in projection_matrix(k, N, c)])
    if c.is_infinity:
        # identity path: the claimed image is the form itself
        return float(np.abs(M - np.eye(d)).max())
    gamma = c.slash_gamma()
    worst = 0.0
    for tau in taus:
        avg = np.zeros(d, dtype=complex)
        for j in range(c.width):
            avg += slash_values(k, N, rows, gamma, tau + j)
        avg /= c.width
        claimed = M.T @ _eval_rows(rows, tau)
        worst = max(worst, float(np.abs(avg - claimed).max()))
    return worst


def gamma0_samples(N: int, count: int = 3, seed: int = 0):
    """Deterministic elements of Gamma0(N) with small entries and c != 0."""
    rng = np.random.default_rng(seed + N)
    out = []
    while len(out) < count:
        c = N * int(rng.integers(1, 3))
        d = int(rng.integers(-7, 8))
        if gcd(c, d) != 1:
            continue
        _, x, y = _egcd(d, c)
        out.append((x, -y, c, d))
    return out


def verify_modularity(k: int, N: int, gammas=None, n_terms: int = DEFAULT_TERMS) -> float:
    """Max |f(g tau) - (c tau + d)^k f(tau)| over basis forms, with tau balanced for g."""
    if dimension(k, N) == 0:
        return 0.0
    rows = _coeff_array(k, N, n_terms)
    gammas = gamma0_samples(N) if gammas is None else gammas
    worst = 0.0
    for g in gammas:
        a, b, c, d = g
        for shift in (0.0, 0.11, -0.17):
            # tau = (-d + i) / c + shift/c puts tau and g tau at height about 1/|c|
            tau = complex(-d / c + shift / c, 1 / abs(c)) if c else complex(shift, 1.0)
            lhs = _eval_rows(rows, _mobius(g, tau))
            rhs = (c * tau + d) ** k * _eval_rows(rows, tau)
            worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def projection_targets():
    """Every (k, N, cusp label) with an embedded projection matrix, levels in order."""
    out = []
    for N in SUPPORTED_LEVELS:
        if dimension(2, N) == 0:
            continue
        for c in cusp_set(N):
            try:
                projection_matrix(2, N, c)
            except KeyError:
                continue
            out.append((2, N, c.label))
    return out


def run_all(n_terms: int = DEFAULT_TERMS) -> list[Residual]:
    res = []
    for k, N, label in projection_targets():
        res.append(Residual(k, N, f"projection {label}", verify_projection(k, N, label, n_terms=n_terms)))
    for N in SUPPORTED_LEVELS:
        if dimension(2, N):
            res.append(Residual(2, N, "modularity", verify_modularity(2, N, n_terms=n_terms)))
    return res
