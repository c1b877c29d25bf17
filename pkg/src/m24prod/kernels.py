"""Dense kernels for multiplying a truncated trivariate series by (1 - x)^E.

The series is an array F[n, m, j] over q1^n q2^m zeta^(j + r_lo). A factor
monomial x = q1^a zeta^s q2^b acts through its binomial coefficients t_k of
(1 - x)^E. Updates run in place: for (a, b) != (0, 0) cells are visited with
(n, m) descending, so every source cell is still unmodified; pure zeta^s
factors with s < 0 read from higher zeta degree and run with j ascending.

Two backends share this interface: numba ``@njit`` loops (default) and a
numpy version vectorized over whole planes. Set ``M24PROD_BACKEND=numpy`` to
force the latter.
"""

from __future__ import annotations

import os

import numpy as np

BACKEND_ENV = "M24PROD_BACKEND"

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None


def backend_name() -> str:
    want = os.environ.get(BACKEND_ENV, "numba").strip().lower()
    if want not in ("numba", "numpy"):
        raise ValueError(f"{BACKEND_ENV} must be 'numba' or 'numpy', not {want!r}")
    if want == "numba" and njit is None:
        return "numpy"
    return want


# numpy backend

def _shift_r(src: np.ndarray, sh: int) -> np.ndarray:
    """out[..., j] = src[..., j - sh], zero where the source is outside."""
    out = np.zeros_like(src)
    nR = src.shape[-1]
    if sh >= 0:
        if sh < nR:
            out[..., sh:] = src[..., :nR - sh]
    elif -sh < nR:
        out[..., :nR + sh] = src[..., -sh:]
    return out


def _apply_np(F, a, s, b, t, p):
    nA, nB, nR = F.shape
    kmax = len(t) - 1
    if a > 0:
        for n in range(nA - 1, 0, -1):
            acc = F[n].copy()
            for k in range(1, kmax + 1):
                n0 = n - k * a
                if n0 < 0:
                    break
                if not t[k]:
                    continue
                src = F[n0]
                if k * b:
                    src = np.concatenate([np.zeros((k * b, nR), F.dtype), src[:nB - k * b]]) \
                        if k * b < nB else np.zeros_like(src)
                term = _shift_r(src, k * s)
                acc = acc + t[k] * term
                if p:
                    acc %= p
            F[n] = acc
    elif b > 0:
        for m in range(nB - 1, 0, -1):
            acc = F[:, m].copy()
            for k in range(1, kmax + 1):
                m0 = m - k * b
                if m0 < 0:
                    break
                if not t[k]:
                    continue
                acc = acc + t[k] * _shift_r(F[:, m0], k * s)
                if p:
                    acc %= p
            F[:, m] = acc
    else:
        step = -s
        for j in range(nR):
            acc = F[:, :, j].copy()
            for k in range(1, kmax + 1):
                src = j + k * step
                if src >= nR:
                    break
                if t[k]:
                    acc = acc + t[k] * F[:, :, src]
                    if p:
                        acc %= p
            F[:, :, j] = acc


# numba backend

if njit is not None:
    @njit(cache=True)
    def _apply_nb_mod(F, a, s, b, t, p):
        nA, nB, nR = F.shape
        kmax = t.shape[0] - 1
        if a > 0 or b > 0:
            for n in range(nA - 1, -1, -1):
                for m in range(nB - 1, -1, -1):
                    for k in range(1, kmax + 1):
                        n0 = n - k * a
                        m0 = m - k * b
                        if n0 < 0 or m0 < 0:
                            break
                        tk = t[k]
                        if tk == 0:
                            continue
                        sh = k * s
                        lo = max(0, sh)
                        hi = min(nR, nR + sh)
                        for j in range(lo, hi):
                            F[n, m, j] = (F[n, m, j] + tk * F[n0, m0, j - sh]) % p
        else:
            step = -s
            for n in range(nA):
                for m in range(nB):
                    for j in range(nR):
                        acc = F[n, m, j]
                        for k in range(1, kmax + 1):
                            src = j + k * step
                            if src >= nR:
                                break
                            acc = (acc + t[k] * F[n, m, src]) % p
                        F[n, m, j] = acc

    @njit(cache=True)
    def _apply_nb_float(F, a, s, b, t):
        nA, nB, nR = F.shape
        kmax = t.shape[0] - 1
        if a > 0 or b > 0:
            for n in range(nA - 1, -1, -1):
                for m in range(nB - 1, -1, -1):
                    for k in range(1, kmax + 1):
                        n0 = n - k * a
                        m0 = m - k * b
                        if n0 < 0 or m0 < 0:
                            break
                        tk = t[k]
                        if tk == 0.0:
                            continue
                        sh = k * s
                        lo = max(0, sh)
                        hi = min(nR, nR + sh)
                        for j in range(lo, hi):
                            F[n, m, j] += tk * F[n0, m0, j - sh]
        else:
            step = -s
            for n in range(nA):
                for m in range(nB):
                    for j in range(nR):
                        acc = F[n, m, j]
                        for k in range(1, kmax + 1):
                            src = j + k * step
                            if src >= nR:
                                break
                            acc += t[k] * F[n, m, src]
                        F[n, m, j] = acc


def _check(a: int, s: int, b: int):
    if a < 0 or b < 0 or (a == 0 and b == 0 and s >= 0):
        raise ValueError(f"monomial {(a, s, b)} is not a positive factor monomial")


def apply_factor_mod(F: np.ndarray, a: int, s: int, b: int, t: np.ndarray, p: int,
                     backend: str | None = None) -> None:
    """F <- F * sum_k t[k] x^k modulo p, in place (int64 arrays, t[0] = 1)."""
    _check(a, s, b)
    if (backend or backend_name()) == "numba":
        _apply_nb_mod(F, a, s, b, t, p)
    else:
        _apply_np(F, a, s, b, t, p)


def apply_factor_float(F: np.ndarray, a: int, s: int, b: int, t: np.ndarray,
                       backend: str | None = None) -> None:
    """F <- F * sum_k t[k] x^k in float64, in place."""
    _check(a, s, b)
    if (backend or backend_name()) == "numba":
        _apply_nb_float(F, a, s, b, t)
    else:
        _apply_np(F, a, s, b, t, 0)
