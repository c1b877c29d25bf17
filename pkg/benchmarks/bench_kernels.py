"""Time the numba and numpy expansion backends on the same jobs.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each job is run once per backend before timing (numba compiles on first use)
and the exact outputs are checked to agree.
"""

import argparse
import time

import numpy as np

from m24prod import kernels
from m24prod.borcherds import minimal_power
from m24prod.expander import expand_borcherds_side, expand_phi_power
from m24prod.solver import published_rows


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def identity_job(label, A, B, allow_rational=False):
    rows = published_rows(label)
    p = minimal_power(rows)

    def run(backend):
        return (expand_phi_power(label, p, A, B, allow_rational=allow_rational, backend=backend),
                expand_borcherds_side(rows, p, A, B, allow_rational=allow_rational, backend=backend))
    return run


def synthetic_job(shape=(12, 12, 80), n_factors=40, seed=1):
    rng = np.random.default_rng(seed)
    prime = 2147483647
    base = rng.integers(0, prime, size=shape, dtype=np.int64)
    jobs = []
    for _ in range(n_factors):
        a, b = int(rng.integers(0, 3)), int(rng.integers(1, 3))
        s = int(rng.integers(-a - b, a + b + 1))
        t = rng.integers(0, prime, size=8, dtype=np.int64)
        t[0] = 1
        jobs.append((a, s, b, t))

    def run(backend):
        F = base.copy()
        for a, s, b, t in jobs:
            kernels.apply_factor_mod(F, a, s, b, t, prime, backend)
        return F
    return run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    jobs = [
        ("8A identity (3, 16)", identity_job("8A", 3, 16)),
        ("4C identity (3, 16)", identity_job("4C", 3, 16)),
        ("23AB identity (3, 8), rational", identity_job("23AB", 3, 8, allow_rational=True)),
        ("synthetic 12x12x80, 40 factors", synthetic_job()),
    ]

    print(f"{'job':34s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    for name, run in jobs:
        run("numba")  # compile
        t_nb, out_nb = best_of(lambda: run("numba"), args.repeat)
        t_np, out_np = best_of(lambda: run("numpy"), args.repeat)
        same = np.array_equal(out_nb, out_np) if isinstance(out_nb, np.ndarray) else out_nb == out_np
        if not same:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:34s} {t_nb:10.3f} {t_np:10.3f} {t_np / t_nb:8.1f}")


if __name__ == "__main__":
    main()
