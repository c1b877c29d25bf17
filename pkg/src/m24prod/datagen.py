"""Regenerate the embedded data file.

Bases come from independent constructions:

* Eisenstein span {E2(tau) - t E2(t tau) : 1 < t | N};
* eta(tau)^2 eta(11 tau)^2 at level 11;
* products of the two weight-1 theta series of discriminant -23 at level 23.

Each space is row-reduced to echelon form. Projection matrices for levels
2..23 are the published ones; level 6 (used only by the 6A probe) is
computed with the exact Eisenstein cusp oracle.

    python -m m24prod.datagen            # rewrite the shipped file
    python -m m24prod.datagen --check    # exit 1 if it would change
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import dataio
from .eisenstein import eisenstein_generators, projected_eisenstein_slash
from .exactseries import euler_product_ints, int_series_mul, rat_str, sigma1
from .linalg import rref

BASIS_TERMS = 600
BASIS_LEVELS = (2, 3, 4, 5, 6, 7, 8, 11, 23)
F = Fraction

PUBLISHED_PROJECTIONS = {
    (2, 0): [["-1/2"]],
    (3, 0): [["-1/3"]],
    (4, 0): [["-1/8", "-1/64"], ["-3", "-3/8"]],
    (4, 2): [["-1/2", "1/16"], ["12", "1/2"]],
    (5, 0): [["-1/5"]],
    (7, 0): [["-1/7"]],
    (8, 0): [["-1/32", "-1/64", "-1/256"], ["-3/4", "-3/8", "-3/32"], ["-3/4", "-3/8", "-3/32"]],
    (8, 2): [["-1/8", "1/16", "-1/64"], ["3", "1/2", "3/8"], ["-3", "3/2", "-3/8"]],
    (8, 4): [["-1/2", "0", "1/16"], ["0", "1", "0"], ["12", "0", "1/2"]],
    (11, 0): [["-1/11", "0"], ["0", "-1/11"]],
    (23, 0): [["-1/23", "0", "0"], ["0", "-1/23", "0"], ["0", "0", "-1/23"]],
}

# label: (order, chi, level of tdT, tdT coordinates, N_g, k_g, prime powers)
CLASS_TABLE = {
    "1A": (1, "24", 1, [], 1, "10", {}),
    "2A": (2, "8", 2, ["4/3"], 2, "6", {2: "1A"}),
    "2B": (2, "0", 4, ["2", "-16"], 4, "4", {2: "1A"}),
    "3A": (3, "6", 3, ["3/2"], 3, "4", {3: "1A"}),
    "3B": (3, "0", 3, ["2"], 9, "2", {3: "1A"}),
    "4A": (4, "0", 8, ["2", "0", "-16"], 8, "2", {2: "2A"}),
    "4B": (4, "4", 4, ["5/3", "8"], 4, "3", {2: "2A"}),
    "4C": (4, "0", 4, ["2", "-8"], 16, "1", {2: "2B"}),
    "5A": (5, "4", 5, ["5/3"], 5, "2", {5: "1A"}),
    "7AB": (7, "3", 7, ["7/4"], 7, "1", {7: "1A"}),
    "8A": (8, "2", 8, ["11/6", "4", "12"], 8, "1/2", {2: "4A"}),
    "11A": (11, "2", 11, ["11/6", "0"], 11, "0", {11: "1A"}),
    "23AB": (23, "1", 23, ["23/12", "46/11", "-23/11"], 23, "-1", {23: "1A"}),
}

# label: [(N, n, tc0, tc2 coordinates)], the published products of rescaled lifts
PUBLISHED_SOLUTIONS = {
    "1A": [(1, 1, "24", [])],
    "2A": [(2, 1, "8", ["4/3"])],
    "2B": [(1, 1, "-12", []), (2, 1, "12", ["0"]), (4, 1, "0", ["2", "-16"])],
    "3A": [(3, 1, "6", ["3/2"])],
    "3B": [(1, 1, "-8", []), (3, 1, "8", ["2"])],
    "4A": [(1, 1, "-6", []), (2, 1, "2", ["-2/3"]), (4, 1, "4", ["2/3", "16"]),
           (8, 1, "0", ["2", "0", "-16"])],
    "4B": [(4, 1, "4", ["5/3", "8"])],
    "4C": [(1, 1, "-3", []), (2, 1, "-3", ["1/4"]), (4, 1, "6", ["7/4", "-14"]),
           (4, 2, "0", ["1", "-8"])],
    "5A": [(5, 1, "4", ["5/3"])],
    "7AB": [(7, 1, "3", ["7/4"])],
    "8A": [(1, 1, "3/2", []), (2, 1, "-5/2", ["1/3"]), (4, 1, "1", ["1/6", "-12"]),
           (8, 1, "2", ["4/3", "8", "0"]), (8, 2, "0", ["1", "0", "-8"])],
    "11A": [(11, 1, "2", ["11/6", "0"])],
    "23AB": [(23, 1, "1", ["23/12", "46/11", "-23/11"])],
}

# T~_6A = -1/6 phi2^(2) - 1/2 phi2^(3) + 5/2 phi2^(6), phi2^(N) = (N E2(N.) - E2)/(N - 1)
PROBE_6A_TDT = {2: F(-1, 6), 3: F(-1, 2), 6: F(5, 2)}


def e2_ints(n: int) -> list[int]:
    return [1] + [-24 * sigma1(k) for k in range(1, n)]


def rescaled(f: list[int], t: int) -> list[int]:
    out = [0] * len(f)
    for i in range(0, (len(f) + t - 1) // t):
        out[i * t] = f[i]
    return out


def eisenstein_combo_series(combo: dict[int, Fraction], n: int) -> list[Fraction]:
    e2 = e2_ints(n)
    out = [F(0)] * n
    for t, a in combo.items():
        for i, x in enumerate(rescaled(e2, t)):
            if x:
                out[i] += a * x
    return out


def eta_product_level11(n: int) -> list[int]:
    """eta(tau)^2 eta(11 tau)^2 = q prod (1-q^k)^2 (1-q^{11k})^2."""
    e = euler_product_ints(n, 2)
    f = int_series_mul(e, rescaled(e, 11), n)
    return [0] + f[:n - 1]


def theta_series(a: int, b: int, c: int, n: int) -> list[int]:
    """Theta series of the positive definite form a x^2 + b x y + c y^2."""
    out = [0] * n
    disc = 4 * a * c - b * b
    ymax = int((4 * a * n / disc) ** 0.5) + 2
    for y in range(-ymax, ymax + 1):
        xmax = int((n / a) ** 0.5 + abs(b * y) / (2 * a)) + 2
        for x in range(-xmax, xmax + 1):
            v = a * x * x + b * x * y + c * y * y
            if v < n:
                out[v] += 1
    return out


def generators(N: int, n: int) -> list[list[Fraction]]:
    if N == 23:
        t1, t2 = theta_series(1, 1, 6, n), theta_series(2, 1, 3, n)
        prods = [int_series_mul(t1, t1, n), int_series_mul(t1, t2, n), int_series_mul(t2, t2, n)]
        return [[F(x) for x in p] for p in prods]
    rows = [eisenstein_combo_series(c, n) for c in eisenstein_generators(N)]
    if N == 11:
        rows.append([F(x) for x in eta_product_level11(n)])
    return rows


def echelon_rows(N: int, n: int = BASIS_TERMS) -> list[list[Fraction]]:
    R, pivots = rref(generators(N, n))
    if pivots != list(range(len(pivots))):
        raise ArithmeticError(f"level {N}: pivots {pivots} are not initial")
    return R


def eisenstein_echelon(N: int, n: int):
    """Echelon basis of an Eisenstein-only level together with the E2 combinations."""
    divs = [t for t in range(1, N + 1) if N % t == 0]
    gens = eisenstein_generators(N)
    rows = [eisenstein_combo_series(c, n) + [c.get(t, F(0)) for t in divs] for c in gens]
    R, pivots = rref(rows, ncols=n)
    if pivots != list(range(len(gens))):
        raise ArithmeticError(f"level {N} is not spanned by Eisenstein series")
    basis = [r[:n] for r in R]
    combos = [{t: r[n + i] for i, t in enumerate(divs) if r[n + i]} for r in R]
    return basis, combos


def eisenstein_projection_matrix(N: int, gamma, n_check: int = 40):
    """Projection matrix of an Eisenstein-only level, columns = images of basis vectors."""
    basis, combos = eisenstein_echelon(N, n_check)
    d = len(basis)
    cols = []
    for combo in combos:
        f = projected_eisenstein_slash(combo, gamma, n_check).to_list(n_check)
        coords = f[:d]
        recon = [sum((coords[i] * basis[i][j] for i in range(d)), F(0)) for j in range(n_check)]
        if recon != f:
            raise ArithmeticError("projected expansion left the space")
        cols.append(coords)
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def probe_6a_coords() -> list[Fraction]:
    n = 16
    combo: dict[int, Fraction] = {}
    for N, a in PROBE_6A_TDT.items():
        combo[N] = combo.get(N, 0) + a * F(N, N - 1)
        combo[1] = combo.get(1, 0) - a * F(1, N - 1)
    f = eisenstein_combo_series(combo, n)
    basis, _ = eisenstein_echelon(6, n)
    coords = f[:3]
    recon = [sum((coords[i] * basis[i][j] for i in range(3)), F(0)) for j in range(n)]
    if recon != f:
        raise ArithmeticError("6A twining data is not a level-6 form")
    return coords


def build() -> dict:
    bases = {f"2:{N}": [[rat_str(x) for x in row] for row in echelon_rows(N)]
             for N in BASIS_LEVELS}
    projections = {}
    for (N, e), mat in PUBLISHED_PROJECTIONS.items():
        label = "0" if e == 0 else f"1/{e}"
        projections[f"2:{N}:{label}"] = mat
    for e, label in ((1, "0"), (2, "1/2"), (3, "1/3")):
        mat = eisenstein_projection_matrix(6, (1, 0, e, 1))
        projections[f"2:6:{label}"] = [[rat_str(x) for x in row] for row in mat]
    classes = {}
    for label, (order, chi, lvl, tdt, Ng, kg, powers) in CLASS_TABLE.items():
        classes[label] = {"order": order, "chi": chi, "tdT_level": lvl, "tdT": tdt,
                          "N_g": Ng, "k_g": kg, "powers": {str(p): v for p, v in powers.items()},
                          "probe": False,
                          "rows": [{"N": N, "n": n, "tc0": t0, "tc2": t2}
                                   for N, n, t0, t2 in PUBLISHED_SOLUTIONS[label]]}
    classes["6A"] = {"order": 6, "chi": "2", "tdT_level": 6,
                     "tdT": [rat_str(x) for x in probe_6a_coords()], "N_g": 6, "k_g": None,
                     "powers": {"2": "3A", "3": "2A"}, "probe": True, "rows": []}
    return {"format": dataio.FORMAT_NAME, "version": dataio.FORMAT_VERSION,
            "basis_terms": BASIS_TERMS, "bases": bases, "projections": projections,
            "classes": classes}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare instead of writing")
    ap.add_argument("--out", default=str(dataio.DEFAULT_PATH))
    args = ap.parse_args(argv)
    text = dataio.dumps(build())
    if args.check:
        with open(args.out, encoding="utf-8") as fh:
            same = fh.read() == text
        print("data file up to date" if same else "data file differs from regeneration")
        return 0 if same else 1
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
