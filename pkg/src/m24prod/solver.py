"""Exact linear solve for products of rescaled Borcherds lifts matching Phi_g.

Unknowns are the Taylor coordinates (tc0, tc2) of one weak Jacobi form per
block (N, n) with n N | N' and N <= N_max. The equations ask that the E-vector
of the product equal E(Phi_g), tested divisor by divisor on q-expansions long
enough for the Sturm bound of every level involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import dataio
from .borcherds import BorcherdsSpec, cusp_exponent_tables, minimal_power
from .exactseries import divisors
from .jacobi import JacobiForm01
from .linalg import solve_affine
from .modforms import SUPPORTED_LEVELS, ModFormVec, dimension
from .moonshine import class_data, comparison_terms, evector_sum_table, phi_g

# The tabulated 8A solution contains B_8[phi, 2], of level 16.
DEFAULT_TARGET_LEVEL = {"8A": 16}


class Infeasible(Exception):
    """The ansatz admits no solution."""


@dataclass(frozen=True)
class Block:
    N: int
    n: int

    @property
    def width(self) -> int:
        return 1 + dimension(2, self.N)


@dataclass
class Ansatz:
    label: str
    target_level: int
    max_base_level: int
    blocks: list[Block]
    pole_order: int = 0

    @property
    def n_unknowns(self) -> int:
        return sum(b.width for b in self.blocks)

    def offsets(self) -> list[int]:
        out, o = [], 0
        for b in self.blocks:
            out.append(o)
            o += b.width
        return out


@dataclass
class LinearSystem:
    ansatz: Ansatz
    matrix: list[list[Fraction]]
    rhs: list[Fraction]
    row_labels: list[tuple[int, str, int]]
    n_terms: int


@dataclass
class Solution:
    label: str
    rows: list[BorcherdsSpec]
    p: int
    weight: Fraction
    exponents: tuple[Fraction, Fraction, Fraction]

    def to_json(self) -> dict:
        return {
            "class": self.label,
            "p": self.p,
            "weight": str(self.weight),
            "exponents": [str(e) for e in self.exponents],
            "rows": [{"N": r.N, "n": r.n, "tc0": str(r.phi.c0),
                      "tc2": [str(x) for x in r.phi.tc2.coords]} for r in self.rows],
        }


@dataclass
class VerificationReport:
    label: str
    p: int
    weight: Fraction
    exponents: tuple[Fraction, Fraction, Fraction]
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def default_target_level(label: str) -> int:
    return DEFAULT_TARGET_LEVEL.get(label, class_data(label).N_g)


def enumerate_blocks(target_level: int, max_base_level: int) -> list[Block]:
    """Blocks (N, n) with n N | N' and N <= N_max, ordered by (n, N)."""
    blocks = [Block(N, target_level // N // m)
              for N in divisors(target_level) if N <= max_base_level
              for m in divisors(target_level // N)]
    for b in blocks:
        if b.N not in SUPPORTED_LEVELS and b.N != 1:
            raise ValueError(f"base level {b.N} has no embedded basis")
    return sorted(set(blocks), key=lambda b: (b.n, b.N))


def make_ansatz(label: str, target_level: int | None = None,
                max_base_level: int | None = None, pole_order: int = 0) -> Ansatz:
    if pole_order != 0:
        raise NotImplementedError("weakly holomorphic ansatz spaces (pole order > 0) are not implemented")
    g = class_data(label)
    N1 = default_target_level(label) if target_level is None else target_level
    M = g.native_level if max_base_level is None else max_base_level
    return Ansatz(label, N1, M, enumerate_blocks(N1, M), pole_order)


def block_form(block: Block, coords) -> JacobiForm01:
    coords = list(coords)
    return JacobiForm01(block.N, ModFormVec(0, block.N, (coords[0],)),
                        ModFormVec(2, block.N, tuple(coords[1:])))


def _unit_evectors(block: Block):
    out = []
    for i in range(block.width):
        e = [Fraction(0)] * block.width
        e[i] = Fraction(1)
        out.append(BorcherdsSpec(block.N, block_form(block, e), block.n).evec)
    return out


def build_system(label: str, target_level: int | None = None,
                 max_base_level: int | None = None, pole_order: int = 0,
                 scale=1) -> LinearSystem:
    """Equations sum_blocks E(B[phi_b, n_b])(d) = scale * E(Phi_g)(d) for every d."""
    ans = make_ansatz(label, target_level, max_base_level, pole_order)
    target = phi_g(label).evec.scale(scale)
    levels = [b.N for b in ans.blocks] + [target.comparison_level]
    n_terms = comparison_terms(levels)
    columns = []
    for b in ans.blocks:
        for ev in _unit_evectors(b):
            columns.append(evector_sum_table([ev], n_terms))
    rhs_table = target.q_table(n_terms)
    ds = sorted(set(rhs_table).union(*(c.keys() for c in columns)))
    zero = [Fraction(0)] * n_terms
    matrix, rhs, labels = [], [], []
    for d in ds:
        m0, qs = rhs_table.get(d, (Fraction(0), zero))
        matrix.append([c.get(d, (Fraction(0), zero))[0] for c in columns])
        rhs.append(m0)
        labels.append((d, "m0", 0))
        for j in range(n_terms):
            matrix.append([c.get(d, (Fraction(0), zero))[1][j] for c in columns])
            rhs.append(qs[j])
            labels.append((d, "q", j))
    return LinearSystem(ans, matrix, rhs, labels, n_terms)


def _rows_from_vector(ans: Ansatz, x) -> list[BorcherdsSpec]:
    rows = []
    for b, o in zip(ans.blocks, ans.offsets()):
        coords = x[o:o + b.width]
        if any(coords):
            rows.append(BorcherdsSpec(b.N, block_form(b, coords), b.n))
    return rows


def _solve_with_zero_blocks(system: LinearSystem, zero_blocks: set[int]):
    ans = system.ansatz
    keep = []
    for i, (b, o) in enumerate(zip(ans.blocks, ans.offsets())):
        if i not in zero_blocks:
            keep.extend(range(o, o + b.width))
    A = [[row[j] for j in keep] for row in system.matrix]
    sol = solve_affine(A, system.rhs)
    if sol is None:
        return None
    x = [Fraction(0)] * ans.n_unknowns
    for j, v in zip(keep, sol.particular):
        x[j] = v
    return x


def solve(label: str, minimize: bool = False, target_level: int | None = None,
          max_base_level: int | None = None, pole_order: int = 0) -> Solution:
    system = build_system(label, target_level, max_base_level, pole_order)
    ans = system.ansatz
    x = _solve_with_zero_blocks(system, set())
    if x is None:
        raise Infeasible(f"{label}: no product of rescaled lifts of level dividing "
                         f"{ans.target_level} matches the product expansion")
    if minimize:
        zeroed: set[int] = set()
        order = sorted(range(len(ans.blocks)),
                       key=lambda i: (-ans.blocks[i].n * ans.blocks[i].N, -ans.blocks[i].n))
        for i in order:
            trial = _solve_with_zero_blocks(system, zeroed | {i})
            if trial is not None:
                zeroed.add(i)
                x = trial
        x = _solve_with_zero_blocks(system, zeroed)
    rows = _rows_from_vector(ans, x)
    exps = exponent_sums(rows)
    one = Fraction(1)
    if exps != (one, one, one):
        raise Infeasible(f"{label}: E-vectors match but exponents sum to {exps}")
    p = minimal_power(rows)
    weight = sum((r.weight for r in rows), Fraction(0))
    return Solution(label, rows, p, weight, exps)


def exponent_sums(rows) -> tuple[Fraction, Fraction, Fraction]:
    tot = [Fraction(0)] * 3
    for r in rows:
        for i, e in enumerate(r.exponents):
            tot[i] += e
    return tuple(tot)


def verify_solution(label: str, rows, p: int | None = None, level: int | None = None) -> VerificationReport:
    """Check the modularity-criterion hypotheses for Phi_g^p = prod B[p phi_i, n_i]."""
    rows = list(rows)
    if p is None:
        p = minimal_power(rows)
    failures = []
    scaled = [r.scale(p) for r in rows]
    target = phi_g(label).evec.scale(p)
    n_terms = comparison_terms([r.N for r in rows] + [target.comparison_level])
    lhs = target.q_table(n_terms)
    rhs = evector_sum_table([r.evec for r in scaled], n_terms)
    zero = (Fraction(0), [Fraction(0)] * n_terms)
    for d in sorted(set(lhs) | set(rhs)):
        a, b = lhs.get(d, zero), rhs.get(d, zero)
        if a[0] != b[0]:
            failures.append(f"E-vector mismatch at d={d}: M0 part {a[0]} != {b[0]}")
        for j, (x, y) in enumerate(zip(a[1], b[1])):
            if x != y:
                failures.append(f"E-vector mismatch at d={d}: q^{j} coefficient {x} != {y}")
                break
    exps = exponent_sums(scaled)
    for name, e in zip(("e_q1", "e_zeta", "e_q2"), exps):
        if e != p:
            failures.append(f"exponent {name} sums to {e}, expected {p}")
    if level is None:
        level = default_target_level(label)
    for r in rows:
        if level % r.level:
            failures.append(f"row (N={r.N}, n={r.n}) has level {r.level} not dividing {level}")
    for r in scaled:
        for c, table in cusp_exponent_tables(r, 0):
            for D, v in zip((-1, 0), table):
                if v.denominator != 1:
                    failures.append(f"row (N={r.N}, n={r.n}) cusp {c.label}: "
                                    f"exponent {v} at D={D} is not integral")
    weight = sum((r.weight for r in scaled), Fraction(0))
    g = class_data(label)
    if g.k_g is not None and weight != p * g.k_g:
        failures.append(f"weight {weight} != p * k_g = {p * g.k_g}")
    return VerificationReport(label, p, weight, exps, failures)


def published_rows(label: str) -> list[BorcherdsSpec]:
    """The shipped reference factorization of Phi_g as BorcherdsSpec rows."""
    class_data(label)
    rows = dataio.load().classes[label].get("rows", [])
    if not rows:
        raise KeyError(f"no reference factorization for {label}")
    return [BorcherdsSpec(r["N"], block_form(Block(r["N"], r["n"]),
                                              [Fraction(r["tc0"])] + [Fraction(x) for x in r["tc2"]]),
                          r["n"]) for r in rows]
