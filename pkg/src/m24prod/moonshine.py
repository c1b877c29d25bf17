"""Twining data for conjugacy classes and the twisted product expansion.

Each class g carries chi(g), the weight-2 form T~_g at its native level, the
element order n_g and the power map. The Moebius components

    c_{g,d} = d^-1 sum_{d' | d} mu(d/d') (chi(g^d'), T~_{g^d'})

are the layers E(Phi_g)(d) of the product expansion Phi_g.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from . import dataio
from .exactseries import divisors, moebius, rat
from .modforms import ModFormVec, embed_level, q_coeff_lists, sturm_bound

CLASS_LABELS = ("1A", "2A", "2B", "3A", "3B", "4A", "4B", "4C", "5A", "7AB", "8A", "11A", "23AB")
PROBE_LABELS = ("6A",)


@dataclass(frozen=True)
class ClassData:
    label: str
    order: int
    chi: Fraction
    tdT: ModFormVec
    native_level: int
    N_g: int
    k_g: Fraction | None
    probe: bool = False


def class_data(label: str) -> ClassData:
    raw = dataio.load().classes
    if label not in raw:
        raise KeyError(f"unsupported class {label!r}")
    c = raw[label]
    lvl = c["tdT_level"]
    return ClassData(label, c["order"], Fraction(c["chi"]), ModFormVec(2, lvl, tuple(c["tdT"])),
                     lvl, c["N_g"], None if c["k_g"] is None else Fraction(c["k_g"]),
                     c.get("probe", False))


def _smallest_prime(n: int) -> int:
    p = 2
    while n % p:
        p += 1
    return p


def power_class(label: str, d: int) -> str:
    """Class of g^d, composed from the tabulated prime powers."""
    if d < 1:
        raise ValueError("power must be positive")
    raw = dataio.load().classes
    while d > 1:
        p = _smallest_prime(d)
        info = raw[label]
        powers = info["powers"]
        if str(p) in powers:
            label = powers[str(p)]
        elif info["order"] % p == 0:
            raise KeyError(f"power map missing for ({label}, {p})")
        d //= p
    return label


def power_map(label: str) -> dict[int, str]:
    """{d: class of g^d} for every divisor d of the element order."""
    return {d: power_class(label, d) for d in divisors(class_data(label).order)}


def moebius_component(label: str, d: int) -> tuple[Fraction, ModFormVec]:
    """E(Phi_g)(d), with the weight-2 part at the native level of T~_g."""
    g = class_data(label)
    if g.order % d:
        raise ValueError(f"{d} does not divide the order {g.order} of {label}")
    m0 = Fraction(0)
    m2 = ModFormVec.zero(2, g.native_level)
    for dp in divisors(d):
        mu = moebius(d // dp)
        if not mu:
            continue
        h = class_data(power_class(label, dp))
        m0 += mu * h.chi
        m2 = m2 + embed_level(h.tdT, g.native_level).scale(mu)
    return m0 / d, m2.scale(Fraction(1, d))


@dataclass
class EVector:
    """Finitely supported d -> (M0 part, M2 part)."""

    support: dict[int, tuple[Fraction, ModFormVec]] = field(default_factory=dict)
    comparison_level: int = 1

    def __add__(self, other: "EVector") -> "EVector":
        N = lcm(self.comparison_level, other.comparison_level)
        out = {}
        for d in sorted(set(self.support) | set(other.support)):
            m0 = Fraction(0)
            m2 = ModFormVec.zero(2, N)
            for ev in (self, other):
                if d in ev.support:
                    a, b = ev.support[d]
                    m0 += a
                    m2 = m2 + embed_level(b, N)
            out[d] = (m0, m2)
        return EVector(out, N)

    def scale(self, c) -> "EVector":
        c = rat(c)
        return EVector({d: (c * a, b.scale(c)) for d, (a, b) in self.support.items()},
                       self.comparison_level)

    def q_table(self, n_terms: int) -> dict[int, tuple[Fraction, list[Fraction]]]:
        return {d: (a, q_coeff_lists(b, n_terms)) for d, (a, b) in self.support.items()}

    def nonzero_support(self) -> list[int]:
        return sorted(d for d, (a, b) in self.support.items() if a or not b.is_zero())


def evector_sum_table(evecs, n_terms: int) -> dict[int, tuple[Fraction, list[Fraction]]]:
    """Pointwise sum of E-vectors compared through q-expansions (any levels)."""
    out: dict[int, tuple[Fraction, list[Fraction]]] = {}
    for ev in evecs:
        for d, (a, coeffs) in ev.q_table(n_terms).items():
            m0, acc = out.get(d, (Fraction(0), [Fraction(0)] * n_terms))
            out[d] = (m0 + a, [x + y for x, y in zip(acc, coeffs)])
    return out


def comparison_terms(levels) -> int:
    """Sturm-safe number of q-coefficients for comparing weight-2 forms."""
    L = lcm(*levels) if levels else 1
    return sturm_bound(2, L) + 8 + 1


@dataclass
class ProductExpansion:
    e_q1: Fraction
    e_zeta: Fraction
    e_q2: Fraction
    evec: EVector

    @property
    def exponents(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.e_q1, self.e_zeta, self.e_q2)


def phi_g(label: str) -> ProductExpansion:
    """Phi_g = q1 zeta q2 prod_d prod (1 - x^d)^{c_{g,d}} as exponents plus E-vector."""
    g = class_data(label)
    support = {d: moebius_component(label, d) for d in divisors(g.order)}
    one = Fraction(1)
    return ProductExpansion(one, one, one, EVector(support, g.native_level))
