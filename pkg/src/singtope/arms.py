"""Negative continued fractions of bamboo arms and the arm multiplicity laws.

For an arm with positive coefficients ``e_1, ..., e_k`` read center-outward
(``e_j`` is minus the weight), the suffix fraction at ``j`` is
``[e_j; ...; e_k] = p_j / q_j``.  A cycle has zero intersection with every
vertex of the arm exactly when its multiplicities are
``m_j = m_k * p_{j+1}`` along the arm and ``m_center = m_k * p_1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .graph import GraphError, StarDecomposition, WeightedGraph, is_starshaped
from .laufer import dot, laufer_zmin

__all__ = [
    "ContinuedFractionError",
    "NonMinimalArmError",
    "NotStarError",
    "ArmReport",
    "LcmReport",
    "cont_frac",
    "suffix_numerators",
    "arm_fractions",
    "check_multeq",
    "check_lcm_property",
]


class ContinuedFractionError(ZeroDivisionError):
    pass


class NonMinimalArmError(ValueError):
    pass


class NotStarError(GraphError):
    pass


def cont_frac(coeffs: Sequence[int]) -> Fraction:
    """Value of ``a_1 - 1/(a_2 - 1/(... - 1/a_l))`` as an exact fraction."""
    if not coeffs:
        raise ValueError("continued fraction needs at least one coefficient")
    val = Fraction(coeffs[-1])
    for a in reversed(coeffs[:-1]):
        if val == 0:
            raise ContinuedFractionError(f"zero denominator evaluating {list(coeffs)}")
        val = a - 1 / val
    return val


def suffix_numerators(arm: Sequence[int]) -> tuple[list[int], list[int]]:
    """Numerators and denominators of every suffix fraction of an arm.

    ``arm`` holds vertex weights center-outward (all ``<= -2``).  Uses
    ``p_j = e_j p_{j+1} - p_{j+2}`` from the far end, with ``q_j = p_{j+1}``.
    """
    e = [-w for w in arm]
    if not e:
        raise ValueError("empty arm")
    if any(x < 2 for x in e):
        raise NonMinimalArmError(f"arm {list(arm)} has a weight above -2")
    k = len(e)
    p = [0] * (k + 2)
    p[k] = 1
    for j in range(k - 1, -1, -1):
        p[j] = e[j] * p[j + 1] - p[j + 2]
    return p[:k], p[1 : k + 1]


def arm_fractions(arm: Sequence[int]) -> list[Fraction]:
    p, q = suffix_numerators(arm)
    return [Fraction(a, b) for a, b in zip(p, q)]


@dataclass(frozen=True)
class ArmReport:
    """Multiplicity-law check for one arm.

    ``identity`` says the multiplicities follow the suffix numerators;
    ``dots_zero`` says the cycle meets every arm vertex with intersection 0.
    The two must agree.
    """

    arm: int
    weights: tuple[int, ...]
    p: tuple[int, ...]
    q: tuple[int, ...]
    end_mult: int
    identity: bool
    dots_zero: bool

    @property
    def consistent(self) -> bool:
        return self.identity == self.dots_zero

    def to_dict(self) -> dict:
        return {
            "arm": self.arm,
            "p": list(self.p),
            "q": list(self.q),
            "end_mult": self.end_mult,
            "identity": self.identity,
            "dots_zero": self.dots_zero,
        }


def _star(g: WeightedGraph, star: StarDecomposition | None) -> StarDecomposition:
    if star is None:
        star = is_starshaped(g)
        if star is None:
            raise NotStarError("graph is not star-shaped")
    return star


def check_multeq(
    g: WeightedGraph, star: StarDecomposition | None, z: Sequence[int]
) -> tuple[list[ArmReport], bool]:
    """Per-arm reports and whether every arm satisfies the biconditional."""
    star = _star(g, star)
    m = z[star.center]
    reports = []
    for i, verts in enumerate(star.arm_vertices):
        p, q = suffix_numerators(star.arms[i])
        mult = [z[v] for v in verts]
        end = mult[-1]
        nxt = p[1:] + [1]
        identity = m == end * p[0] and all(mj == end * pj for mj, pj in zip(mult, nxt))
        dots_zero = all(dot(g, z, v) == 0 for v in verts)
        reports.append(
            ArmReport(i, tuple(-w for w in star.arms[i]), tuple(p), tuple(q), end, identity, dots_zero)
        )
    return reports, all(r.consistent for r in reports)


@dataclass(frozen=True)
class LcmReport:
    center_mult: int
    p: tuple[int, ...]
    lcm: int

    @property
    def holds(self) -> bool:
        return self.center_mult == self.lcm


def check_lcm_property(
    g: WeightedGraph, star: StarDecomposition | None = None, zmin: Sequence[int] | None = None
) -> LcmReport:
    """Compare the central multiplicity of the fundamental cycle with lcm of the arm numerators."""
    star = _star(g, star)
    if zmin is None:
        zmin = laufer_zmin(g).final_cycle
    ps = tuple(suffix_numerators(arm)[0][0] for arm in star.arms)
    return LcmReport(zmin[star.center], ps, lcm(*ps) if ps else 1)
