"""The star-shaped family G(n, k, l).

Center weight ``-(n+1)`` with ``n + 2`` arms, listed center-outward:

* ``n`` arms of ``l*k`` vertices, all ``-2``;
* one arm of ``k`` vertices, ``-2`` except the far end ``-(l+1)``;
* one arm of ``l`` vertices, ``-(k+1)`` next to the center then ``-2``.

For ``k = 0`` the first ``n + 1`` arms are empty and the last one is the
non-minimal chain ``-1, -2, ..., -2``; it blows down to a single vertex of
weight ``l - (n+1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import (
    BlowDownError,
    GraphError,
    WeightedGraph,
    blow_down,
    canonical_form,
    is_starshaped,
    star_center,
)

__all__ = [
    "InvalidFamilyParams",
    "FamilyParams",
    "family_graph",
    "family_vertex_count",
    "generate",
    "recognize",
    "parse_params",
    "valid_params",
]

_CONSTRAINT = "need n >= 1, k >= 0, l >= 1, and n > l when k = 0"


class InvalidFamilyParams(ValueError):
    pass


@dataclass(frozen=True, order=True)
class FamilyParams:
    n: int
    k: int
    l: int

    def __post_init__(self):
        n, k, l = self.n, self.k, self.l
        if n < 1 or k < 0 or l < 1 or (k == 0 and n <= l):
            raise InvalidFamilyParams(f"invalid parameters ({n},{k},{l}): {_CONSTRAINT}")

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "l": self.l}

    def __str__(self):
        return f"{self.n},{self.k},{self.l}"


def parse_params(text: str) -> FamilyParams:
    try:
        n, k, l = (int(t) for t in text.split(","))
    except ValueError:
        raise InvalidFamilyParams(f"expected 'n,k,l', got {text!r}") from None
    return FamilyParams(n, k, l)


def family_arms(n: int, k: int, l: int) -> list[list[int]]:
    arms = [[-2] * (l * k) for _ in range(n)]
    arms.append([-2] * (k - 1) + [-(l + 1)] if k else [])
    arms.append([-(k + 1)] + [-2] * (l - 1))
    return [a for a in arms if a]


def family_graph(n: int, k: int, l: int) -> WeightedGraph:
    """Build the graph for any ``n >= 1, k >= 0, l >= 1`` without the k = 0 constraint."""
    if n < 1 or k < 0 or l < 1:
        raise InvalidFamilyParams(f"invalid parameters ({n},{k},{l}): need n >= 1, k >= 0, l >= 1")
    return WeightedGraph.star(-(n + 1), family_arms(n, k, l))


def family_vertex_count(n: int, k: int, l: int) -> int:
    return 1 + n * l * k + k + l if k else 1 + l


def generate(params: FamilyParams) -> WeightedGraph:
    return family_graph(params.n, params.k, params.l)


def valid_params(max_n: int, max_k: int, max_l: int):
    """All valid parameter triples in the box, in lexicographic order."""
    for n in range(1, max_n + 1):
        for k in range(0, max_k + 1):
            for l in range(1, max_l + 1):
                if k or n > l:
                    yield FamilyParams(n, k, l)


@lru_cache(maxsize=4096)
def _reduced_key(p: FamilyParams) -> bytes:
    return canonical_form(blow_down(generate(p)))


def _fingerprint_candidates(r: WeightedGraph) -> list[FamilyParams]:
    if len(r) == 1:
        v = r.vertices[0]
        # single -p reduces from (p + l - 1, 0, l); l = 1 is the smallest
        if v.genus == 0 and v.weight <= -2:
            return [FamilyParams(-v.weight, 0, 1)]
        return []
    c = star_center(r)
    if c is None:
        return []
    n = -r.weights[c] - 1
    if n < 1 or len(r.adjacency[c]) != n + 2:
        return []
    # vertex count 1 + n*l*k + k + l must be reachable before walking arms
    rest = len(r) - 1
    if not any((rest - k) % (n * k + 1) == 0 for k in range(1, rest)):
        return []
    star = is_starshaped(r)
    lengths = sorted(len(a) for a in star.arms)
    out = []
    for k in set(lengths):
        for l in set(lengths):
            if sorted([l * k] * n + [k, l]) == lengths:
                out.append(FamilyParams(n, k, l))
    return out


def _brute_force_candidates(r: WeightedGraph, limit: int, wmax: int) -> list[FamilyParams]:
    out = []
    for n in range(1, limit + wmax + 1):
        for k in range(0, limit + 1):
            for l in range(1, limit + 1):
                if (k == 0 and n <= l) or family_vertex_count(n, k, l) > limit:
                    continue
                size = 1 if k == 0 else family_vertex_count(n, k, l)
                if size == len(r):
                    out.append(FamilyParams(n, k, l))
    return out


def recognize(g: WeightedGraph, search_bound: int | None = None) -> FamilyParams | None:
    """Find (n, k, l) whose reduced family graph is isomorphic to reduced ``g``.

    Candidates come from the center weight and the arm-length multiset of
    the reduced graph.  With ``search_bound`` set, every valid triple whose
    generated graph has at most ``search_bound * len(g) + 2`` vertices is
    also tried.  The lexicographically smallest match is returned.
    """
    try:
        r = blow_down(g)
    except BlowDownError:
        return None
    cands = _fingerprint_candidates(r)
    if search_bound is not None and is_starshaped(r) is not None:
        limit = search_bound * len(g) + 2
        cands += _brute_force_candidates(r, limit, max(-w for w in r.weights))
    if not cands:
        return None
    try:
        key = canonical_form(r)
    except GraphError:
        return None
    matches = {p for p in cands if _reduced_key(p) == key}
    return min(matches) if matches else None
