"""Exhaustive check of the conicality classification on small trees.

Graphs are produced by canonical generation, so no isomorphism test is
needed for stars and bamboos:

* a bamboo is a weight sequence taken up to reversal;
* a star with three or more arms is a center weight plus a multiset of
  arms, each arm a weight sequence read center-outward.

General trees come from unlabeled trees with every weight assignment,
deduplicated by canonical form.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import networkx as nx

from .classify import analyze, thick_thin
from .graph import WeightedGraph, canonical_form

__all__ = [
    "CensusBoundsError",
    "CensusReport",
    "SHAPES",
    "MAX_VERTICES",
    "MIN_WEIGHT_FLOOR",
    "check_bounds",
    "enumerate_graphs",
    "census",
]

SHAPES = ("trees", "stars", "bamboos")
MAX_VERTICES = 12
MIN_WEIGHT_FLOOR = -9


class CensusBoundsError(ValueError):
    pass


def check_bounds(max_vertices: int, min_weight: int, shape: str = "stars"):
    if shape not in SHAPES:
        raise CensusBoundsError(f"unknown shape {shape!r}; choose from {', '.join(SHAPES)}")
    if not 1 <= max_vertices <= MAX_VERTICES:
        raise CensusBoundsError(f"max_vertices must be in 1..{MAX_VERTICES}, got {max_vertices}")
    if not MIN_WEIGHT_FLOOR <= min_weight <= -2:
        raise CensusBoundsError(
            f"min_weight must be in {MIN_WEIGHT_FLOOR}..-2, got {min_weight}"
        )


def _weights(min_weight: int) -> tuple[int, ...]:
    return tuple(range(-2, min_weight - 1, -1))


def _bamboos(lengths, weights) -> Iterator[WeightedGraph]:
    for n in lengths:
        for seq in itertools.product(weights, repeat=n):
            if seq <= seq[::-1]:
                yield WeightedGraph.star(seq[0], [seq[1:]] if n > 1 else [])


@lru_cache(maxsize=8)
def _arm_pool(max_len: int, weights) -> list[tuple[int, ...]]:
    # sorted by length, which the multiset walk relies on
    return [a for k in range(1, max_len + 1) for a in itertools.product(weights, repeat=k)]


def _arm_multisets(pool, start: int, room: int, count: int, chosen: list):
    # non-decreasing pool indices, at least 3 arms overall
    if count >= 3:
        yield chosen
    for i in range(start, len(pool)):
        a = pool[i]
        if len(a) > room:
            break
        chosen.append(a)
        yield from _arm_multisets(pool, i, room - len(a), count + 1, chosen)
        chosen.pop()


def _star_task(max_vertices: int, weights, center: int, first: int) -> Iterator[WeightedGraph]:
    pool = _arm_pool(max_vertices - 3, weights)
    a = pool[first]
    room = max_vertices - 1 - len(a)
    for arms in _arm_multisets(pool, first, room, 1, [a]):
        yield WeightedGraph.star(center, arms)


def _tree_task(n: int, weights) -> Iterator[WeightedGraph]:
    if n == 1:
        for w in weights:
            yield WeightedGraph.star(w, [])
        return
    seen = set()
    for t in nx.nonisomorphic_trees(n):
        edges = sorted(t.edges())
        for ws in itertools.product(weights, repeat=n):
            g = WeightedGraph.from_weights(ws, edges)
            key = canonical_form(g)
            if key not in seen:
                seen.add(key)
                yield g


def _tasks(max_vertices: int, min_weight: int, shape: str) -> list[tuple]:
    """Independent slices of the enumeration, in a fixed order."""
    if shape == "trees":
        return [("tree", n) for n in range(1, max_vertices + 1)]
    if shape == "bamboos":
        return [("bamboo", n) for n in range(2, max_vertices + 1)]
    out = [("bamboo", n) for n in range(1, max_vertices + 1)]
    if max_vertices >= 4:
        pool = _arm_pool(max_vertices - 3, _weights(min_weight))
        # later arms are at least as long as the first one
        firsts = [i for i, a in enumerate(pool) if 3 * len(a) <= max_vertices - 1]
        out += [("star", c, i) for c in _weights(min_weight) for i in firsts]
    return out


def _task_graphs(task, max_vertices: int, min_weight: int) -> Iterator[WeightedGraph]:
    weights = _weights(min_weight)
    kind = task[0]
    if kind == "bamboo":
        return _bamboos([task[1]], weights)
    if kind == "tree":
        return _tree_task(task[1], weights)
    return _star_task(max_vertices, weights, task[1], task[2])


def enumerate_graphs(max_vertices: int, min_weight: int, shape: str = "stars") -> Iterator[WeightedGraph]:
    """Every genus-0 graph of the given shape, one per isomorphism class.

    ``stars`` covers all star-shaped trees (single vertices, bamboos and
    stars with three or more arms); ``bamboos`` has 2 or more vertices.
    Weights range over ``min_weight..-2``.
    """
    check_bounds(max_vertices, min_weight, shape)
    for task in _tasks(max_vertices, min_weight, shape):
        yield from _task_graphs(task, max_vertices, min_weight)


@dataclass
class CensusReport:
    max_vertices: int
    min_weight: int
    shape: str
    total: int = 0
    negative_definite: int = 0
    rational: int = 0
    conical: int = 0
    family_matched: int = 0
    counterexamples: list = field(default_factory=list)
    lcm_violations: list = field(default_factory=list)
    decomposition_checked: int = 0
    decomposition_mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.counterexamples or self.lcm_violations or self.decomposition_mismatches)

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "rational": self.rational,
            "conical": self.conical,
            "family_matched": self.family_matched,
            "counterexamples": self.counterexamples,
            "negative_definite": self.negative_definite,
            "lcm_violations": self.lcm_violations,
            "decomposition_checked": self.decomposition_checked,
            "decomposition_mismatches": self.decomposition_mismatches,
            "bounds": {
                "max_vertices": self.max_vertices,
                "min_weight": self.min_weight,
                "shape": self.shape,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


def _entry(g: WeightedGraph, **extra) -> tuple[bytes, dict]:
    return canonical_form(g), {"graph": g.to_dict(), **extra}


def _run_task(args) -> tuple[list[int], list, list, list]:
    task, max_vertices, min_weight, decompose = args
    counts = [0, 0, 0, 0, 0, 0]  # total, nd, rational, conical, matched, decomposed
    bad, lcm_bad, dec_bad = [], [], []
    for g in _task_graphs(task, max_vertices, min_weight):
        rep = analyze(g, detail=False)
        counts[0] += 1
        counts[1] += rep.negative_definite
        rational = rep.rational is True
        conical = rational and rep.metrically_conical is True
        matched = rep.family is not None
        counts[2] += rational
        counts[3] += conical
        counts[4] += matched
        if conical != matched:
            fam = None if rep.family is None else rep.family.to_dict()
            bad.append(_entry(g, rational=rep.rational, conical=rep.metrically_conical, family=fam))
        if conical and rep.lcm_property is False:
            lcm_bad.append(_entry(g))
        if decompose and rational:
            counts[5] += 1
            d = thick_thin(g, zmin=rep.zmin)
            if rep.metrically_conical != d.conical:
                dec_bad.append(_entry(g, conical=rep.metrically_conical))
    return counts, bad, lcm_bad, dec_bad


def census(
    max_vertices: int,
    min_weight: int,
    shape: str = "stars",
    *,
    jobs: int = 1,
    decompose: bool = False,
) -> CensusReport:
    """Check (rational and conical) <=> (family recognized) on every graph.

    Also records lcm failures on conical graphs and, with ``decompose``,
    disagreements between the conicality verdict and the thick-thin
    decomposition.  Findings are sorted by canonical form, so the report
    does not depend on ``jobs``.
    """
    check_bounds(max_vertices, min_weight, shape)
    if jobs < 1:
        raise CensusBoundsError(f"jobs must be at least 1, got {jobs}")
    work = [(t, max_vertices, min_weight, decompose) for t in _tasks(max_vertices, min_weight, shape)]
    if jobs == 1:
        results = map(_run_task, work)
        return _merge(results, max_vertices, min_weight, shape)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return _merge(pool.map(_run_task, work, chunksize=4), max_vertices, min_weight, shape)


def _merge(results, max_vertices, min_weight, shape) -> CensusReport:
    rep = CensusReport(max_vertices, min_weight, shape)
    bad, lcm_bad, dec_bad = [], [], []
    for counts, b, lb, db in results:
        rep.total += counts[0]
        rep.negative_definite += counts[1]
        rep.rational += counts[2]
        rep.conical += counts[3]
        rep.family_matched += counts[4]
        rep.decomposition_checked += counts[5]
        bad += b
        lcm_bad += lb
        dec_bad += db
    rep.counterexamples = [e for _, e in sorted(bad, key=lambda x: x[0])]
    rep.lcm_violations = [e for _, e in sorted(lcm_bad, key=lambda x: x[0])]
    rep.decomposition_mismatches = [e for _, e in sorted(dec_bad, key=lambda x: x[0])]
    return rep
