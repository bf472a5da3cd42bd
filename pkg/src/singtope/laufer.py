"""Cycles on the exceptional lattice and Laufer's fundamental-cycle algorithm.

A cycle is a tuple of nonnegative multiplicities indexed by vertex id.
:func:`laufer_zmin` computes the fundamental cycle and records every
addition; :func:`zmin_oracle` finds the same cycle by exhaustive search and
shares no code with it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .graph import (
    GraphError,
    UnknownVertexError,
    WeightedGraph,
    graph_is_negative_definite,
    intersection_matrix,
)

__all__ = [
    "Cycle",
    "LauferStep",
    "Violation",
    "LauferTrace",
    "NotNegativeDefiniteError",
    "StepBudgetExceeded",
    "OracleError",
    "STEP_BUDGET_ENV",
    "default_step_budget",
    "dot",
    "dots",
    "is_in_ztop",
    "laufer_zmin",
    "is_rational",
    "zmin_oracle",
]

Cycle = tuple  # tuple[int, ...], one multiplicity per vertex

STEP_BUDGET_ENV = "SINGTOPE_STEP_BUDGET"


class NotNegativeDefiniteError(GraphError):
    pass


class StepBudgetExceeded(RuntimeError):
    pass


class OracleError(RuntimeError):
    pass


class LauferStep(NamedTuple):
    i: int
    vertex: int
    dot: int
    max_dot: int


class Violation(NamedTuple):
    step: int
    vertex: int
    value: int


@dataclass(frozen=True)
class LauferTrace:
    """Every addition made by the algorithm plus the rationality verdict.

    Step ``i`` inspects the cycle ``Z_i`` (``Z_1`` is the reduced
    exceptional divisor) and adds ``vertex`` to it; ``dot`` is
    ``Z_i . E_vertex`` and ``max_dot`` the largest ``Z_i . E_v`` over all
    vertices.  ``violation`` is the first step at which some vertex had
    intersection ``>= 2``.  ``final_dots`` holds ``final_cycle . E_v``.
    """

    steps: tuple[LauferStep, ...]
    final_cycle: Cycle
    rational: bool
    violation: Violation | None
    final_dots: tuple[int, ...] = ()

    @property
    def zmin(self) -> Cycle:
        return self.final_cycle

    def to_dict(self) -> dict:
        v = self.violation
        return {
            "steps": [
                {"i": s.i, "vertex": s.vertex, "dot": s.dot, "max_dot": s.max_dot}
                for s in self.steps
            ],
            "zmin": list(self.final_cycle),
            "rational": self.rational,
            "violation": None if v is None else {"step": v.step, "vertex": v.vertex, "value": v.value},
        }


def _check_length(g: WeightedGraph, z: Sequence[int]):
    if len(z) != len(g):
        raise ValueError(f"cycle has length {len(z)}, graph has {len(g)} vertices")


def dot(g: WeightedGraph, z: Sequence[int], v: int) -> int:
    """Intersection number ``z . E_v``."""
    _check_length(g, z)
    if not 0 <= v < len(g):
        raise UnknownVertexError(f"unknown vertex {v}")
    return z[v] * g.vertices[v].weight + sum(z[u] for u in g.adjacency[v])


def dots(g: WeightedGraph, z: Sequence[int]) -> list[int]:
    _check_length(g, z)
    w = g.weights
    return [z[v] * w[v] + sum(z[u] for u in g.adjacency[v]) for v in range(len(g))]


def is_in_ztop(g: WeightedGraph, z: Sequence[int]) -> bool:
    """True iff ``z`` is a nonzero effective cycle with ``z . E_v <= 0`` for all v."""
    _check_length(g, z)
    if any(m < 0 for m in z) or not any(z):
        return False
    return all(d <= 0 for d in dots(g, z))


def default_step_budget(g: WeightedGraph) -> int:
    env = os.environ.get(STEP_BUDGET_ENV)
    if env:
        return int(env)
    return 64 * len(g) * max(abs(w) for w in g.weights)


def laufer_zmin(
    g: WeightedGraph,
    *,
    tie_break: str = "max",
    step_budget: int | None = None,
    check_definite: bool = True,
    stop_at_violation: bool = False,
) -> LauferTrace:
    """Run Laufer's algorithm from ``Z_1 = E`` to the fundamental cycle.

    While some vertex has positive intersection with the current cycle, one
    such vertex is added.  ``tie_break="max"`` picks the largest
    intersection, lowest id first; ``"min"`` picks the smallest positive
    intersection, highest id first.  The result does not depend on the
    choice; traces do.

    The rationality verdict is false if any vertex has positive genus or if
    at any step *any* vertex (chosen or not) has intersection ``>= 2``.
    With ``stop_at_violation`` the run ends at the first violation and
    ``final_cycle`` is the cycle reached so far, not the fundamental cycle.
    """
    if tie_break not in ("max", "min"):
        raise ValueError(f"unknown tie_break {tie_break!r}")
    if check_definite and not graph_is_negative_definite(g):
        raise NotNegativeDefiniteError("intersection form is not negative definite")
    budget = default_step_budget(g) if step_budget is None else step_budget
    n = len(g)
    w = g.weights
    adj = g.adjacency
    z = [1] * n
    cur = [w[v] + len(adj[v]) for v in range(n)]
    steps = []
    violation = None
    i = 1
    while True:
        top = max(cur)
        if top <= 0:
            break
        if violation is None and top >= 2:
            violation = Violation(i, cur.index(top), top)
            if stop_at_violation:
                break
        if tie_break == "max":
            v = cur.index(top)
        else:
            v = min((d, -u) for u, d in enumerate(cur) if d > 0)
            v = -v[1]
        if len(steps) >= budget:
            raise StepBudgetExceeded(
                f"Laufer algorithm exceeded {budget} steps; intersection form is suspect"
            )
        steps.append(LauferStep(i, v, cur[v], top))
        z[v] += 1
        cur[v] += w[v]
        for u in adj[v]:
            cur[u] += 1
        i += 1
    rational = violation is None and not any(g.genera)
    return LauferTrace(tuple(steps), tuple(z), rational, violation, tuple(cur))


def is_rational(g: WeightedGraph) -> bool:
    """Laufer's rationality criterion.

    A graph whose form is not negative definite resolves no singularity at
    all, so it is reported as not rational instead of being refused.
    """
    if not graph_is_negative_definite(g):
        return False
    return laufer_zmin(g, check_definite=False).rational


_ORACLE_MAX_ROWS = 4_000_000


def _oracle_order(adj) -> list[int]:
    # BFS from a vertex of largest valence keeps the open frontier small
    root = max(range(len(adj)), key=lambda v: (len(adj[v]), -v))
    order, seen = [root], {root}
    for u in order:
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                order.append(w)
    return order


def _ztop_in_box(g: WeightedGraph, m: np.ndarray, order: list[int], box: int) -> np.ndarray:
    # rows (in ``order`` coordinates) of every z in [0..box]^n with z . E_v <= 0 for all v
    pos = {v: i for i, v in enumerate(order)}
    rows = np.zeros((1, 0), dtype=np.int64)
    values = np.arange(box + 1, dtype=np.int64)
    for k, v in enumerate(order):
        r = rows.shape[0]
        if r * (box + 1) > _ORACLE_MAX_ROWS:
            raise OracleError(f"search space too large at vertex {k} of {len(order)}")
        rows = np.concatenate([np.repeat(rows, box + 1, axis=0), np.tile(values, r)[:, None]], axis=1)
        # a bound can only change for v and its neighbours
        for u in (v, *g.adjacency[v]):
            own = rows[:, pos[u]] if pos[u] <= k else box
            low = m[u, u] * own + sum(rows[:, pos[w]] for w in g.adjacency[u] if pos[w] <= k)
            rows = rows[np.broadcast_to(low <= 0, (rows.shape[0],))]
    return rows[np.any(rows > 0, axis=1)]


def zmin_oracle(g: WeightedGraph, box: int = 12) -> Cycle:
    """Fundamental cycle by exhaustive search over ``[0..b]**n``.

    Boxes ``b = 1, 2, ..., box`` are scanned in turn.  Every element of
    ``Z_top`` dominates its minimum, so the minimum lies in the first box
    that meets ``Z_top``; inside that box the componentwise minimum of all
    hits must itself be a hit, otherwise :class:`OracleError` is raised.

    Points are built one coordinate at a time and a partial point is
    dropped once some intersection ``z . E_v`` is positive whatever the
    remaining (nonnegative) coordinates are, so the search stays exhaustive.
    """
    n = len(g)
    if n > 8 or not 1 <= box <= 12:
        raise ValueError("oracle limited to 8 vertices and 1 <= box <= 12")
    m = np.array(intersection_matrix(g).entries, dtype=np.int64)
    order = _oracle_order(g.adjacency)
    for b in range(1, box + 1):
        hits = _ztop_in_box(g, m, order, b)
        if hits.shape[0]:
            low = hits.min(axis=0)
            if not np.any(np.all(hits == low, axis=1)):
                raise OracleError("Z_top has no componentwise minimum inside the box")
            z = [0] * n
            for i, v in enumerate(order):
                z[v] = int(low[i])
            return tuple(z)
    raise OracleError(f"no element of Z_top with entries <= {box}")
