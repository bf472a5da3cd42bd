"""L-nodes, the combinatorial thick-thin decomposition and full analysis.

For a rational graph the fundamental cycle is also the maximal ideal
cycle, so the L-nodes are the vertices ``v`` with ``Z_min . E_v < 0``.
None of the verdicts here are offered for non-rational graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .arms import ArmReport, NonMinimalArmError, check_lcm_property, check_multeq
from .family import FamilyParams, recognize
from .graph import (
    GraphError,
    WeightedGraph,
    blow_up_edge,
    branch_vertices,
    graph_is_negative_definite,
    is_starshaped,
)
from .laufer import (
    LauferTrace,
    NotNegativeDefiniteError,
    StepBudgetExceeded,
    laufer_zmin,
)

__all__ = [
    "NotRationalError",
    "BlowUpLimitExceeded",
    "ThickPiece",
    "Decomposition",
    "AnalysisReport",
    "l_nodes",
    "node_count",
    "is_metrically_conical",
    "conical_from_zmin",
    "thick_thin",
    "analyze",
    "SCHEMA_VERSION",
]

SCHEMA_VERSION = 1


class NotRationalError(ValueError):
    pass


class BlowUpLimitExceeded(RuntimeError):
    pass


def l_nodes(g: WeightedGraph, zmin: Sequence[int]) -> frozenset[int]:
    if len(zmin) != len(g):
        raise ValueError(f"cycle has length {len(zmin)}, graph has {len(g)} vertices")
    w = g.weights
    return frozenset(
        v
        for v, nb in enumerate(g.adjacency)
        if zmin[v] * w[v] + sum([zmin[u] for u in nb]) < 0
    )


def node_count(g: WeightedGraph, lnodes) -> int:
    branch = branch_vertices(g)
    return len(branch) + sum(1 for v in lnodes if v not in branch)


def conical_from_zmin(g: WeightedGraph, zmin: Sequence[int], lnodes=None) -> bool:
    """Single node which is also the single L-node."""
    ln = l_nodes(g, zmin) if lnodes is None else lnodes
    if len(ln) != 1:
        return False
    (only,) = ln
    return all(len(g.adjacency[v]) < 3 for v in range(len(g)) if v != only)


def _rational_trace(g: WeightedGraph) -> LauferTrace:
    trace = laufer_zmin(g)
    if not trace.rational:
        raise NotRationalError(
            "conicality not topologically determined: graph is not rational"
        )
    return trace


def is_metrically_conical(g: WeightedGraph) -> bool:
    """Conicality verdict for a rational graph.

    Raises :class:`NotRationalError` for non-rational input and
    :class:`~singtope.laufer.NotNegativeDefiniteError` for graphs that are
    not negative definite.
    """
    return conical_from_zmin(g, _rational_trace(g).final_cycle)


@dataclass(frozen=True)
class ThickPiece:
    l_node: int
    bamboos: tuple[tuple[int, ...], ...]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset([self.l_node, *(v for b in self.bamboos for v in b)])


@dataclass(frozen=True)
class Decomposition:
    """Thick-thin pieces on the working graph (the input after any blow-ups)."""

    graph: WeightedGraph
    zmin: tuple[int, ...]
    l_nodes: frozenset[int]
    thick_pieces: tuple[ThickPiece, ...]
    tjurina_components: tuple[tuple[int, ...], ...]
    thin_pieces: tuple[tuple[int, ...], ...]
    blowups_performed: int

    @property
    def conical(self) -> bool:
        return len(self.thick_pieces) == 1 and not self.thin_pieces

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "zmin": list(self.zmin),
            "l_nodes": sorted(self.l_nodes),
            "thick_pieces": [
                {"l_node": t.l_node, "bamboos": [list(b) for b in t.bamboos]}
                for t in self.thick_pieces
            ],
            "tjurina_components": [list(c) for c in self.tjurina_components],
            "thin_pieces": [list(c) for c in self.thin_pieces],
            "blowups_performed": self.blowups_performed,
        }


def _components(g: WeightedGraph, removed: frozenset[int]) -> list[tuple[int, ...]]:
    seen = set(removed)
    comps = []
    for s in range(len(g)):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        for u in comp:
            for w in g.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def _is_bamboo(g: WeightedGraph, comp: Sequence[int]) -> bool:
    vals = [len(g.adjacency[v]) for v in comp]
    return vals.count(1) == 1 and all(x in (1, 2) for x in vals)


def thick_thin(
    g: WeightedGraph, *, max_blowups: int | None = None, zmin: Sequence[int] | None = None
) -> Decomposition:
    """Combinatorial thick-thin decomposition of a rational graph.

    Adjacent L-nodes are separated by blowing up the edge between them
    (recomputing the fundamental cycle each time).  Deleting the L-nodes
    leaves the Tjurina components; those that are bamboos in the working
    graph join the thick piece of their L-node, the rest are thin.
    ``zmin`` may pass in an already computed fundamental cycle of a graph
    known to be rational.
    """
    cap = 2 * len(g) if max_blowups is None else max_blowups
    work = g
    if zmin is None:
        zmin = _rational_trace(work).final_cycle
    blowups = 0
    while True:
        ln = l_nodes(work, zmin)
        adjacent = sorted((u, v) for u, v in work.edges if u in ln and v in ln)
        if not adjacent:
            break
        if blowups >= cap:
            raise BlowUpLimitExceeded(f"more than {cap} blow-ups needed to separate L-nodes")
        work = blow_up_edge(work, adjacent[0])
        blowups += 1
        zmin = laufer_zmin(work).final_cycle
    comps = _components(work, ln)
    bamboos: dict[int, list[tuple[int, ...]]] = {v: [] for v in ln}
    thin = []
    for comp in comps:
        if _is_bamboo(work, comp):
            (owner,) = {w for v in comp for w in work.adjacency[v] if w in ln}
            bamboos[owner].append(comp)
        else:
            thin.append(comp)
    thick = tuple(ThickPiece(v, tuple(sorted(bamboos[v]))) for v in sorted(ln))
    return Decomposition(work, tuple(zmin), ln, thick, tuple(comps), tuple(thin), blowups)


@dataclass
class AnalysisReport:
    graph: WeightedGraph
    negative_definite: bool
    trace: LauferTrace | None = None
    rational: bool | None = None
    l_nodes: frozenset[int] | None = None
    node_count: int | None = None
    decomposition: Decomposition | None = None
    metrically_conical: bool | None = None
    family: FamilyParams | None = None
    arms: list[ArmReport] | None = None
    multeq_consistent: bool | None = None
    lcm_property: bool | None = None
    diagnostics: list[str] = field(default_factory=list)

    @property
    def zmin(self):
        return None if self.trace is None else self.trace.final_cycle

    def to_dict(self) -> dict:
        t = self.trace
        return {
            "schema": SCHEMA_VERSION,
            "graph": self.graph.to_dict(),
            "negative_definite": self.negative_definite,
            "zmin": None if t is None else list(t.final_cycle),
            "trace": None
            if t is None
            else {
                "steps": len(t.steps),
                "max_dot": max((s.max_dot for s in t.steps), default=0),
                "violation": t.to_dict()["violation"],
            },
            "rational": self.rational,
            "l_nodes": None if self.l_nodes is None else sorted(self.l_nodes),
            "node_count": self.node_count,
            "decomposition": None if self.decomposition is None else self.decomposition.to_dict(),
            "metrically_conical": self.metrically_conical,
            "family": None if self.family is None else self.family.to_dict(),
            "arms": None if self.arms is None else [a.to_dict() for a in self.arms],
            "multeq_consistent": self.multeq_consistent,
            "lcm_property": self.lcm_property,
            "diagnostics": list(self.diagnostics),
        }


def analyze(g: WeightedGraph, *, decompose: bool = True, detail: bool = True) -> AnalysisReport:
    """Run every check on ``g``; failures become diagnostics, never exceptions.

    ``detail=False`` is the census path: no decomposition or arm reports,
    the Laufer run stops at the first violation (so ``trace`` is dropped for
    non-rational graphs) and the lcm check runs only on conical stars.
    """
    nd = graph_is_negative_definite(g)
    rep = AnalysisReport(g, nd)
    rep.family = recognize(g)
    if not nd:
        # not the resolution graph of any singularity
        rep.rational = False
        rep.diagnostics.append("intersection form is not negative definite")
        if detail:
            try:
                rep.trace = laufer_zmin(g, check_definite=False)
                v = rep.trace.violation
                if v is not None:
                    rep.diagnostics.append(
                        f"Laufer run without definiteness: intersection {v.value} "
                        f"at vertex {v.vertex} in step {v.step}"
                    )
            except StepBudgetExceeded as exc:
                rep.diagnostics.append(f"Laufer run without definiteness: {exc}")
        return rep
    try:
        trace = laufer_zmin(g, check_definite=False, stop_at_violation=not detail)
    except StepBudgetExceeded as exc:
        rep.diagnostics.append(str(exc))
        return rep
    rep.rational = trace.rational
    if detail or trace.rational:
        rep.trace = trace
    zmin = trace.final_cycle
    star = is_starshaped(g) if detail else None
    if detail and star is not None and star.arms:
        try:
            rep.arms, rep.multeq_consistent = check_multeq(g, star, zmin)
        except NonMinimalArmError:
            rep.diagnostics.append("arm multiplicity laws skipped: arm weight above -2")
    if not trace.rational:
        if any(g.genera):
            rep.diagnostics.append("not rational: a curve has positive genus")
        else:
            v = trace.violation
            rep.diagnostics.append(
                f"not rational: intersection {v.value} at vertex {v.vertex} in step {v.step}"
            )
        rep.diagnostics.append("conicality not topologically determined")
        return rep
    ln = frozenset(v for v, d in enumerate(trace.final_dots) if d < 0)
    rep.l_nodes = ln
    rep.node_count = node_count(g, ln)
    # the single node must be the single L-node
    rep.metrically_conical = rep.node_count == 1 and len(ln) == 1
    if detail and decompose:
        try:
            rep.decomposition = thick_thin(g, zmin=zmin)
        except (BlowUpLimitExceeded, GraphError) as exc:
            rep.diagnostics.append(f"decomposition failed: {exc}")
    if not detail and rep.metrically_conical:
        star = is_starshaped(g)
    if star is not None and star.arms:
        try:
            rep.lcm_property = check_lcm_property(g, star, zmin).holds
        except NonMinimalArmError:
            pass
    return rep
