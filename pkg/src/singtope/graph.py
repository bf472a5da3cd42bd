"""Weighted dual resolution graphs and plumbing moves.

A graph is an immutable value: vertices ``0..n-1`` each carrying a
self-intersection weight (``<= -1``) and a genus, plus a set of
undirected edges.  All arithmetic is on Python integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "GraphError",
    "MalformedGraphError",
    "NonnegativeWeightError",
    "DisconnectedGraphError",
    "DuplicateEdgeError",
    "CyclicGraphError",
    "UnknownVertexError",
    "BlowDownError",
    "GraphSizeError",
    "Vertex",
    "WeightedGraph",
    "IntersectionMatrix",
    "StarDecomposition",
    "intersection_matrix",
    "is_negative_definite",
    "graph_is_negative_definite",
    "valence",
    "is_tree",
    "is_starshaped",
    "star_center",
    "branch_vertices",
    "blow_down",
    "blow_up_edge",
    "canonical_form",
    "relabel",
    "MAX_GENERAL_CANONICAL",
]

#: Largest non-star tree accepted by :func:`canonical_form`.
MAX_GENERAL_CANONICAL = 16


class GraphError(ValueError):
    """Base class for invalid graphs and failed graph operations."""


class MalformedGraphError(GraphError):
    pass


class NonnegativeWeightError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class CyclicGraphError(GraphError):
    pass


class UnknownVertexError(GraphError):
    pass


class BlowDownError(GraphError):
    pass


class GraphSizeError(GraphError):
    pass


class Vertex(NamedTuple):
    id: int
    weight: int
    genus: int = 0


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class WeightedGraph:
    """Connected simple graph with integer vertex weights and genera.

    ``edges`` may be given as any iterable of pairs; it is normalized to a
    frozenset of sorted tuples.  Duplicate edges, self-loops, weights
    ``>= 0``, negative genera and disconnected graphs are rejected.
    Cycles are allowed here; :func:`singtope.formats.parse_graph` rejects
    them at the input boundary.
    """

    vertices: tuple[Vertex, ...]
    edges: frozenset = field(default_factory=frozenset)
    adjacency: tuple[tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False, hash=False
    )
    weights: tuple[int, ...] = field(init=False, repr=False, compare=False, hash=False)
    genera: tuple[int, ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        verts = tuple(Vertex(*v) for v in self.vertices)
        if not verts:
            raise MalformedGraphError("graph has no vertices")
        for i, v in enumerate(verts):
            if v.id != i:
                raise MalformedGraphError(
                    f"vertex ids must be 0..{len(verts) - 1} in order; got {v.id} at position {i}"
                )
            if v.weight >= 0:
                raise NonnegativeWeightError(
                    f"vertex {v.id} has nonnegative weight {v.weight}"
                )
            if v.genus < 0:
                raise MalformedGraphError(f"vertex {v.id} has negative genus {v.genus}")
        n = len(verts)
        edges = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for pair in self.edges:
            u, v = pair
            if not (0 <= u < n and 0 <= v < n):
                raise UnknownVertexError(f"edge {{{u},{v}}} references an unknown vertex")
            if u == v:
                raise MalformedGraphError(f"self-loop at vertex {u}")
            e = _edge(u, v)
            if e in edges:
                raise DuplicateEdgeError(f"duplicate edge {{{u},{v}}}")
            edges.add(e)
            adj[u].append(v)
            adj[v].append(u)
        _set = object.__setattr__
        _set(self, "vertices", verts)
        _set(self, "edges", frozenset(edges))
        _set(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))
        _set(self, "weights", tuple(v.weight for v in verts))
        _set(self, "genera", tuple(v.genus for v in verts))
        if not self._connected():
            raise DisconnectedGraphError("graph is disconnected")

    @classmethod
    def _trusted(cls, weights, genera, adjacency, edges=None):
        # caller guarantees a valid connected simple graph; adjacency lists sorted
        g = object.__new__(cls)
        _set = object.__setattr__
        _set(g, "vertices", tuple(map(Vertex, range(len(weights)), weights, genera)))
        if edges is None:
            edges = [(u, v) for u, nb in enumerate(adjacency) for v in nb if u < v]
        _set(g, "edges", frozenset(edges))
        _set(g, "adjacency", tuple(map(tuple, adjacency)))
        _set(g, "weights", tuple(weights))
        _set(g, "genera", tuple(genera))
        return g

    def _connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    @classmethod
    def from_weights(cls, weights: Sequence[int], edges: Iterable = (), genera=None):
        if genera is None:
            genera = [0] * len(weights)
        return cls(
            tuple(Vertex(i, w, g) for i, (w, g) in enumerate(zip(weights, genera))),
            tuple(edges),
        )

    @classmethod
    def bamboo(cls, weights: Sequence[int]):
        """Path graph with the given weights in order."""
        return cls.from_weights(weights, [(i, i + 1) for i in range(len(weights) - 1)])

    @classmethod
    def star(cls, center: int, arms: Sequence[Sequence[int]], center_genus: int = 0):
        """Star with ``center`` weight and arms listed center-outward.

        The center is vertex 0; arm vertices follow arm by arm.
        """
        weights = [center]
        adj: list[list[int]] = [[]]
        edges = []
        for arm in arms:
            prev = 0
            for w in arm:
                cur = len(weights)
                weights.append(w)
                adj.append([prev])
                adj[prev].append(cur)
                edges.append((prev, cur))
                prev = cur
        if max(weights) >= 0:
            raise NonnegativeWeightError(f"star has nonnegative weight {max(weights)}")
        if center_genus < 0:
            raise MalformedGraphError(f"negative genus {center_genus}")
        genera = [center_genus] + [0] * (len(weights) - 1)
        return cls._trusted(weights, genera, adj, edges)

    def __len__(self):
        return len(self.vertices)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_dict(self) -> dict:
        return {
            "vertices": [
                {"id": v.id, "weight": v.weight, "genus": v.genus} for v in self.vertices
            ],
            "edges": [list(e) for e in self.sorted_edges()],
        }

    def __str__(self):
        return json.dumps(self.to_dict(), separators=(",", ":"))


@dataclass(frozen=True)
class IntersectionMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, idx):
        return self.entries[idx]

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def intersection_matrix(g: WeightedGraph) -> IntersectionMatrix:
    n = len(g)
    rows = [[0] * n for _ in range(n)]
    for v in g.vertices:
        rows[v.id][v.id] = v.weight
    for u, v in g.edges:
        rows[u][v] = rows[v][u] = 1
    return IntersectionMatrix(tuple(tuple(r) for r in rows))


def is_negative_definite(m) -> bool:
    """Exact negative-definiteness test for a symmetric integer matrix.

    Runs fraction-free (Bareiss) elimination without pivoting; the k-th
    pivot is the k-th leading principal minor, which must have sign
    ``(-1)**k``.  Accepts an :class:`IntersectionMatrix`, a
    :class:`WeightedGraph` or any square nested sequence of ints.
    """
    if isinstance(m, WeightedGraph):
        m = intersection_matrix(m)
    rows = m.entries if isinstance(m, IntersectionMatrix) else m
    a = [list(r) for r in rows]
    n = len(a)
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        # leading minor of order k+1 must be negative for even k
        if pivot == 0 or (pivot < 0) != (k % 2 == 0):
            return False
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - aik * rk[j]) // prev
        prev = pivot
    return True


def _tree_negative_definite(g: WeightedGraph) -> bool:
    # LDL^T eliminating leaves towards vertex 0; only the parent's pivot changes
    adj = g.adjacency
    n = len(adj)
    parent = [-1] * n
    order = [0]
    parent[0] = 0
    for u in order:
        for w in adj[u]:
            if parent[w] < 0:
                parent[w] = u
                order.append(w)
    num = list(g.weights)
    den = [1] * n
    for u in reversed(order):
        a, b = num[u], den[u]
        if a >= 0:
            return False
        if u:
            p = parent[u]
            # pivot_p -= 1 / (a/b), i.e. += b/(-a); denominators stay positive
            num[p] = num[p] * -a + b * den[p]
            den[p] = den[p] * -a
    return True


def graph_is_negative_definite(g: WeightedGraph) -> bool:
    """Negative definiteness of the intersection form of ``g``.

    Trees use leaf-to-root elimination (no fill-in); other graphs go
    through :func:`is_negative_definite`.
    """
    if is_tree(g):
        return _tree_negative_definite(g)
    return is_negative_definite(intersection_matrix(g))


def valence(g: WeightedGraph, v: int) -> int:
    if not 0 <= v < len(g):
        raise UnknownVertexError(f"unknown vertex {v}")
    return len(g.adjacency[v])


def is_tree(g: WeightedGraph) -> bool:
    return len(g.edges) == len(g) - 1


@dataclass(frozen=True)
class StarDecomposition:
    """Center vertex and arms; each arm is listed center-outward."""

    center: int
    arm_vertices: tuple[tuple[int, ...], ...]
    arms: tuple[tuple[int, ...], ...]

    @property
    def arm_count(self) -> int:
        return len(self.arms)


def _walk_arm(g: WeightedGraph, center: int, first: int) -> tuple[int, ...]:
    path = [first]
    prev, cur = center, first
    while len(g.adjacency[cur]) == 2:
        a, b = g.adjacency[cur]
        prev, cur = cur, (b if a == prev else a)
        path.append(cur)
    return tuple(path)


def star_center(g: WeightedGraph) -> int | None:
    """Center of a star-shaped tree without walking the arms, else ``None``."""
    if "_center" in g.__dict__:
        return g.__dict__["_center"]
    g.__dict__["_center"] = c = _star_center(g)
    return c


def branch_vertices(g: WeightedGraph) -> tuple[int, ...]:
    """Vertices of valence >= 3 (cached on the graph)."""
    cache = g.__dict__
    if "_branch" not in cache:
        cache["_branch"] = tuple(v for v, nb in enumerate(g.adjacency) if len(nb) >= 3)
    return cache["_branch"]


def _star_center(g: WeightedGraph) -> int | None:
    if len(g.edges) != len(g.adjacency) - 1:
        return None
    branch = branch_vertices(g)
    if len(branch) > 1:
        return None
    center = branch[0] if branch else None
    if center is None:
        if len(g.adjacency) == 1:
            return 0
        center = min(v for v, nb in enumerate(g.adjacency) if len(nb) == 1)
    return center


def is_starshaped(g: WeightedGraph) -> StarDecomposition | None:
    """Return the star decomposition of ``g``, or ``None``.

    A tree with at most one vertex of valence >= 3 is star-shaped.  For a
    bamboo the center is its end vertex of smallest id.  The result is
    cached on the graph.
    """
    cache = g.__dict__
    if "_star" in cache:
        return cache["_star"]
    center = cache["_center"] if "_center" in cache else star_center(g)
    if center is None:
        star = None
    else:
        arm_vertices = tuple(_walk_arm(g, center, w) for w in g.adjacency[center])
        w = g.weights
        star = StarDecomposition(
            center, arm_vertices, tuple(tuple(w[v] for v in arm) for arm in arm_vertices)
        )
    cache["_star"] = star
    return star


def relabel(g: WeightedGraph, order: Sequence[int]) -> WeightedGraph:
    """Graph with vertex ``order[i]`` of ``g`` renamed to ``i``."""
    pos = {old: new for new, old in enumerate(order)}
    if len(pos) != len(g) or set(pos) != set(range(len(g))):
        raise GraphError("order must be a permutation of the vertex ids")
    verts = tuple(
        Vertex(i, g.vertices[old].weight, g.vertices[old].genus) for i, old in enumerate(order)
    )
    return WeightedGraph(verts, frozenset(_edge(pos[u], pos[v]) for u, v in g.edges))


def blow_up_edge(g: WeightedGraph, e) -> WeightedGraph:
    """Insert a genus-0 (-1)-vertex on edge ``e``; its ends lose 1 each.

    The new vertex gets id ``len(g)``.
    """
    u, v = _edge(*e)
    if (u, v) not in g.edges:
        raise GraphError(f"{{{u},{v}}} is not an edge")
    w = len(g)
    weights = list(g.weights) + [-1]
    weights[u] -= 1
    weights[v] -= 1
    adj = [list(a) for a in g.adjacency] + [[u, v]]
    adj[u].remove(v)
    adj[u].append(w)
    adj[v].remove(u)
    adj[v].append(w)
    return WeightedGraph._trusted(weights, list(g.genera) + [0], adj)


def _contractible(weights, genera, adj, alive, v) -> bool:
    return weights[v] == -1 and genera[v] == 0 and len(adj[v]) <= 2 and (
        len(adj[v]) > 0 or len(alive) > 1
    )


def blow_down(g: WeightedGraph, rng=None) -> WeightedGraph:
    """Contract genus-0 (-1)-vertices of valence <= 2 until none remain.

    By default the lowest contractible id is taken first; pass a
    ``random.Random`` as ``rng`` to pick randomly instead.  Surviving
    vertices keep their relative order and are renumbered from 0.

    Raises :class:`BlowDownError` if a contraction would create a loop or a
    multiple edge, or would push a weight to 0 or above (possible only for
    graphs that are not negative definite).
    """
    if -1 not in g.weights:
        return g
    weights = list(g.weights)
    genera = list(g.genera)
    adj = {v: set(g.adjacency[v]) for v in range(len(g))}
    alive = set(range(len(g)))
    while True:
        cands = sorted(v for v in alive if _contractible(weights, genera, adj, alive, v))
        if not cands:
            break
        v = rng.choice(cands) if rng is not None else cands[0]
        nbrs = sorted(adj[v])
        if len(nbrs) == 2:
            a, b = nbrs
            if b in adj[a]:
                raise BlowDownError(
                    f"contracting vertex {v} would create a multiple edge between {a} and {b}"
                )
            adj[a].add(b)
            adj[b].add(a)
        for u in nbrs:
            adj[u].discard(v)
            weights[u] += 1
            if weights[u] >= 0:
                raise BlowDownError(
                    f"contracting vertex {v} gives vertex {u} nonnegative weight {weights[u]}"
                )
        del adj[v]
        alive.discard(v)
    keep = sorted(alive)
    pos = {old: new for new, old in enumerate(keep)}
    verts = tuple(Vertex(pos[v], weights[v], genera[v]) for v in keep)
    edges = frozenset(_edge(pos[u], pos[w]) for u in keep for w in adj[u] if u < w)
    return WeightedGraph(verts, edges)


def _rooted_code(g: WeightedGraph, root: int) -> tuple:
    """Canonical nested-tuple code of ``g`` rooted at ``root``."""
    label = [(v.weight, v.genus) for v in g.vertices]
    parent = {root: -1}
    order = [root]
    for u in order:
        for w in g.adjacency[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    code: dict[int, tuple] = {}
    for u in reversed(order):
        kids = sorted(code[w] for w in g.adjacency[u] if parent.get(w) == u and w != parent[u])
        code[u] = (label[u], tuple(kids))
    return code[root]


def _tree_centers(g: WeightedGraph) -> list[int]:
    deg = [len(a) for a in g.adjacency]
    remaining = len(g)
    layer = [v for v in range(len(g)) if deg[v] <= 1]
    removed = set()
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            removed.add(v)
            for w in g.adjacency[v]:
                if w not in removed:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return [v for v in range(len(g)) if v not in removed]


def canonical_form(g: WeightedGraph) -> bytes:
    """Isomorphism-invariant key (weights and genera preserved).

    Stars with a vertex of valence >= 3 are keyed by center label and the
    sorted multiset of arms; bamboos by the smaller of the two readings;
    other trees by their rooted code minimized over the tree centers.
    """
    if not is_tree(g):
        raise GraphError("canonical form is only defined for trees")
    label = [(v.weight, v.genus) for v in g.vertices]
    high = [v for v in range(len(g)) if len(g.adjacency[v]) >= 3]
    if len(high) == 1:
        star = is_starshaped(g)
        arms = sorted(tuple(label[v] for v in arm) for arm in star.arm_vertices)
        key = ("S", label[star.center], tuple(arms))
    elif not high:
        if len(g) == 1:
            path = [0]
        else:
            end = min(v for v in range(len(g)) if len(g.adjacency[v]) == 1)
            path = [end, *_walk_arm(g, end, g.adjacency[end][0])]
        seq = tuple(label[v] for v in path)
        key = ("P", min(seq, seq[::-1]))
    else:
        if len(g) > MAX_GENERAL_CANONICAL:
            raise GraphSizeError(
                f"general canonical form limited to {MAX_GENERAL_CANONICAL} vertices, got {len(g)}"
            )
        key = ("T", min(_rooted_code(g, c) for c in _tree_centers(g)))
    return repr(key).encode()
