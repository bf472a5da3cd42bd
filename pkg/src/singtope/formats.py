"""Reading and writing graphs.

Three input syntaxes are accepted by :func:`parse_graph`:

* line format::

      vertices: 4
      v 0 -2
      v 1 -2 genus=1
      e 0 1

* JSON: ``{"vertices": [{"id": 0, "weight": -2, "genus": 0}], "edges": [[0, 1]]}``
* star shorthand: ``star center=-2 arms=[-2,-2|-3|-2]`` (the leading
  ``star`` is optional; arms are separated by ``|`` and read center-outward).

Blank lines and ``#`` comments are ignored in the line format.
"""

from __future__ import annotations

import json
import re

from .graph import (
    CyclicGraphError,
    DuplicateEdgeError,
    MalformedGraphError,
    NonnegativeWeightError,
    Vertex,
    WeightedGraph,
    is_tree,
)

__all__ = [
    "parse_graph",
    "parse_text",
    "parse_json",
    "parse_star",
    "format_text",
    "format_json",
    "format_dot",
]

_STAR_RE = re.compile(
    r"^\s*(?:star\s+)?center\s*=\s*(-?\d+)(?:\s+genus\s*=\s*(\d+))?\s+arms\s*=\s*\[([^\]]*)\]\s*$"
)


def _checked(vertices, edges) -> WeightedGraph:
    seen = set()
    for u, v in edges:
        e = (min(u, v), max(u, v))
        if e in seen:
            raise DuplicateEdgeError(f"duplicate edge {{{u},{v}}}")
        seen.add(e)
    g = WeightedGraph(tuple(vertices), tuple(edges))
    if not is_tree(g):
        raise CyclicGraphError("graph contains a cycle; only trees are supported")
    return g


def _int(tok: str, what: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise MalformedGraphError(f"line {lineno}: bad {what} {tok!r}") from None


def parse_text(text: str) -> WeightedGraph:
    declared = None
    verts: dict[int, Vertex] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:"):
            if declared is not None:
                raise MalformedGraphError(f"line {lineno}: repeated vertices header")
            declared = _int(line.split(":", 1)[1].strip(), "vertex count", lineno)
            continue
        toks = line.split()
        if toks[0] == "v":
            if len(toks) not in (3, 4):
                raise MalformedGraphError(f"line {lineno}: expected 'v <id> <weight> [genus=<g>]'")
            vid = _int(toks[1], "vertex id", lineno)
            weight = _int(toks[2], "weight", lineno)
            genus = 0
            if len(toks) == 4:
                if not toks[3].startswith("genus="):
                    raise MalformedGraphError(f"line {lineno}: expected genus=<g>, got {toks[3]!r}")
                genus = _int(toks[3][6:], "genus", lineno)
            if weight >= 0:
                raise NonnegativeWeightError(
                    f"line {lineno}: vertex {vid} has nonnegative weight {weight}"
                )
            if vid in verts:
                raise MalformedGraphError(f"line {lineno}: vertex {vid} declared twice")
            verts[vid] = Vertex(vid, weight, genus)
        elif toks[0] == "e":
            if len(toks) != 3:
                raise MalformedGraphError(f"line {lineno}: expected 'e <id> <id>'")
            edges.append((_int(toks[1], "vertex id", lineno), _int(toks[2], "vertex id", lineno)))
        else:
            raise MalformedGraphError(f"line {lineno}: unrecognized line {raw.strip()!r}")
    if declared is None:
        raise MalformedGraphError("missing 'vertices: n' header")
    if sorted(verts) != list(range(declared)):
        raise MalformedGraphError(
            f"header declares {declared} vertices but ids {sorted(verts)} were given"
        )
    return _checked([verts[i] for i in range(declared)], edges)


def parse_json(obj) -> WeightedGraph:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise MalformedGraphError(f"invalid JSON: {exc}") from None
    try:
        raw = sorted(obj["vertices"], key=lambda d: d["id"])
        verts = [Vertex(int(d["id"]), int(d["weight"]), int(d.get("genus", 0))) for d in raw]
        edges = [(int(u), int(v)) for u, v in obj.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedGraphError(f"malformed graph JSON: {exc!r}") from None
    return _checked(verts, edges)


def parse_star(text: str) -> WeightedGraph:
    m = _STAR_RE.match(text)
    if not m:
        raise MalformedGraphError(f"bad star shorthand {text!r}")
    center = int(m.group(1))
    genus = int(m.group(2) or 0)
    body = m.group(3).strip()
    arms = []
    if body:
        for chunk in body.split("|"):
            try:
                arms.append([int(t) for t in chunk.split(",")])
            except ValueError:
                raise MalformedGraphError(f"bad arm {chunk!r} in star shorthand") from None
    for w in [center, *(w for arm in arms for w in arm)]:
        if w >= 0:
            raise NonnegativeWeightError(f"star shorthand has nonnegative weight {w}")
    return WeightedGraph.star(center, arms, center_genus=genus)


def parse_graph(text: str) -> WeightedGraph:
    """Parse any of the supported syntaxes, detected from the first token."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_json(stripped)
    if stripped.startswith("star") or stripped.startswith("center"):
        return parse_star(stripped)
    return parse_text(text)


def format_text(g: WeightedGraph) -> str:
    lines = [f"vertices: {len(g)}"]
    for v in g.vertices:
        lines.append(f"v {v.id} {v.weight}" + (f" genus={v.genus}" if v.genus else ""))
    lines += [f"e {u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def format_json(g: WeightedGraph) -> str:
    return json.dumps(g.to_dict())


def format_dot(g: WeightedGraph, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    for v in g.vertices:
        label = str(v.weight) + (f" [{v.genus}]" if v.genus else "")
        out.append(f'  {v.id} [label="{label}"];')
    out += [f"  {u} -- {v};" for u, v in g.sorted_edges()]
    out.append("}")
    return "\n".join(out) + "\n"
