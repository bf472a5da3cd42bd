import json

import pytest
from hypothesis import given

from singtope.formats import (
    format_dot,
    format_json,
    format_text,
    parse_graph,
    parse_json,
    parse_star,
    parse_text,
)
from singtope.graph import (
    CyclicGraphError,
    DisconnectedGraphError,
    DuplicateEdgeError,
    MalformedGraphError,
    NonnegativeWeightError,
    WeightedGraph,
    canonical_form,
)

from conftest import d4, trees

D4_TEXT = """\
# D4
vertices: 4
v 0 -2
v 1 -2
v 2 -2
v 3 -2
e 0 1
e 0 2
e 0 3
"""


def test_parse_single_vertex():
    g = parse_graph("vertices: 1\nv 0 -2\n")
    assert len(g) == 1 and not g.edges


def test_parse_d4_all_syntaxes():
    assert parse_text(D4_TEXT) == d4()
    assert parse_graph(D4_TEXT) == d4()
    assert parse_graph(format_json(d4())) == d4()
    assert parse_graph("star center=-2 arms=[-2|-2|-2]") == d4()
    assert parse_graph("center=-2 arms=[-2|-2|-2]") == d4()
    g = parse_graph(D4_TEXT)
    assert (len(g), len(g.edges)) == (4, 3)


def test_parse_genus():
    g = parse_text("vertices: 2\nv 0 -2 genus=1\nv 1 -3\ne 0 1\n")
    assert g.genera == (1, 0)
    s = parse_star("star center=-2 genus=2 arms=[-3]")
    assert s.genera == (2, 0)


def test_parse_errors_are_distinct():
    with pytest.raises(NonnegativeWeightError, match="nonnegative weight"):
        parse_graph("vertices: 1\nv 0 0\n")
    with pytest.raises(DisconnectedGraphError):
        parse_graph("vertices: 2\nv 0 -2\nv 1 -2\n")
    with pytest.raises(DuplicateEdgeError):
        parse_graph("vertices: 2\nv 0 -2\nv 1 -2\ne 0 1\ne 1 0\n")
    with pytest.raises(CyclicGraphError):
        parse_graph("vertices: 3\nv 0 -2\nv 1 -2\nv 2 -2\ne 0 1\ne 1 2\ne 2 0\n")
    with pytest.raises(MalformedGraphError):
        parse_graph("vertices: 1\nv 0 minus-two\n")
    with pytest.raises(MalformedGraphError):
        parse_graph("v 0 -2\n")
    with pytest.raises(MalformedGraphError):
        parse_graph("vertices: 2\nv 0 -2\n")
    with pytest.raises(MalformedGraphError):
        parse_graph("vertices: 1\nx 0 -2\n")
    with pytest.raises(MalformedGraphError):
        parse_json('{"vertices": [{"id": 0}]}')
    with pytest.raises(MalformedGraphError):
        parse_json("{not json")
    with pytest.raises(MalformedGraphError):
        parse_star("center=-2 arms=[-2|x]")
    with pytest.raises(NonnegativeWeightError):
        parse_star("center=-2 arms=[-2|3]")


def test_parse_json_accepts_dict():
    obj = {"vertices": [{"id": 1, "weight": -3}, {"id": 0, "weight": -2}], "edges": [[1, 0]]}
    g = parse_json(obj)
    assert g.weights == (-2, -3)
    assert g.genera == (0, 0)


def test_json_shape():
    d = json.loads(format_json(d4()))
    assert d["vertices"][0] == {"id": 0, "weight": -2, "genus": 0}
    assert d["edges"] == [[0, 1], [0, 2], [0, 3]]


def test_dot_output():
    g = WeightedGraph.from_weights([-2, -3], [(0, 1)], genera=[0, 2])
    dot = format_dot(g)
    assert dot.startswith("graph G {")
    lines = dot.splitlines()
    i0 = next(i for i, ln in enumerate(lines) if ln.strip().startswith("0 "))
    i1 = next(i for i, ln in enumerate(lines) if ln.strip().startswith("1 "))
    assert i0 < i1
    assert 'label="-2"' in dot
    assert 'label="-3 [2]"' in dot
    assert "0 -- 1" in dot


@given(trees(max_vertices=9, min_weight=-6, max_weight=-1))
def test_round_trip(g):
    assert canonical_form(parse_graph(format_text(g))) == canonical_form(g)
    assert canonical_form(parse_graph(format_json(g))) == canonical_form(g)
    assert parse_graph(format_text(g)) == g
