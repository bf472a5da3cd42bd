import random

import pytest

from singtope.family import (
    FamilyParams,
    InvalidFamilyParams,
    family_graph,
    family_vertex_count,
    generate,
    parse_params,
    recognize,
    valid_params,
)
from singtope.graph import (
    WeightedGraph,
    blow_down,
    blow_up_edge,
    canonical_form,
    is_negative_definite,
    is_starshaped,
    relabel,
)
from singtope.laufer import dots, laufer_zmin

from conftest import d4, e8


def expected_zmin(n, k, l):
    """Multiplicities along each arm of G(n,k,l), k >= 1, center-outward."""
    center = l * k + 1
    gamma = [l * k - j + 1 for j in range(1, l * k + 1)]
    gamma_a = [l * (k - j) + 1 for j in range(1, k + 1)]
    gamma_b = [l - j + 1 for j in range(1, l + 1)]
    return center, [gamma] * n + [gamma_a, gamma_b]


def test_params_validation():
    FamilyParams(1, 1, 1)
    FamilyParams(3, 0, 2)
    for bad in [(0, 1, 1), (1, -1, 1), (1, 1, 0), (2, 0, 2), (2, 0, 3)]:
        with pytest.raises(InvalidFamilyParams, match="n > l when k = 0"):
            FamilyParams(*bad)


def test_parse_params():
    assert parse_params("2,1,3") == FamilyParams(2, 1, 3)
    assert str(parse_params(" 3, 2, 2")) == "3,2,2"
    with pytest.raises(InvalidFamilyParams):
        parse_params("2,1")
    with pytest.raises(InvalidFamilyParams):
        parse_params("a,b,c")


def test_generate_examples():
    assert generate(FamilyParams(1, 1, 1)) == d4()
    assert generate(FamilyParams(2, 0, 1)) == WeightedGraph.bamboo([-3, -1])
    assert blow_down(generate(FamilyParams(2, 0, 1))) == WeightedGraph.from_weights([-2])
    g = generate(FamilyParams(2, 1, 2))
    assert g == WeightedGraph.star(-3, [[-2, -2], [-2, -2], [-3], [-2, -2]])
    assert len(g) == 8
    # k = 0 chain, center-outward: -1 then (l-1) twos
    assert generate(FamilyParams(4, 0, 3)) == WeightedGraph.bamboo([-5, -1, -2, -2])


def test_vertex_count():
    for p in valid_params(6, 5, 5):
        assert len(generate(p)) == family_vertex_count(p.n, p.k, p.l)


def test_valid_params_order():
    ps = list(valid_params(3, 2, 2))
    assert ps == sorted(ps)
    assert FamilyParams(2, 0, 1) in ps
    assert all(p.k or p.n > p.l for p in ps)


def test_definiteness_of_family():
    for p in valid_params(6, 5, 5):
        assert is_negative_definite(generate(p))
    for n in range(1, 7):
        for l in range(1, 9):
            assert is_negative_definite(family_graph(n, 0, l)) == (l <= n)


@pytest.mark.parametrize("p", [p for p in valid_params(5, 4, 4) if p.k >= 1])
def test_zmin_pattern(p):
    g = generate(p)
    z = laufer_zmin(g).final_cycle
    center, arm_mults = expected_zmin(p.n, p.k, p.l)
    star = is_starshaped(g)
    assert z[star.center] == center
    got = [[z[v] for v in arm] for arm in star.arm_vertices]
    assert got == arm_mults
    d = dots(g, z)
    assert d[star.center] == -p.n
    assert all(x == 0 for v, x in enumerate(d) if v != star.center)


def test_identities():
    for n in range(1, 6):
        for k in range(1, 6):
            assert canonical_form(generate(FamilyParams(n, k, 1))) == canonical_form(
                generate(FamilyParams(n, 1, k))
            )
    for n in range(2, 7):
        for l in range(1, n):
            a = blow_down(generate(FamilyParams(n, 0, l)))
            b = blow_down(generate(FamilyParams(n - l + 1, 0, 1)))
            assert canonical_form(a) == canonical_form(b)


def test_recognize_examples():
    assert recognize(d4()) == FamilyParams(1, 1, 1)
    for p in range(2, 8):
        assert recognize(WeightedGraph.from_weights([-p])) == FamilyParams(p, 0, 1)
    assert recognize(e8()) is None
    assert recognize(e8(), search_bound=2) is None
    assert recognize(WeightedGraph.bamboo([-2, -2])) is None
    assert recognize(WeightedGraph.from_weights([-1])) is None
    two_nodes = WeightedGraph.from_weights([-2] * 6, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)])
    assert recognize(two_nodes) is None


def test_recognize_is_lexicographic_minimum():
    # G(3,2,1) and G(3,1,2) are the same graph
    assert recognize(generate(FamilyParams(3, 2, 1))) == FamilyParams(3, 1, 2)
    assert recognize(generate(FamilyParams(4, 0, 3))) == FamilyParams(2, 0, 1)


def test_recognize_round_trip_sweep():
    rnd = random.Random(7)
    for p in valid_params(6, 5, 5):
        g = generate(p)
        r = recognize(g)
        assert r is not None
        assert canonical_form(blow_down(generate(r))) == canonical_form(blow_down(g))
        order = list(range(len(g)))
        rnd.shuffle(order)
        assert recognize(relabel(g, order)) == r


def test_recognize_sees_through_blowups():
    g = blow_up_edge(d4(), (0, 1))
    assert recognize(g) == FamilyParams(1, 1, 1)


def test_brute_force_agrees_with_fingerprint():
    for p in valid_params(3, 2, 2):
        g = generate(p)
        assert recognize(g, search_bound=3) == recognize(g)
