from __future__ import annotations

from hypothesis import strategies as st

from singtope.graph import WeightedGraph

# lines printed at the end of the run by the acceptance suite
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def d4():
    return WeightedGraph.star(-2, [[-2], [-2], [-2]])


def d4_tilde():
    return WeightedGraph.star(-2, [[-2], [-2], [-2], [-2]])


def e8():
    # arms of lengths 1, 2, 4 around a -2 center
    return WeightedGraph.star(-2, [[-2], [-2, -2], [-2, -2, -2, -2]])


def bamboo(*weights):
    return WeightedGraph.bamboo(list(weights))


@st.composite
def trees(draw, max_vertices=7, min_weight=-4, max_weight=-2):
    n = draw(st.integers(1, max_vertices))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    weights = draw(st.lists(st.integers(min_weight, max_weight), min_size=n, max_size=n))
    return WeightedGraph.from_weights(weights, [(p, i + 1) for i, p in enumerate(parents)])


@st.composite
def stars(draw, max_arms=5, max_len=3, min_weight=-4):
    center = draw(st.integers(min_weight, -2))
    arms = draw(
        st.lists(
            st.lists(st.integers(min_weight, -2), min_size=1, max_size=max_len),
            min_size=0,
            max_size=max_arms,
        )
    )
    return WeightedGraph.star(center, arms)
