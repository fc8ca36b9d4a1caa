import pytest
from hypothesis import given, settings, strategies as st

from dupdel.adjacency import AdjacencyGraph
from dupdel.partition import ContractViolation
from dupdel.stream import ChoiceStream

from oracles import replay

TRIANGLE = [(0, 1), (0, 2), (1, 2)]


def test_first_step_edge_is_protected():
    g = AdjacencyGraph()
    g.step(0, 0)
    assert g.edges() == {(0, 1)}
    assert g.edge_count == 1


def test_triangle_delete_other_vertex():
    g = AdjacencyGraph.from_edges(3, TRIANGLE)
    g.step(0, 1)
    assert g.edges() == {(0, 2), (0, 3), (2, 3), (1, 3)}
    assert g.edge_count == 4


def test_triangle_duplicate_and_delete_same_vertex():
    g = AdjacencyGraph.from_edges(3, TRIANGLE)
    g.step(0, 0)
    assert g.edges() == {(1, 2), (1, 3), (2, 3), (0, 3)}


def test_invalid_pick():
    with pytest.raises(ContractViolation):
        AdjacencyGraph().step(1, 0)


@pytest.mark.parametrize("seed", range(3))
def test_invariants_along_run(seed):
    g = AdjacencyGraph()
    stream = ChoiceStream(seed)
    for _ in range(1500):
        u, v = next(stream)
        before = g.edge_count
        du, dv = g.degree(u), g.degree(v)
        g.step(u, v)
        g.check_invariants()
        # edge increment is deg(u) - deg(v) + 1, degrees taken before the step
        assert g.edge_count - before == du - dv + 1


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_matches_explicit_edge_replay(data):
    n = data.draw(st.integers(0, 12))
    picks = [(data.draw(st.integers(0, m - 1)), data.draw(st.integers(0, m - 1)))
             for m in range(1, n + 1)]
    g = AdjacencyGraph()
    for u, v in picks:
        g.step(u, v)
    assert g.edges() == set(replay(picks, protect_new=True))
