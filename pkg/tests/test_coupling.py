import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dupdel.coupling import CoupledState
from dupdel.partition import CliquePartition
from dupdel.runner import growth_diagnostics, run, run_coupled
from dupdel.stream import ChoiceStream

from oracles import replay


def black_edges(state):
    return {(a, b) for a, nb in enumerate(state.graph.neighbors) for b in nb
            if a < b and b not in state.red_neighbors[a]}


def test_first_step():
    s = CoupledState()
    s.step(0, 0)
    assert s.graph.edges() == {(0, 1)}
    assert s.red_neighbors[0] == {1} and s.red == [True, True]
    d = s.diagnostics()
    assert (d.edges, d.red_vertices, d.red_edges) == (1, 2, 1)
    assert s.shadow.clique_size_multiset() == [1, 1]
    assert black_edges(s) == set()
    assert s.black_matches_shadow()


def test_second_step_keeps_everything_red():
    # with two adjacent vertices every deletion hits a neighbour of the duplicated one
    s = CoupledState()
    s.step(0, 0)
    s.step(0, 1)
    assert s.red == [True, True, True]
    assert s.red_neighbors[1] == {2}
    assert s.graph.edges() == {(0, 2), (1, 2)}
    s.check_invariants()


@pytest.mark.parametrize("seed", range(4))
def test_far_deletion_rules(seed):
    """u black and v outside N(u) + {u}: no new red edge; v black afterwards."""
    s = CoupledState()
    stream = ChoiceStream(seed)
    seen_red_stripped = seen_plain = 0
    for _ in range(3000):
        u, v = next(stream)
        far = v != u and v not in s.graph.neighbors[u]
        if far and not s.red[u]:
            z, r, v_red = s.red_vertex_count, s.red_edge_count, s.red[v]
            s.step(u, v)
            assert s.red_edge_count <= r
            assert s.red[v] is False
            assert s.red_vertex_count == z - v_red
            seen_red_stripped += v_red
            seen_plain += 1
        else:
            s.step(u, v)
    assert seen_plain > 100 and seen_red_stripped > 0


@pytest.mark.parametrize("seed", range(8))
def test_every_step_invariants(seed):
    s = CoupledState()
    stream = ChoiceStream(seed)
    z_prev = 0
    for _ in range(1500):
        s.step(*next(stream))
        s.check_invariants()
        assert s.black_matches_shadow()
        assert abs(s.red_vertex_count - z_prev) <= 3
        z_prev = s.red_vertex_count


def test_shadow_equals_standalone_version2():
    res = run_coupled(10**4, 99)
    alone = run(2, 10**4, 99)
    assert res.all_equivalent
    assert res.state.shadow.vertex_to_clique == alone.state.vertex_to_clique
    assert res.state.black_component_sizes() == alone.state.clique_size_multiset()


def test_version1_graph_equals_standalone_version1():
    res = run_coupled(5000, 4)
    alone = run(1, 5000, 4)
    assert res.state.graph.neighbors == alone.state.neighbors


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_black_edges_are_explicit_version2(data):
    n = data.draw(st.integers(0, 12))
    picks = [(data.draw(st.integers(0, m - 1)), data.draw(st.integers(0, m - 1)))
             for m in range(1, n + 1)]
    s = CoupledState()
    for u, v in picks:
        s.step(u, v)
    assert black_edges(s) == set(replay(picks, protect_new=False))
    assert s.graph.edges() == set(replay(picks, protect_new=True))


def test_growth_diagnostics_rows():
    res = run_coupled(1, 0)
    assert growth_diagnostics(res.diagnostics) == [(1, 1, 1.0, 2, 1, 1)]
    res = run_coupled(4096, 1)
    rows = growth_diagnostics(res.diagnostics)
    assert [r[0] for r in rows] == [2**i for i in range(13)]
    assert all(r[2] == pytest.approx(r[1] / r[0]) for r in rows)


def test_edge_count_is_martingale_plus_n():
    # S_n - n has mean zero; 200 runs at n = 2000 must sit within 5 standard errors
    n, runs = 2000, 200
    s = np.array([run(1, n, 10_000 + r, checkpoints=[n]).state.edge_count for r in range(runs)])
    se = s.std(ddof=1) / math.sqrt(runs)
    assert abs(s.mean() - n) < 5 * se
