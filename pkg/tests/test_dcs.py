import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dubcover.dcs import (ASCENDING, DESCENDING, EXACT_LIMIT, Route, SolverLimitError,
                          build_dubins_graph, dcs, route_cost, sequence_cost, solve_exact,
                          solve_heuristic, solve_route)
from dubcover.dubins import dubins_length
from dubcover.passes import Pass
from dubcover.synthetic import random_passes


def enumerate_best(w: np.ndarray) -> float:
    """Every pass order times every orientation vector."""
    n = w.shape[0] // 2
    best = math.inf
    for perm in itertools.permutations(range(n)):
        for dirs in itertools.product((0, 1), repeat=n):
            seq = [2 * g + d for g, d in zip(perm, dirs)]
            best = min(best, sequence_cost(seq, w))
    return best


def test_graph_counts():
    rng = np.random.default_rng(0)
    for n in (1, 2, 5):
        g = build_dubins_graph(random_passes(rng, n), 3.0)
        assert len(g.nodes) == 2 * n
        assert g.arcs() == 2 * n * (2 * n - 2)


def test_weights_are_dubins():
    rng = np.random.default_rng(1)
    g = build_dubins_graph(random_passes(rng, 4), 2.5)
    for i, u in enumerate(g.nodes):
        for j, v in enumerate(g.nodes):
            if u.pass_id == v.pass_id:
                assert math.isinf(g.weights[i, j])
            else:
                assert g.weights[i, j] == pytest.approx(dubins_length(u.exit, v.entry, 2.5))


def test_node_geometry():
    p = Pass(3, 0, 5.0, 1.0, 9.0, 4.5)
    g = build_dubins_graph([p], 1.0)
    up, down = g.nodes
    assert (up.direction, down.direction) == (ASCENDING, DESCENDING)
    assert up.entry == (5.0, 1.0, math.pi / 2) and up.exit == (5.0, 9.0, math.pi / 2)
    assert down.entry == (5.0, 9.0, 3 * math.pi / 2) and down.exit == (5.0, 1.0, 3 * math.pi / 2)


def test_u_turn_between_neighbours():
    s, r = 4.5, 2.0
    a, b = Pass(0, 0, 0.0, 0.0, 30.0, s), Pass(1, 0, s, 0.0, 30.0, s)
    g = build_dubins_graph([a, b], r)
    # ascending exit of pass 0 into descending entry of pass 1: quarter, straight, quarter
    assert g.weights[0, 3] == pytest.approx(math.pi * r + s - 2 * r)
    assert g.weights[3, 0] == pytest.approx(math.pi * r + s - 2 * r)


def test_single_pass_route():
    route = dcs([Pass(0, 0, 1.0, 0.0, 10.0, 4.5)], 2.0, "exact")
    assert [n.direction for n in route.nodes] == [ASCENDING]
    assert route.transitions == [] and route.interior_cost == pytest.approx(10.0)
    assert dcs([Pass(0, 0, 1.0, 0.0, 10.0, 4.5)], 2.0, "heuristic").nodes == route.nodes


def test_two_passes_eight_alternatives():
    rng = np.random.default_rng(2)
    for _ in range(20):
        ps = random_passes(rng, 2)
        g = build_dubins_graph(ps, 3.0)
        alts = []
        for first, second in ((0, 1), (1, 0)):
            for d0, d1 in itertools.product((0, 1), repeat=2):
                u, v = g.nodes[2 * first + d0], g.nodes[2 * second + d1]
                alts.append(dubins_length(u.exit, v.entry, 3.0))
        assert len(alts) == 8
        route = solve_route(g, "exact")
        assert route.transition_length == pytest.approx(min(alts))


@pytest.mark.parametrize("seed", range(40))
def test_exact_matches_enumeration(seed):
    rng = np.random.default_rng(1000 + seed)
    n = int(rng.integers(1, 6))
    g = build_dubins_graph(random_passes(rng, n), float(rng.uniform(1, 6)))
    seq = solve_exact(g.weights)
    assert sorted(i // 2 for i in seq) == list(range(n))
    assert sequence_cost(seq, g.weights) == pytest.approx(enumerate_best(g.weights), abs=1e-9)


def test_exact_guard():
    rng = np.random.default_rng(3)
    g = build_dubins_graph(random_passes(rng, EXACT_LIMIT + 1), 2.0)
    with pytest.raises(SolverLimitError):
        solve_route(g, "exact")
    with pytest.raises(ValueError):
        solve_route(g, "magic")


@pytest.mark.parametrize("seed", range(10))
def test_heuristic_vs_exact(seed):
    rng = np.random.default_rng(2000 + seed)
    ps = random_passes(rng, 7)
    exact = dcs(ps, 4.0, "exact")
    heur = dcs(ps, 4.0, "heuristic", seed=seed)
    assert heur.interior_cost >= exact.interior_cost - 1e-9
    assert heur.interior_cost <= 1.5 * exact.interior_cost
    # only transitions differ between routes of one instance
    assert heur.pass_length == pytest.approx(exact.pass_length)


@given(st.integers(0, 10_000), st.integers(2, 16), st.integers(0, 50))
def test_heuristic_route_is_group_hamiltonian(layout, n, seed):
    rng = np.random.default_rng(layout)
    ps = random_passes(rng, n)
    g = build_dubins_graph(ps, 3.0)
    seq = solve_heuristic(g.weights, seed)
    assert sorted(i // 2 for i in seq) == list(range(n))
    route = solve_route(g, "heuristic", seed)
    assert route.interior_cost == pytest.approx(route.pass_length + sequence_cost(seq, g.weights))
    assert sum(t.total_length for t in route.transitions) == pytest.approx(route.transition_length)


def test_heuristic_deterministic():
    ps = random_passes(np.random.default_rng(4), 25)
    a = dcs(ps, 3.0, "heuristic", seed=11)
    b = dcs(ps, 3.0, "heuristic", seed=11)
    assert a.nodes == b.nodes


def test_transitions_join_nodes():
    route = dcs(random_passes(np.random.default_rng(5), 9), 3.0)
    for t, a, b in zip(route.transitions, route.nodes, route.nodes[1:]):
        assert t.start == a.exit and t.end == b.entry
        end = t.integrated_end()
        assert math.hypot(end.x - b.entry.x, end.y - b.entry.y) < 1e-6


def test_route_cost_examples():
    route = dcs([Pass(0, 0, 3.0, 0.0, 10.0, 4.5)], 2.0, "exact")
    # midpoint (3, 5) sits 5 m from the depot
    assert route_cost(route, (0.0, 1.0)) == pytest.approx(20.0)
    assert route_cost(route, (3.0, 5.0)) == pytest.approx(route.interior_cost)
    with pytest.raises(ValueError):
        route_cost(Route([], []), (0, 0))


def test_empty_pass_list():
    with pytest.raises(ValueError):
        build_dubins_graph([], 1.0)
