"""Tree decompositions: orders, widths, nice-form construction, validation."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vcsp.generators import grid_left, random_graph
from vcsp.structures import Graph, gaifman
from vcsp.treewidth import (FORGET, INTRODUCE, JOIN, LEAF, NiceTD,
                            build_tree_decomposition, exact_order,
                            heuristic_width, min_fill_order, validate_nice_td,
                            width_of_order)


def path_graph(n):
    vs = [f"v{i}" for i in range(n)]
    return Graph(vs, [(vs[i], vs[i + 1]) for i in range(n - 1)])


def clique_graph(n):
    vs = [f"v{i}" for i in range(n)]
    return Graph(vs, [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]])


def test_min_fill_on_paths_and_cliques():
    assert min_fill_order(path_graph(4))[1] == 1
    assert min_fill_order(clique_graph(4))[1] == 3
    assert min_fill_order(Graph([], []))[1] == -1
    assert min_fill_order(Graph(["a"], []))[1] == 0


def test_exact_order_grid():
    G = gaifman(grid_left(3, 3))
    order, w = exact_order(G)
    assert w == 3
    assert width_of_order(G, order) == 3
    assert sorted(order) == sorted(G.vertices)


def test_exact_order_small_cases():
    assert exact_order(path_graph(5))[1] == 1
    assert exact_order(clique_graph(4))[1] == 3
    G = Graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    assert exact_order(G)[1] == 2
    assert exact_order(Graph([], []))[1] == -1


def test_exact_order_cap():
    from vcsp.errors import BudgetExceeded
    with pytest.raises(BudgetExceeded):
        exact_order(clique_graph(21))


def test_heuristic_width_upper_bounds_exact():
    rng = random.Random(7)
    for _ in range(20):
        G = random_graph(rng, rng.randint(1, 8), 0.4)
        assert heuristic_width(G) >= exact_order(G)[1]


def test_nice_td_shape_and_validity():
    for G in [path_graph(5), clique_graph(4), gaifman(grid_left(3, 4)),
              Graph(["a", "b", "c"], []),  # edgeless
              Graph(["a"], [])]:
        td = build_tree_decomposition(G)
        validate_nice_td(G, td)
        root = td.nodes[td.root]
        assert root.bag == frozenset()
        kinds = {n.kind for n in td.nodes}
        assert kinds <= {LEAF, INTRODUCE, FORGET, JOIN}


def test_nice_td_exact_effort_hits_treewidth():
    G = gaifman(grid_left(3, 3))
    td = build_tree_decomposition(G, effort="exact_small")
    validate_nice_td(G, td)
    assert td.width == 3


def test_forget_node_of_unique():
    G = path_graph(4)
    td = build_tree_decomposition(G)
    fo = td.forget_node_of()
    assert set(fo) == set(G.vertices)
    for v, i in fo.items():
        assert td.nodes[i].kind == FORGET and td.nodes[i].vertex == v


def test_validate_catches_broken_tds():
    G = path_graph(3)
    td = build_tree_decomposition(G)
    # drop an edge from the graph's perspective: validation against a graph
    # with an extra edge must fail (edge not covered by any bag)
    H = Graph(list(G.vertices), list(G.edges()) + [("v0", "v2")])
    with pytest.raises(AssertionError):
        validate_nice_td(H, td)


def test_disconnected_graph_td():
    G = Graph(["a", "b", "c", "d"], [("a", "b"), ("c", "d")])
    td = build_tree_decomposition(G)
    validate_nice_td(G, td)
    assert td.width == 1


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_random_graphs_validate(seed):
    rng = random.Random(seed)
    G = random_graph(rng, rng.randint(1, 9), rng.random())
    td = build_tree_decomposition(G)
    validate_nice_td(G, td)
    assert td.width >= exact_order(G)[1]
    td2 = build_tree_decomposition(G, effort="exact_small")
    validate_nice_td(G, td2)
    assert td2.width == exact_order(G)[1]
