import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vcsp.errors import BudgetExceeded, InstanceFormatError
from vcsp.exact import solve_naive, td_solve
from vcsp.generators import (SIG2, clique_structure, coloring_structure,
                             grid_left, is_right, path_left, random_left,
                             random_max_sol, random_min_sol, vc_right)
from vcsp.rational import PLUS_INF, rat
from vcsp.structures import (Signature, ValuedStructure, gaifman, value)
from vcsp.treewidth import build_tree_decomposition


def test_vc_path_min():
    val, h = solve_naive(path_left(3), vc_right(), "min")
    assert val == rat(1)
    assert h == {"v1": "0", "v2": "1", "v3": "0"}
    assert value(path_left(3), vc_right(), h) == val


def test_is_triangle_max():
    from vcsp.generators import cycle_left
    val, h = solve_naive(cycle_left(3), is_right(), "max")
    assert val == rat(1)
    assert sum(1 for v in h.values() if v == "1") == 1


def test_is_grid_max():
    A = grid_left(3, 3)
    val, h = solve_naive(A, is_right(), "max")
    assert val == rat(5)
    val2, h2 = td_solve(A, is_right(), mode="max")
    assert val2 == rat(5)
    assert value(A, is_right(), h2) == rat(5)


def test_full_rho_is_trivial():
    A, C = path_left(3), vc_right()
    rho = {"v1": "1", "v2": "0", "v3": "1"}
    assert solve_naive(A, C, "min", rho=rho) == (rat(2), rho)
    assert td_solve(A, C, mode="min", rho=rho) == (rat(2), rho)


def test_partial_rho_respected():
    A, C = path_left(4), vc_right()
    val, h = solve_naive(A, C, "min", rho={"v2": "0"})
    assert h["v2"] == "0"
    assert val == rat(2)  # forced to cover v1 and v3 (or v3,v4): min is 2
    val2, h2 = td_solve(A, C, mode="min", rho={"v2": "0"})
    assert val2 == val and h2["v2"] == "0"


def test_rho_rejects_bad_keys_and_values():
    A, C = path_left(3), vc_right()
    with pytest.raises(InstanceFormatError):
        solve_naive(A, C, "min", rho={"zz": "0"})
    with pytest.raises(InstanceFormatError):
        solve_naive(A, C, "min", rho={"v1": "9"})


def test_budget_refusal():
    A, C = grid_left(4, 6), vc_right()
    with pytest.raises(BudgetExceeded) as ei:
        solve_naive(A, C, "min", budget=1000)
    assert ei.value.required == 2 ** 24
    with pytest.raises(BudgetExceeded):
        td_solve(A, C, mode="min", budget=10)


def test_mode_validation():
    A = path_left(3)
    with pytest.raises(InstanceFormatError):
        solve_naive(A, vc_right(), "max")  # +inf not allowed in max mode
    with pytest.raises(InstanceFormatError):
        solve_naive(A, is_right(), "min")
    with pytest.raises(InstanceFormatError):
        solve_naive(A, vc_right(), "argmin")


def test_infeasible_min_is_plus_inf():
    # a forced loop against a crisp disequality is unsatisfiable
    sig = Signature([("f", 2), ("u", 1)])
    A = ValuedStructure(sig, ["x"], {"f": {("x", "x"): rat(1)}, "u": {}})
    C = ValuedStructure(sig, ["a", "b"],
                        {"f": {("a", "a"): PLUS_INF, ("b", "b"): PLUS_INF},
                         "u": {}})
    val, h = solve_naive(A, C, "min")
    assert val.is_plus_inf
    assert h == {"x": "a"}
    val2, h2 = td_solve(A, C, mode="min")
    assert val2.is_plus_inf


def test_infeasible_max_is_minus_inf():
    from vcsp.rational import MINUS_INF
    sig = Signature([("f", 2)])
    A = ValuedStructure(sig, ["x"], {"f": {("x", "x"): rat(1)}})
    C = ValuedStructure(sig, ["a"], {"f": {("a", "a"): MINUS_INF}})
    val, _ = solve_naive(A, C, "max")
    assert val.is_minus_inf
    val2, _ = td_solve(A, C, mode="max")
    assert val2.is_minus_inf


def test_lex_least_witness():
    # either endpoint covers the single edge; lex order settles the tie
    A, C = path_left(2), vc_right()
    val, h = solve_naive(A, C, "min")
    assert val == rat(1)
    assert h == {"v1": "0", "v2": "1"}
    val2, h2 = td_solve(A, C, mode="min")
    assert val2 == val
    assert value(A, C, h2) == val


def test_td_choice_invariance():
    A, C = grid_left(3, 4), vc_right()
    G = gaifman(A)
    td_h = build_tree_decomposition(G, "heuristic")
    td_x = build_tree_decomposition(G, "exact_small")
    v1, h1 = td_solve(A, C, td=td_h, mode="min")
    v2, h2 = td_solve(A, C, td=td_x, mode="min")
    assert v1 == v2
    assert value(A, C, h1) == value(A, C, h2) == v1


def test_td_rejects_foreign_decomposition():
    A, C = grid_left(2, 3), vc_right()
    other = build_tree_decomposition(gaifman(path_left(3)))
    with pytest.raises(InstanceFormatError):
        td_solve(A, C, td=other, mode="min")


def test_coloring_optimum_matches_closed_form():
    # best mapping of K_n colours s of i classes: s(n-1) pairs pay 1 minus
    # within-class -inf unless s classes partition sizes 1... the optimum is
    # i*(n-1) at full colour usage when n >= i
    val, _ = solve_naive(clique_structure(5), coloring_structure(3), "max")
    assert val == rat(12)
    val2, _ = solve_naive(clique_structure(4), coloring_structure(2), "max")
    assert val2 == rat(6)


def test_monotone_under_extra_weight():
    A, C = path_left(4), vc_right()
    val, _ = solve_naive(A, C, "min")
    tabs = {"f": dict(A.tables["f"]), "u": dict(A.tables["u"])}
    tabs["u"][("v2",)] = rat(5)
    A2 = ValuedStructure(A.sig, A.domain, tabs)
    val2, _ = solve_naive(A2, C, "min")
    assert val2 >= val


# -- randomised agreement ----------------------------------------------------

@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_td_matches_naive_min(seed):
    rng = random.Random(seed)
    A = random_left(rng, rng.randint(1, 6), p=0.5)
    C = random_min_sol(rng, rng.randint(2, 3))
    v1, h1 = solve_naive(A, C, "min")
    v2, h2 = td_solve(A, C, mode="min")
    assert v1 == v2
    assert value(A, C, h2) == v2


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_td_matches_naive_max(seed):
    rng = random.Random(seed)
    A = random_left(rng, rng.randint(1, 6), p=0.5)
    C = random_max_sol(rng, rng.randint(2, 3))
    v1, h1 = solve_naive(A, C, "max")
    v2, h2 = td_solve(A, C, mode="max")
    assert v1 == v2
    assert value(A, C, h2) == v2


@given(st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_td_matches_naive_with_rho(seed):
    rng = random.Random(seed)
    A = random_left(rng, rng.randint(2, 6), p=0.5)
    C = random_min_sol(rng, 2)
    rho = {v: rng.choice(C.domain) for v in A.domain if rng.random() < 0.4}
    v1, _ = solve_naive(A, C, "min", rho=rho)
    v2, h2 = td_solve(A, C, mode="min", rho=rho)
    assert v1 == v2
    for k, c in rho.items():
        assert h2[k] == c
