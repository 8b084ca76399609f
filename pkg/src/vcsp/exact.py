"""Exact solvers: exhaustive search and dynamic programming over a nice tree
decomposition.  Both honour a partial assignment rho and return
(optimum value, one optimal total assignment); an infinite optimum means the
instance is infeasible in the given mode.
"""

from __future__ import annotations

from .errors import BudgetExceeded, InstanceFormatError, InternalCheckFailed
from .rational import ZERO, ExtRat
from .structures import ValuedStructure, gaifman, id_key, value
from .treewidth import FORGET, INTRODUCE, JOIN, LEAF, NiceTD, build_tree_decomposition

__all__ = ["solve_naive", "td_solve", "DEFAULT_BUDGET"]

DEFAULT_BUDGET = 20_000_000


def _mode_check(A, C, mode):
    if mode not in ("min", "max"):
        raise InstanceFormatError(f"mode must be 'min' or 'max', got {mode!r}")
    A.validate_left()
    C.validate_right(mode)
    if A.sig != C.sig:
        raise InstanceFormatError("left/right signature mismatch")


def _check_rho(A, C, rho):
    rho = dict(rho or {})
    dom = set(A.domain)
    cod = set(C.domain)
    for v, c in rho.items():
        if v not in dom:
            raise InstanceFormatError(f"rho assigns {v!r} outside the left domain")
        if c not in cod:
            raise InstanceFormatError(f"rho image {c!r} outside the right domain")
    return rho


def solve_naive(A: ValuedStructure, C: ValuedStructure, mode="min", rho=None,
                budget=DEFAULT_BUDGET):
    """Optimum over all total extensions of rho by exhaustive search.

    Ties broken to the lexicographically least assignment in domain order.
    Refuses instances with more than `budget` candidate assignments.
    """
    _mode_check(A, C, mode)
    rho = _check_rho(A, C, rho)
    free = [v for v in sorted(A.domain, key=id_key) if v not in rho]
    cvals = sorted(C.domain, key=id_key)
    need = len(cvals) ** len(free)
    if need > budget:
        raise BudgetExceeded(
            f"solve_naive needs {need} evaluations, budget is {budget}",
            required=need)

    if not free:
        return value(A, C, rho), dict(rho)

    pos = {v: i for i, v in enumerate(free)}
    # bucket each tuple at the free variable assigned last
    buckets = [[] for _ in free]
    base = []  # tuples entirely inside dom(rho)
    for name, args, w in A.pos_tuples():
        idxs = [pos[a] for a in set(args) if a in pos]
        if idxs:
            buckets[max(idxs)].append((name, args, w))
        else:
            base.append((name, args, w))

    h = dict(rho)
    minimise = mode == "min"
    best_val = None
    best_h = None

    def contrib(entries):
        total = ZERO
        for name, args, w in entries:
            term = w * C.get(name, tuple(h[a] for a in args))
            total = total + term  # same-sign infinities only, per mode
        return total

    base_val = contrib(base)
    stack_vals = [base_val]

    def rec(d):
        nonlocal best_val, best_h
        if d == len(free):
            val = stack_vals[-1]
            if best_val is None or (val < best_val if minimise else val > best_val):
                best_val = val
                best_h = dict(h)
            return
        v = free[d]
        for c in cvals:
            h[v] = c
            val = stack_vals[-1] + contrib(buckets[d])
            if best_val is not None:
                # min: contributions only grow; max: -inf is absorbing
                if minimise and val >= best_val:
                    continue
                if not minimise and val.is_minus_inf:
                    continue
            stack_vals.append(val)
            rec(d + 1)
            stack_vals.pop()
        del h[v]

    rec(0)
    if best_val is None:  # every branch pruned against the incumbent
        raise InternalCheckFailed("search ended with no incumbent")
    return best_val, best_h


def _td_cost(td: NiceTD, ncols):
    total = 0
    for n in td.nodes:
        total += ncols ** len(n.bag)
    return total


def td_solve(A: ValuedStructure, C: ValuedStructure, td: NiceTD = None,
             mode="min", rho=None, budget=DEFAULT_BUDGET):
    """Optimum over extensions of rho by DP on a nice tree decomposition of
    the Gaifman graph induced on the unassigned vertices.

    Each tuple is charged at the forget node of its earliest-forgotten free
    variable, where the whole free scope is still inside the child bag; join
    nodes therefore just add tables.
    """
    _mode_check(A, C, mode)
    rho = _check_rho(A, C, rho)
    free = [v for v in A.domain if v not in rho]
    if not free:
        return value(A, C, rho), dict(rho)
    G = gaifman(A).subgraph(free)
    if td is None:
        td = build_tree_decomposition(G, "heuristic")
    covered = set()
    for n in td.nodes:
        covered |= n.bag
    if covered != set(free) or any(
            not any(u in n.bag and v in n.bag for n in td.nodes)
            for u, v in G.edges()):
        raise InstanceFormatError("tree decomposition does not fit the instance")

    cvals = sorted(C.domain, key=id_key)
    cost = _td_cost(td, len(cvals))
    if cost > budget:
        raise BudgetExceeded(
            f"td_solve needs about {cost} cells, budget is {budget}",
            required=cost)

    nodes = td.nodes
    depth = [0] * len(nodes)
    for i in range(len(nodes) - 1, -1, -1):
        for c in nodes[i].children:
            depth[c] = depth[i] + 1
    forget_of = td.forget_node_of()

    charged = {i: [] for i in range(len(nodes))}
    const = ZERO
    for name, args, w in A.pos_tuples():
        fs = [a for a in set(args) if a not in rho]
        if not fs:
            const = const + (w * C.get(name, tuple(rho[a] for a in args)))
            continue
        at = max((forget_of[a] for a in fs), key=lambda i: depth[i])
        child_bag = nodes[nodes[at].children[0]].bag
        if not set(fs) <= child_bag:
            raise InternalCheckFailed(
                f"scope {fs} not inside bag at its charge node")
        charged[at].append((name, args, w))

    minimise = mode == "min"
    tables = [None] * len(nodes)
    choices = [None] * len(nodes)

    def key_of(bag_sorted, assig):
        return tuple(assig[v] for v in bag_sorted)

    bag_sorted = [tuple(sorted(n.bag, key=id_key)) for n in nodes]

    for i, n in enumerate(nodes):
        if n.kind == LEAF:
            tables[i] = {(): ZERO}
        elif n.kind == INTRODUCE:
            (ci,) = n.children
            child = tables[ci]
            cb = bag_sorted[ci]
            nb = bag_sorted[i]
            vpos = nb.index(n.vertex)
            tab = {}
            for ckey, cval in child.items():
                assig = dict(zip(cb, ckey))
                for c in cvals:
                    assig[n.vertex] = c
                    tab[key_of(nb, assig)] = cval
            tables[i] = tab
            tables[ci] = None
        elif n.kind == FORGET:
            (ci,) = n.children
            child = tables[ci]
            cb = bag_sorted[ci]
            nb = bag_sorted[i]
            tup_here = charged[i]
            tab = {}
            choice = {}
            for ckey, cval in child.items():
                assig = dict(zip(cb, ckey))
                total = cval
                for name, args, w in tup_here:
                    img = tuple(assig[a] if a in assig else rho[a] for a in args)
                    total = total + (w * C.get(name, img))
                k = key_of(nb, assig)
                old = tab.get(k)
                if old is None or (total < old if minimise else total > old):
                    tab[k] = total
                    choice[k] = assig[n.vertex]
            tables[i] = tab
            choices[i] = choice
            tables[ci] = None
        elif n.kind == JOIN:
            a, b = n.children
            ta, tb = tables[a], tables[b]
            tables[i] = {k: ta[k] + tb[k] for k in ta}
            tables[a] = tables[b] = None
        else:
            raise InternalCheckFailed(f"unknown node kind {n.kind}")

    root_tab = tables[td.root]
    if list(root_tab) != [()]:
        raise InternalCheckFailed("root table malformed")
    best = root_tab[()] + const

    # witness reconstruction: walk down, fixing each vertex at its forget node
    h = dict(rho)

    def down(i, assig):
        n = nodes[i]
        if n.kind == LEAF:
            return
        if n.kind == INTRODUCE:
            (ci,) = n.children
            sub = dict(assig)
            del sub[n.vertex]
            down(ci, sub)
        elif n.kind == FORGET:
            (ci,) = n.children
            k = key_of(bag_sorted[i], assig)
            c = choices[i][k]
            h[n.vertex] = c
            sub = dict(assig)
            sub[n.vertex] = c
            down(ci, sub)
        else:
            a, b = n.children
            down(a, dict(assig))
            down(b, dict(assig))

    # tables were dropped during the pass to save memory, but choices remain
    down(td.root, {})
    missing = [v for v in free if v not in h]
    if missing:
        raise InternalCheckFailed(f"reconstruction missed {missing}")
    check = value(A, C, h)
    if check != best:
        raise InternalCheckFailed(
            f"witness value {check} differs from DP optimum {best}")
    return best, h
