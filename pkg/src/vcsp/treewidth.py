"""Tree decompositions: min-fill heuristic, exact branch-and-bound for small
graphs, and conversion to nice form (leaf/introduce/forget/join with an empty
root bag and a unique forget node per vertex).
"""

from __future__ import annotations

from .errors import BudgetExceeded, InternalCheckFailed
from .structures import Graph, id_key

__all__ = ["NiceTD", "Node", "build_tree_decomposition", "validate_nice_td",
           "min_fill_order", "exact_order", "width_of_order", "heuristic_width"]

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


class Node:
    __slots__ = ("kind", "bag", "children", "vertex")

    def __init__(self, kind, bag, children=(), vertex=None):
        self.kind = kind
        self.bag = frozenset(bag)
        self.children = tuple(children)
        self.vertex = vertex


class NiceTD:
    """Rooted nice tree decomposition; nodes stored in a list, root last."""

    __slots__ = ("nodes", "root", "width")

    def __init__(self, nodes, root):
        self.nodes = nodes
        self.root = root
        self.width = max((len(n.bag) for n in nodes), default=0) - 1

    def postorder(self):
        # children precede parents by construction
        return range(len(self.nodes))

    def forget_node_of(self):
        out = {}
        for i, n in enumerate(self.nodes):
            if n.kind == FORGET:
                if n.vertex in out:
                    raise InternalCheckFailed(f"vertex {n.vertex} forgotten twice")
                out[n.vertex] = i
        return out


def _adj_copy(G: Graph):
    return {v: set(G.adj[v]) for v in G.vertices}


def _eliminate(adj, v):
    nbrs = adj.pop(v)
    for u in nbrs:
        adj[u].discard(v)
    for u in nbrs:
        for w in nbrs:
            if u != w:
                adj[u].add(w)
    return nbrs


def min_fill_order(G: Graph):
    """Elimination order by minimum fill-in, ties by id; returns (order, width)."""
    adj = _adj_copy(G)
    order = []
    width = -1
    while adj:
        best = None
        for v in sorted(adj, key=id_key):
            nbrs = adj[v]
            fill = 0
            ns = sorted(nbrs, key=id_key)
            for i in range(len(ns)):
                for j in range(i + 1, len(ns)):
                    if ns[j] not in adj[ns[i]]:
                        fill += 1
            if best is None or fill < best[0]:
                best = (fill, v)
        v = best[1]
        width = max(width, len(adj[v]))
        _eliminate(adj, v)
        order.append(v)
    return order, width


def width_of_order(G: Graph, order):
    adj = _adj_copy(G)
    width = -1
    for v in order:
        width = max(width, len(adj[v]))
        _eliminate(adj, v)
    return width


def _component_through(adj_full, eliminated, v):
    """Vertices reachable from v through eliminated vertices only."""
    seen = {v}
    stack = [v]
    border = set()
    while stack:
        u = stack.pop()
        for w in adj_full[u]:
            if w in seen:
                continue
            seen.add(w)
            if w in eliminated:
                stack.append(w)
            else:
                border.add(w)
    return border


def exact_order(G: Graph):
    """Minimum-width elimination order via memoised branch and bound.

    The filled graph after eliminating a set depends only on the set, so the
    search state is the remaining vertex set. |V| <= 20 enforced.
    """
    n = len(G.vertices)
    if n > 20:
        raise BudgetExceeded(f"exact treewidth capped at 20 vertices, got {n}")
    if n == 0:
        return [], -1
    ub_order, ub = min_fill_order(G)
    best = {"width": ub, "order": list(ub_order)}
    adj_full = G.adj
    verts = list(G.vertices)
    memo = {}

    def degrees(remaining):
        elim = set(verts) - remaining
        return {v: len(_component_through(adj_full, elim, v) - {v})
                for v in remaining}

    def dfs(remaining, prefix, cur_width):
        if cur_width >= best["width"]:
            return
        if not remaining:
            best["width"] = cur_width
            best["order"] = list(prefix)
            return
        key = frozenset(remaining)
        seen = memo.get(key)
        if seen is not None and seen <= cur_width:
            return
        memo[key] = cur_width
        degs = degrees(remaining)
        for v in sorted(remaining, key=lambda u: (degs[u], id_key(u))):
            d = degs[v]
            if max(cur_width, d) >= best["width"]:
                continue
            remaining.discard(v)
            prefix.append(v)
            dfs(remaining, prefix, max(cur_width, d))
            prefix.pop()
            remaining.add(v)

    dfs(set(verts), [], 0)
    return best["order"], best["width"]


def _bags_and_tree(G: Graph, order):
    """Elimination bags plus parent links: each bag hangs off the bag of its
    first-eliminated later neighbour (or the next bag in order)."""
    adj = _adj_copy(G)
    pos = {v: i for i, v in enumerate(order)}
    bags = []
    parents = []
    for i, v in enumerate(order):
        nbrs = _eliminate(adj, v)
        bags.append(frozenset(nbrs) | {v})
        later = [u for u in nbrs if pos[u] > i]
        if later:
            parents.append(pos[min(later, key=lambda u: pos[u])])
        elif i + 1 < len(order):
            parents.append(i + 1)
        else:
            parents.append(None)
    return bags, parents


def _nice_from_raw(bags, parents):
    """Convert a raw rooted decomposition to nice form (root bag empty)."""
    nodes = []

    def add(kind, bag, children=(), vertex=None):
        nodes.append(Node(kind, bag, children, vertex))
        return len(nodes) - 1

    children_of = {i: [] for i in range(len(bags))}
    root_raw = None
    for i, p in enumerate(parents):
        if p is None:
            root_raw = i
        else:
            children_of[p].append(i)

    def lift(top_id, from_bag, to_bag):
        """Chain of forgets then introduces taking from_bag to to_bag."""
        cur = set(from_bag)
        nid = top_id
        for v in sorted(from_bag - to_bag, key=id_key):
            cur.discard(v)
            nid = add(FORGET, cur, (nid,), v)
        for v in sorted(to_bag - from_bag, key=id_key):
            cur.add(v)
            nid = add(INTRODUCE, cur, (nid,), v)
        return nid

    def build(i):
        bag = bags[i]
        kids = [lift(build(c), bags[c], bag) for c in children_of[i]]
        if not kids:
            nid = add(LEAF, frozenset())
            return lift(nid, frozenset(), bag)
        while len(kids) > 1:
            merged = add(JOIN, bag, (kids[0], kids[1]))
            kids = [merged] + kids[2:]
        return kids[0]

    if root_raw is None:
        root = add(LEAF, frozenset())
    else:
        top = build(root_raw)
        root = lift(top, bags[root_raw], frozenset())
        if nodes[root].bag:
            raise InternalCheckFailed("root bag not empty")
    return NiceTD(nodes, root)


def build_tree_decomposition(G: Graph, effort="heuristic") -> NiceTD:
    if effort == "heuristic":
        order, _ = min_fill_order(G)
    elif effort == "exact_small":
        order, _ = exact_order(G)
    else:
        raise ValueError(f"unknown effort {effort!r}")
    if not order:
        td = NiceTD([Node(LEAF, frozenset())], 0)
    else:
        bags, parents = _bags_and_tree(G, order)
        td = _nice_from_raw(bags, parents)
    validate_nice_td(G, td)
    return td


def heuristic_width(G: Graph) -> int:
    """Min-fill upper bound on the treewidth of G."""
    return min_fill_order(G)[1]


def validate_nice_td(G: Graph, td: NiceTD):
    """Raise InternalCheckFailed unless td is a valid nice decomposition of G."""
    nodes = td.nodes
    for i, n in enumerate(nodes):
        for c in n.children:
            if c >= i:
                raise InternalCheckFailed("children must precede parents")
        if n.kind == LEAF:
            if n.children or n.bag:
                raise InternalCheckFailed("leaf must have empty bag, no children")
        elif n.kind == INTRODUCE:
            (c,) = n.children
            if n.vertex in nodes[c].bag or n.bag != nodes[c].bag | {n.vertex}:
                raise InternalCheckFailed("bad introduce node")
        elif n.kind == FORGET:
            (c,) = n.children
            if n.vertex not in nodes[c].bag or n.bag != nodes[c].bag - {n.vertex}:
                raise InternalCheckFailed("bad forget node")
        elif n.kind == JOIN:
            a, b = n.children
            if not (n.bag == nodes[a].bag == nodes[b].bag):
                raise InternalCheckFailed("join bags differ")
        else:
            raise InternalCheckFailed(f"unknown node kind {n.kind!r}")
    if nodes[td.root].bag:
        raise InternalCheckFailed("root bag must be empty")

    # every vertex appears, is forgotten exactly once, and its bags connect
    forgotten = td.forget_node_of()
    covered = set()
    for n in nodes:
        covered |= n.bag
    missing = set(G.vertices) - covered
    if missing or covered - set(G.vertices):
        raise InternalCheckFailed(f"vertex coverage mismatch: {missing}")
    if set(forgotten) != set(G.vertices):
        raise InternalCheckFailed("each vertex needs exactly one forget node")

    # edge coverage
    parent = {}
    for i, n in enumerate(nodes):
        for c in n.children:
            if c in parent:
                raise InternalCheckFailed("node with two parents")
            parent[c] = i
    if set(parent) != set(range(len(nodes))) - {td.root}:
        raise InternalCheckFailed("orphan nodes in decomposition")
    for u, v in G.edges():
        if not any(u in n.bag and v in n.bag for n in nodes):
            raise InternalCheckFailed(f"edge {(u, v)} not covered")

    # connectivity of each vertex's bag set: walking up from any bag with v,
    # v stays present until its unique forget node
    for i, n in enumerate(nodes):
        for v in n.bag:
            p = parent.get(i)
            if p is None:
                raise InternalCheckFailed("root bag must be empty")
            pn = nodes[p]
            if v not in pn.bag and not (pn.kind == FORGET and pn.vertex == v):
                raise InternalCheckFailed(f"bags of {v} are not connected")
    if td.width != max((len(n.bag) for n in nodes), default=0) - 1:
        raise InternalCheckFailed("width mislabeled")
