"""Instance generators and named fixtures.

Left-hand structures use the signature f/2 + u/1 unless noted; the named
right-hand fixtures used by the duality machinery (cliques, colourings,
loop-cliques, the clique reduction) are binary-only.  All generation is
deterministic given a seed, and every generated right-hand structure passes
its classifier by construction.
"""

from __future__ import annotations

import random

from .errors import InstanceFormatError, InternalCheckFailed
from .rational import MINUS_INF, PLUS_INF, ZERO, Q, rat
from .structures import (Graph, Signature, ValuedStructure, classify_max_sol,
                         classify_min_sol)

__all__ = [
    "SIG2", "SIGE", "grid_left", "path_left", "cycle_left", "apex_grid_left",
    "vc_right", "is_right", "all_zero_right", "loop_reward_right",
    "clique_structure", "coloring_structure", "loop_clique",
    "max_clique_reduction", "random_graph", "random_left",
    "random_bounded_tw_left", "random_min_sol", "random_max_sol",
    "maxsol_catalogue", "crisp_k3", "gen_template", "TEMPLATES",
]

SIG2 = Signature([("f", 2), ("u", 1)])   # weighted edges + vertex weights
SIGE = Signature([("f", 2)])             # edge-only


def _edge_unary_left(vertices, edges, edge_w=1, unary_w=1):
    f = {tuple(e): Q(edge_w) for e in edges}
    u = {(v,): Q(unary_w) for v in vertices} if unary_w else {}
    return ValuedStructure(SIG2, vertices, {"f": f, "u": u})


def grid_left(rows, cols, edge_w=1, unary_w=1):
    """rows x cols grid; ids "v{r}_{c}"; each edge emitted once (right, down)."""
    if rows < 1 or cols < 1:
        raise InstanceFormatError("grid needs rows, cols >= 1")
    vid = lambda r, c: f"v{r}_{c}"
    verts = [vid(r, c) for r in range(rows) for c in range(cols)]
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c)))
    return _edge_unary_left(verts, edges, edge_w, unary_w)


def path_left(n, edge_w=1, unary_w=1):
    if n < 1:
        raise InstanceFormatError("path needs n >= 1")
    verts = [f"v{i}" for i in range(1, n + 1)]
    edges = [(verts[i], verts[i + 1]) for i in range(n - 1)]
    return _edge_unary_left(verts, edges, edge_w, unary_w)


def cycle_left(n, edge_w=1, unary_w=1):
    if n < 3:
        raise InstanceFormatError("cycle needs n >= 3")
    verts = [f"v{i}" for i in range(1, n + 1)]
    edges = [(verts[i], verts[(i + 1) % n]) for i in range(n)]
    return _edge_unary_left(verts, edges, edge_w, unary_w)


def apex_grid_left(rows, cols, edge_w=1, unary_w=1):
    """Grid plus one vertex adjacent to every grid vertex."""
    base = grid_left(rows, cols, edge_w, unary_w)
    verts = list(base.domain) + ["apex"]
    f = dict(base.tables["f"])
    for v in base.domain:
        f[("apex", v)] = Q(edge_w)
    u = dict(base.tables["u"])
    if unary_w:
        u[("apex",)] = Q(unary_w)
    return ValuedStructure(SIG2, verts, {"f": f, "u": u})


def vc_right():
    """Pay for picked endpoints, forbid uncovered edges; a Min-Sol structure."""
    tables = {"f": {("0", "0"): PLUS_INF}, "u": {("1",): Q(1)}}
    return ValuedStructure(SIG2, ["0", "1"], tables)


def is_right():
    """Reward picked vertices, forbid picked edges; bottom element "0"."""
    tables = {"f": {("1", "1"): MINUS_INF}, "u": {("1",): Q(1)}}
    return ValuedStructure(SIG2, ["0", "1"], tables)


def all_zero_right(k=2):
    dom = [str(i) for i in range(k)]
    return ValuedStructure(SIG2, dom, {"f": {}, "u": {}})


def loop_reward_right(k=2):
    """Unit reward for mapping an edge onto a single element."""
    dom = [str(i) for i in range(k)]
    f = {(d, d): Q(1) for d in dom}
    return ValuedStructure(SIG2, dom, {"f": f, "u": {}})


def crisp_k3():
    """Proper-3-colouring structure: infinite cost on monochromatic edges."""
    dom = ["b", "g", "r"]
    f = {(d, d): PLUS_INF for d in dom}
    return ValuedStructure(SIG2, dom, {"f": f, "u": {}})


# ---------------------------------------------------------------------------
# binary-only fixtures used on the maximisation/duality side


def clique_structure(n):
    """K_n as a left structure: every ordered pair of distinct ids, weight 1."""
    if n < 1:
        raise InstanceFormatError("clique needs n >= 1")
    dom = [str(i) for i in range(1, n + 1)]
    f = {(a, b): Q(1) for a in dom for b in dom if a != b}
    return ValuedStructure(SIGE, dom, {"f": f})


def coloring_structure(i):
    """Reward pairs with a coloured endpoint; forbid repeating a colour.

    Distinct colours on both ends pay 1, a single coloured end pays 1/2, so
    a tuple pays per coloured endpoint; uncoloured pairs are free.
    """
    if i < 1:
        raise InstanceFormatError("coloring needs i >= 1")
    cols = [str(c) for c in range(1, i + 1)]
    dom = cols + ["bot"]
    f = {}
    for x in cols:
        for y in cols:
            f[(x, y)] = MINUS_INF if x == y else Q(1)
        f[(x, "bot")] = Q(1, 2)
        f[("bot", x)] = Q(1, 2)
    return ValuedStructure(SIGE, dom, {"f": f})


def loop_clique(n):
    """K_n with unit loops and 1/n edges (ordered pairs)."""
    if n < 1:
        raise InstanceFormatError("loop-clique needs n >= 1")
    dom = [str(i) for i in range(1, n + 1)]
    f = {}
    for a in dom:
        for b in dom:
            f[(a, b)] = Q(1) if a == b else Q(1, n)
    return ValuedStructure(SIGE, dom, {"f": f})


def max_clique_reduction(G: Graph):
    """Right-hand structure whose optimum against K_{|V|+1} is the largest
    clique of G: repeated or non-adjacent vertex images are forbidden, one
    marker element pays 1 per vertex image, and "bot" opts out."""
    for v in G.vertices:
        if v in ("*", "bot"):
            raise InstanceFormatError("vertex ids '*' and 'bot' are reserved")
    dom = list(G.vertices) + ["*", "bot"]
    f = {}
    vs = set(G.vertices)
    for x in dom:
        for y in dom:
            if x in vs and y in vs and (x == y or y not in G.adj[x]):
                f[(x, y)] = MINUS_INF
            elif x == "*" and y == "*":
                f[(x, y)] = MINUS_INF
            elif x == "*" and y in vs:
                f[(x, y)] = Q(1)
    return ValuedStructure(SIGE, dom, {"f": f})


# ---------------------------------------------------------------------------
# randomised generators


def random_graph(rng: random.Random, n, p=0.5, prefix="x"):
    verts = [f"{prefix}{i}" for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append((verts[i], verts[j]))
    return Graph(verts, edges)


_WEIGHTS = tuple(rat(x) for x in (Q(1), Q(1), Q(1, 2), Q(2), Q(3, 2), Q(3)))


def random_left(rng: random.Random, n, p=0.5, unary_p=0.7, loop_p=0.1):
    """Random small left structure on f/2 + u/1, rational weights."""
    verts = [f"x{i}" for i in range(n)]
    f = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                f[(verts[i], verts[j])] = rng.choice(_WEIGHTS)
    for v in verts:
        if rng.random() < loop_p:
            f[(v, v)] = rng.choice(_WEIGHTS)
    u = {}
    for v in verts:
        if rng.random() < unary_p:
            u[(v,)] = rng.choice(_WEIGHTS)
    return ValuedStructure(SIG2, verts, {"f": f, "u": u})


def random_bounded_tw_left(rng: random.Random, n, k, keep=0.8):
    """Random subgraph of a k-tree: treewidth at most k by construction."""
    if n < 1 or k < 1:
        raise InstanceFormatError("need n >= 1, k >= 1")
    verts = [f"x{i}" for i in range(n)]
    edges = set()
    base = verts[:min(k + 1, n)]
    for i in range(len(base)):
        for j in range(i + 1, len(base)):
            edges.add((base[i], base[j]))
    cliques = [tuple(base)]
    for idx in range(len(base), n):
        v = verts[idx]
        host = list(rng.choice(cliques))
        rng.shuffle(host)
        attach = host[:k]
        for u_ in attach:
            edges.add((u_, v))
        for sub in range(len(attach)):
            cliques.append(tuple(attach[:sub] + attach[sub + 1:] + [v, attach[sub]])[:k + 1])
        cliques.append(tuple(attach + [v]))
    f = {}
    for a, b in sorted(edges):
        if rng.random() < keep:
            f[(a, b)] = rng.choice(_WEIGHTS)
    u = {(v,): rng.choice(_WEIGHTS) for v in verts if rng.random() < 0.8}
    return ValuedStructure(SIG2, verts, {"f": f, "u": u})


def random_min_sol(rng: random.Random, size):
    """Random minimisation right structure made monotone for the id order by
    an upward repair pass, so the classifier succeeds by construction."""
    dom = [f"c{i}" for i in range(size)]
    tab = {}
    for i in range(size):
        for j in range(size):
            r = rng.random()
            if r < 0.25:
                tab[(i, j)] = ZERO
            elif r < 0.55:
                tab[(i, j)] = rng.choice(_WEIGHTS)
            else:
                tab[(i, j)] = PLUS_INF
    # repair: raising a coordinate must keep zeros zero and finites finite
    for i in range(size):
        for j in range(size):
            preds = []
            if i > 0:
                preds.append(tab[(i - 1, j)])
            if j > 0:
                preds.append(tab[(i, j - 1)])
            if any(p.is_zero() for p in preds):
                tab[(i, j)] = ZERO
            elif any(p.is_finite for p in preds) and tab[(i, j)].is_plus_inf:
                tab[(i, j)] = rng.choice(_WEIGHTS)
    f = {(dom[i], dom[j]): v for (i, j), v in tab.items()}
    u = {}
    for c in dom:
        r = rng.random()
        if r < 0.4:
            u[(c,)] = rng.choice(_WEIGHTS)
        elif r < 0.55:
            u[(c,)] = PLUS_INF
    C = ValuedStructure(SIG2, dom, {"f": f, "u": u})
    if classify_min_sol(C) is None:
        raise InternalCheckFailed("min-sol repair failed to produce an order")
    return C


def random_max_sol(rng: random.Random, size):
    """Random maximisation right structure closed under bottoming-out at c0."""
    dom = [f"c{i}" for i in range(size)]
    f = {}
    for a in dom:
        for b in dom:
            r = rng.random()
            if r < 0.3:
                f[(a, b)] = MINUS_INF
            elif r < 0.6:
                f[(a, b)] = ZERO
            else:
                f[(a, b)] = rng.choice(_WEIGHTS)
    u = {}
    for a in dom:
        r = rng.random()
        if r < 0.2:
            u[(a,)] = MINUS_INF
        elif r < 0.6:
            u[(a,)] = rng.choice(_WEIGHTS)
        else:
            u[(a,)] = ZERO
    bot = dom[0]
    # close under replacing any subset of coordinates by the bottom element
    for a in dom:
        for b in dom:
            if not f[(a, b)].is_minus_inf:
                for x in ((bot, b), (a, bot), (bot, bot)):
                    if f[x].is_minus_inf:
                        f[x] = ZERO
        if not u[(a,)].is_minus_inf and u[(bot,)].is_minus_inf:
            u[(bot,)] = ZERO
    C = ValuedStructure(SIG2, dom, {"f": f, "u": u})
    got = classify_max_sol(C)
    if got is None:
        raise InternalCheckFailed("max-sol repair failed to produce a bottom")
    return C


def maxsol_catalogue():
    """Named right-hand fixtures on f/2 + u/1 for dominance comparisons."""
    col1 = coloring_structure(1)
    col2 = coloring_structure(2)

    def with_unary(C):
        tabs = {"f": dict(C.tables["f"]), "u": {}}
        return ValuedStructure(SIG2, C.domain, tabs, {"f": C.defaults["f"]})

    return [
        ("independent-set", is_right()),
        ("all-zero", all_zero_right()),
        ("loop-reward", loop_reward_right()),
        ("opt-out-1", with_unary(col1)),
        ("opt-out-2", with_unary(col2)),
    ]


# ---------------------------------------------------------------------------
# CLI templates: name -> (A, C) builders


def _t_vc_grid(rng, rows=4, cols=4, **_):
    return grid_left(rows, cols), vc_right()


def _t_is_grid(rng, rows=4, cols=4, **_):
    return grid_left(rows, cols), is_right()


def _t_path(rng, n=5, struct="vc", **_):
    return path_left(n), (vc_right() if struct == "vc" else is_right())


def _t_cycle(rng, n=5, struct="vc", **_):
    return cycle_left(n), (vc_right() if struct == "vc" else is_right())


def _t_clique(rng, n=4, i=None, **_):
    return clique_structure(n), coloring_structure(i if i else n)


def _t_coloring(rng, n=4, i=2, **_):
    return clique_structure(n), coloring_structure(i)


def _t_loop_clique(rng, n=4, **_):
    return loop_clique(n), loop_reward_right()


def _t_clique_reduction(rng, n=4, edge_prob=0.5, **_):
    G = random_graph(rng, n, edge_prob, prefix="g")
    return clique_structure(n + 1), max_clique_reduction(G)


def _t_random_minsol(rng, n=5, size=3, edge_prob=0.5, **_):
    return random_left(rng, n, edge_prob), random_min_sol(rng, size)


def _t_random_maxsol(rng, n=5, size=3, edge_prob=0.5, **_):
    return random_left(rng, n, edge_prob), random_max_sol(rng, size)


def _t_apex_grid(rng, rows=4, cols=8, **_):
    return apex_grid_left(rows, cols), vc_right()


TEMPLATES = {
    "vc-grid": _t_vc_grid,
    "is-grid": _t_is_grid,
    "path": _t_path,
    "cycle": _t_cycle,
    "clique": _t_clique,
    "coloring": _t_coloring,
    "loop-clique": _t_loop_clique,
    "clique-reduction": _t_clique_reduction,
    "random-minsol": _t_random_minsol,
    "random-maxsol": _t_random_maxsol,
    "apex-grid": _t_apex_grid,
}


def gen_template(name, seed=0, **params):
    if name not in TEMPLATES:
        raise InstanceFormatError(
            f"unknown template {name!r}; have {sorted(TEMPLATES)}")
    rng = random.Random(seed)
    return TEMPLATES[name](rng, **params)
