"""Signatures, valued structures, assignments, and structural operations.

A valued structure assigns a cost table to every signature symbol. Left-hand
structures carry finite non-negative weights and are sparse (default 0);
right-hand structures are total functions represented as a default plus
exceptional entries, valued in Q>=0 union {+inf} for minimisation or
Q>=0 union {-inf} for maximisation.

Element ids are hashable and ordered by str(); all tie-breaking anywhere in
the package is lexicographic in that order.
"""

from __future__ import annotations

import itertools
from collections import deque

from .errors import BudgetExceeded, InstanceFormatError
from .rational import ExtRat, MINUS_INF, PLUS_INF, ZERO, rat

__all__ = [
    "Signature", "ValuedStructure", "Graph", "value", "gaifman", "restrict",
    "rescale", "product", "disjoint_union", "rel_structure",
    "classify_max_sol", "classify_min_sol", "id_key",
]


def id_key(x):
    """Canonical sort key for element ids (stable across mixed types)."""
    return str(x)


class Signature:
    """Ordered list of (symbol name, arity >= 1) with unique names."""

    __slots__ = ("symbols", "_arity")

    def __init__(self, symbols):
        syms = []
        arity = {}
        for name, ar in symbols:
            if not isinstance(name, str) or not name:
                raise InstanceFormatError(f"bad symbol name: {name!r}")
            if name in arity:
                raise InstanceFormatError(f"duplicate symbol: {name}")
            ar = int(ar)
            if ar < 1:
                raise InstanceFormatError(f"arity must be >= 1: {name}")
            syms.append((name, ar))
            arity[name] = ar
        self.symbols = tuple(syms)
        self._arity = arity

    def arity(self, name):
        return self._arity[name]

    @property
    def names(self):
        return tuple(n for n, _ in self.symbols)

    @property
    def max_arity(self):
        return max(a for _, a in self.symbols) if self.symbols else 0

    def __contains__(self, name):
        return name in self._arity

    def __eq__(self, other):
        return isinstance(other, Signature) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"Signature({list(self.symbols)})"


class ValuedStructure:
    """Immutable cost tables over a shared signature.

    tables[sym] holds only entries that differ from defaults[sym]; get()
    is total over domain tuples.
    """

    __slots__ = ("sig", "domain", "tables", "defaults", "_dom_set", "_pos_cache")

    def __init__(self, sig, domain, tables, defaults=None):
        self._pos_cache = None
        self.sig = sig
        self.domain = tuple(domain)
        self._dom_set = frozenset(self.domain)
        if len(self._dom_set) != len(self.domain):
            raise InstanceFormatError("duplicate domain elements")
        defaults = defaults or {}
        self.defaults = {name: rat(defaults.get(name, 0)) for name in sig.names}
        canon = {}
        for name, ar in sig.symbols:
            default = self.defaults[name]
            entries = {}
            for args, val in (tables.get(name) or {}).items():
                args = tuple(args)
                if len(args) != ar:
                    raise InstanceFormatError(
                        f"tuple arity mismatch for {name}: {args}")
                for a in args:
                    if a not in self._dom_set:
                        raise InstanceFormatError(
                            f"tuple element {a!r} not in domain ({name})")
                val = rat(val)
                if val != default:
                    entries[args] = val
            canon[name] = entries
        self.tables = canon

    # -- access -------------------------------------------------------------

    def get(self, name, args) -> ExtRat:
        t = self.tables[name]
        args = tuple(args)
        if args in t:
            return t[args]
        return self.defaults[name]

    def pos_tuples(self):
        """Deterministic list of (name, args, weight) with weight > 0.

        Only meaningful for sparse structures (default 0 everywhere); a
        positive default raises since the set would be the full table.
        """
        if self._pos_cache is None:
            out = []
            for name, ar in self.sig.symbols:
                if self.defaults[name].sign() > 0:
                    raise InstanceFormatError(
                        f"pos_tuples on structure with positive default ({name})")
                entries = self.tables[name]
                for args in sorted(entries, key=lambda t: tuple(map(id_key, t))):
                    w = entries[args]
                    if w.sign() > 0:
                        out.append((name, args, w))
            self._pos_cache = tuple(out)
        return self._pos_cache

    def all_tuples(self, name):
        """Every args tuple over the domain, in lexicographic id order."""
        ar = self.sig.arity(name)
        dom = sorted(self.domain, key=id_key)
        return itertools.product(dom, repeat=ar)

    # -- validation ---------------------------------------------------------

    def validate_left(self):
        for name in self.sig.names:
            for v in [self.defaults[name], *self.tables[name].values()]:
                if not v.is_finite or v.sign() < 0:
                    raise InstanceFormatError(
                        f"left-hand values must be finite and >= 0 ({name}: {v})")

    def validate_right(self, mode):
        bad = MINUS_INF if mode == "min" else PLUS_INF
        for name in self.sig.names:
            for v in [self.defaults[name], *self.tables[name].values()]:
                if v == bad or (v.is_finite and v.sign() < 0):
                    raise InstanceFormatError(
                        f"right-hand value {v} not allowed in mode {mode} ({name})")

    def right_modes(self):
        """Which of min/max this structure is a valid right-hand side for."""
        has_plus = has_minus = False
        for name in self.sig.names:
            for v in [self.defaults[name], *self.tables[name].values()]:
                if v.is_finite and v.sign() < 0:
                    raise InstanceFormatError("negative finite right-hand value")
                has_plus |= v.is_plus_inf
                has_minus |= v.is_minus_inf
        if has_plus and has_minus:
            raise InstanceFormatError("right-hand structure mixes +inf and -inf")
        if has_plus:
            return ("min",)
        if has_minus:
            return ("max",)
        return ("min", "max")

    # -- equality -----------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, ValuedStructure)
                and self.sig == other.sig
                and self.domain == other.domain
                and self.defaults == other.defaults
                and self.tables == other.tables)

    def __hash__(self):
        return hash((self.sig, self.domain))

    def __repr__(self):
        n = sum(len(t) for t in self.tables.values())
        return f"ValuedStructure(|dom|={len(self.domain)}, entries={n})"


class Graph:
    """Undirected graph with loops recorded separately from adjacency."""

    __slots__ = ("vertices", "adj", "loops")

    def __init__(self, vertices, edges=(), loops=()):
        self.vertices = tuple(sorted(vertices, key=id_key))
        vs = set(self.vertices)
        self.adj = {v: set() for v in self.vertices}
        for u, v in edges:
            if u not in vs or v not in vs:
                raise ValueError(f"edge endpoint not a vertex: {(u, v)}")
            if u == v:
                continue
            self.adj[u].add(v)
            self.adj[v].add(u)
        self.loops = frozenset(loops)

    def edges(self):
        out = []
        for v in self.vertices:
            for u in self.adj[v]:
                if id_key(v) < id_key(u) or (id_key(v) == id_key(u) and v is not u):
                    out.append((v, u))
        return sorted(out, key=lambda e: (id_key(e[0]), id_key(e[1])))

    def n_edges(self):
        return sum(len(s) for s in self.adj.values()) // 2

    def neighbors(self, v):
        return self.adj[v]

    def subgraph(self, keep):
        keep = set(keep)
        edges = [(u, v) for u, v in self.edges() if u in keep and v in keep]
        return Graph([v for v in self.vertices if v in keep], edges,
                     [v for v in self.loops if v in keep])

    def without(self, drop):
        drop = set(drop)
        return self.subgraph([v for v in self.vertices if v not in drop])

    def components(self):
        seen = set()
        comps = []
        for root in self.vertices:
            if root in seen:
                continue
            comp = []
            dq = deque([root])
            seen.add(root)
            while dq:
                v = dq.popleft()
                comp.append(v)
                for u in sorted(self.adj[v], key=id_key):
                    if u not in seen:
                        seen.add(u)
                        dq.append(u)
            comps.append(sorted(comp, key=id_key))
        return comps

    def bfs_distances(self, root):
        dist = {root: 0}
        dq = deque([root])
        while dq:
            v = dq.popleft()
            for u in sorted(self.adj[v], key=id_key):
                if u not in dist:
                    dist[u] = dist[v] + 1
                    dq.append(u)
        return dist

    def __len__(self):
        return len(self.vertices)


# ---------------------------------------------------------------------------
# operations


def _check_shared_sig(a, b):
    if a.sig != b.sig:
        raise InstanceFormatError("structures do not share a signature")


def value(A: ValuedStructure, C: ValuedStructure, h: dict) -> ExtRat:
    """Sum of f_A(x) * f_C(h(x)) over positively weighted tuples of A."""
    _check_shared_sig(A, C)
    total = ZERO
    for name, args, w in A.pos_tuples():
        term = w * C.get(name, tuple(h[a] for a in args))
        try:
            total = total + term
        except ArithmeticError as e:
            raise ArithmeticError(
                f"{e} at tuple ({name}, {args})") from None
    return total


def gaifman(A: ValuedStructure) -> Graph:
    """Co-occurrence graph of positively weighted tuples.

    A tuple whose scope is a single repeated element yields a recorded loop;
    loops never feed layering or treewidth.
    """
    edges = set()
    loops = set()
    for name, args, _ in A.pos_tuples():
        scope = sorted(set(args), key=id_key)
        if len(scope) == 1 and len(args) > 1:
            loops.add(scope[0])
        for i in range(len(scope)):
            for j in range(i + 1, len(scope)):
                edges.add((scope[i], scope[j]))
    return Graph(A.domain, edges, loops)


def restrict(A: ValuedStructure, X) -> ValuedStructure:
    """Induced substructure on X: keeps tuples whose scope lies inside X."""
    X = list(X)
    xs = set(X)
    if not xs <= A._dom_set:
        raise InstanceFormatError("restriction set is not a subset of the domain")
    tables = {}
    for name in A.sig.names:
        tables[name] = {args: v for args, v in A.tables[name].items()
                        if all(a in xs for a in args)}
    order = [v for v in A.domain if v in xs]
    return ValuedStructure(A.sig, order, tables, A.defaults)


def rescale(A: ValuedStructure, lam) -> ValuedStructure:
    lam = rat(lam)
    if not lam.is_finite or lam.sign() < 0:
        raise InstanceFormatError(f"rescale factor must be finite >= 0: {lam}")
    tables = {name: {args: lam * v for args, v in A.tables[name].items()}
              for name in A.sig.names}
    defaults = {name: lam * A.defaults[name] for name in A.sig.names}
    return ValuedStructure(A.sig, A.domain, tables, defaults)


def product(C: ValuedStructure, D: ValuedStructure) -> ValuedStructure:
    """Pairwise-domain structure with values f_C(x) + f_D(y)."""
    _check_shared_sig(C, D)
    dom = [(c, d) for c in C.domain for d in D.domain]
    tables = {}
    defaults = {}
    for name, ar in C.sig.symbols:
        defaults[name] = C.defaults[name] + D.defaults[name]
        entries = {}
        for args in itertools.product(dom, repeat=ar):
            left = C.get(name, tuple(a[0] for a in args))
            right = D.get(name, tuple(a[1] for a in args))
            entries[args] = left + right
        tables[name] = entries
    return ValuedStructure(C.sig, dom, tables, defaults)


def disjoint_union(parts) -> ValuedStructure:
    """Union with component-tagged element ids; cross-component tuples are 0."""
    parts = list(parts)
    if not parts:
        raise InstanceFormatError("disjoint_union of nothing")
    sig = parts[0].sig
    dom = []
    tables = {name: {} for name in sig.names}
    for i, P in enumerate(parts):
        _check_shared_sig(parts[0], P)
        P.validate_left()
        tag = lambda v: f"{i}:{v}"
        dom.extend(tag(v) for v in P.domain)
        for name in sig.names:
            for args, v in P.tables[name].items():
                tables[name][tuple(tag(a) for a in args)] = v
    return ValuedStructure(sig, dom, tables)


def rel_structure(C: ValuedStructure) -> ValuedStructure:
    """{0, inf} encoding of feasibility and optimality, per symbol."""
    C.validate_right("min")
    symbols = []
    for name, ar in C.sig.symbols:
        symbols.append((name + "_feas", ar))
        symbols.append((name + "_opt", ar))
    sig = Signature(symbols)
    tables = {}
    defaults = {}
    for name, ar in C.sig.symbols:
        feas, opt = {}, {}
        for args in C.all_tuples(name):
            v = C.get(name, args)
            feas[args] = ZERO if v.is_finite else PLUS_INF
            opt[args] = ZERO if v.is_zero() else PLUS_INF
        tables[name + "_feas"] = feas
        tables[name + "_opt"] = opt
        defaults[name + "_feas"] = PLUS_INF
        defaults[name + "_opt"] = PLUS_INF
    return ValuedStructure(sig, C.domain, tables, defaults)


def classify_max_sol(C: ValuedStructure):
    """Least bottom element under which feasibility survives bottoming-out.

    c is a valid bottom when replacing any subset of coordinates of any
    feasible tuple by c keeps the tuple feasible; single-coordinate
    replacements suffice by induction.
    """
    C.validate_right("max")
    for c in sorted(C.domain, key=id_key):
        ok = True
        for name, ar in C.sig.symbols:
            for args in C.all_tuples(name):
                if C.get(name, args).is_minus_inf:
                    continue
                for i in range(ar):
                    if args[i] == c:
                        continue
                    sub = args[:i] + (c,) + args[i + 1:]
                    if C.get(name, sub).is_minus_inf:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            return c
    return None


def _single_step_safe(C: ValuedStructure):
    """safe[(a, b)]: may a sit immediately below b in a candidate order?

    True when bumping one coordinate from a to b never turns a finite value
    infinite or a zero value positive, for every non-unary symbol.
    """
    dom = sorted(C.domain, key=id_key)
    safe = {}
    for a in dom:
        for b in dom:
            if a == b:
                continue
            ok = True
            for name, ar in C.sig.symbols:
                if ar < 2:
                    continue
                for args in C.all_tuples(name):
                    v = C.get(name, args)
                    if v.is_plus_inf:
                        continue
                    for i in range(ar):
                        if args[i] != a:
                            continue
                        w = C.get(name, args[:i] + (b,) + args[i + 1:])
                        if w.is_plus_inf or (v.is_zero() and not w.is_zero()):
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            safe[(a, b)] = ok
    return safe


def classify_min_sol(C: ValuedStructure):
    """Lexicographically first total order making every non-unary symbol
    monotone: raising coordinates preserves finiteness and zero-ness.

    Chains of immediate-successor bumps generate all coordinatewise
    comparisons, so validity of an order depends only on its adjacent pairs.
    Returns the order ascending (top element last), or None.
    """
    C.validate_right("min")
    dom = sorted(C.domain, key=id_key)
    if len(dom) > 8:
        raise BudgetExceeded(f"min-sol order search capped at |C| <= 8, got {len(dom)}")
    if len(dom) == 1:
        return tuple(dom)
    safe = _single_step_safe(C)

    def extend(prefix, rest):
        if not rest:
            return prefix
        for nxt in rest:
            if safe[(prefix[-1], nxt)]:
                got = extend(prefix + [nxt], [r for r in rest if r != nxt])
                if got:
                    return got
        return None

    for first in dom:
        got = extend([first], [d for d in dom if d != first])
        if got:
            return tuple(got)
    return None
