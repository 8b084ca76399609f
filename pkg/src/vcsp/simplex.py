"""Exact linear programming over the rationals.

Two-phase primal simplex on a dense tableau of gmpy2 rationals.  Every row
gets an artificial variable, so phase 1 always starts feasible and an
infeasible system yields a Farkas certificate read off the final cost row.
The optional float mode runs the same algorithm in hardware floats and then
re-derives and verifies the final basis exactly, falling back to the
all-rational run on any discrepancy.

Row format: (coeffs, sense, rhs) with sense one of "<=", ">=", "==".
Variables are implicitly nonnegative.
"""

from __future__ import annotations

import numpy as np

from .errors import BudgetExceeded
from .rational import Q

__all__ = ["LPResult", "solve_lp"]

_SENSES = ("<=", ">=", "==")


class LPResult:
    """status is "optimal", "infeasible", or "unbounded".

    x, obj are set when optimal.  farkas is set when infeasible: per-row
    multipliers y, nonnegative on ">=" rows, nonpositive on "<=" rows, free
    on "==" rows, with  sum_i y_i * row_i  componentwise <= 0  but
    sum_i y_i * rhs_i > 0.
    """

    __slots__ = ("status", "x", "obj", "farkas")

    def __init__(self, status, x=None, obj=None, farkas=None):
        self.status = status
        self.x = x
        self.obj = obj
        self.farkas = farkas

    def __repr__(self):
        return f"LPResult({self.status}, obj={self.obj})"


class _Std:
    """Standard form: T x = b, b >= 0, with slack and artificial columns."""

    def __init__(self, c, rows, minimize):
        n = len(c)
        for coeffs, sense, _ in rows:
            if len(coeffs) != n:
                raise ValueError("row length does not match objective length")
            if sense not in _SENSES:
                raise ValueError(f"bad sense {sense!r}")
        m = len(rows)
        self.n = n
        self.m = m
        self.minimize = minimize
        self.c_min = [Q(v) if minimize else -Q(v) for v in c]
        self.flipped = []
        slacks = []  # (row, +1 slack | -1 surplus) after b-normalisation
        mat = []
        b = []
        for i, (coeffs, sense, rhs) in enumerate(rows):
            coeffs = [Q(v) for v in coeffs]
            rhs = Q(rhs)
            flip = rhs < 0
            if flip:
                coeffs = [-v for v in coeffs]
                rhs = -rhs
                sense = {"<=": ">=", ">=": "<=", "==": "=="}[sense]
            self.flipped.append(flip)
            if sense == "<=":
                slacks.append((i, Q(1)))
            elif sense == ">=":
                slacks.append((i, Q(-1)))
            mat.append(coeffs)
            b.append(rhs)
        self.ncols = n + len(slacks) + m
        self.art0 = n + len(slacks)  # first artificial column
        self.b = b
        self.slacks = slacks
        zero = Q(0)
        self.T = []
        for i in range(m):
            row = mat[i] + [zero] * (len(slacks) + m)
            row.append(b[i])
            self.T.append(row)
        for j, (i, sgn) in enumerate(slacks):
            self.T[i][n + j] = sgn
        for i in range(m):
            self.T[i][self.art0 + i] = Q(1)


def _pivot(T, basis, cost, pr, pc, value_col):
    piv = T[pr][pc]
    inv = 1 / piv
    row = T[pr]
    for j in range(len(row)):
        if row[j]:
            row[j] = row[j] * inv
    for r in T:
        if r is row:
            continue
        f = r[pc]
        if f:
            for j in range(len(row)):
                if row[j]:
                    r[j] = r[j] - f * row[j]
    f = cost[pc]
    if f:
        for j in range(len(row)):
            if row[j]:
                cost[j] = cost[j] - f * row[j]
    basis[pr] = pc


def _run_simplex(T, basis, cost, enterable, max_pivots):
    """Minimise until no negative reduced cost among enterable columns.

    Returns "optimal" or "unbounded".  Dantzig pricing with a permanent
    switch to Bland's rule after a run of degenerate pivots, so cycling
    terminates; a hard pivot cap guards the rest.
    """
    m = len(T)
    value_col = len(cost) - 1
    degen_run = 0
    bland = False
    pivots = 0
    while True:
        pc = -1
        if bland:
            for j in enterable:
                if cost[j] < 0:
                    pc = j
                    break
        else:
            best = 0
            for j in enterable:
                v = cost[j]
                if v < best:
                    best = v
                    pc = j
        if pc < 0:
            return "optimal"
        pr = -1
        best_ratio = None
        for i in range(m):
            a = T[i][pc]
            if a > 0:
                ratio = T[i][value_col] / a
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[pr])):
                    best_ratio = ratio
                    pr = i
        if pr < 0:
            return "unbounded"
        degenerate = T[pr][value_col] == 0
        _pivot(T, basis, cost, pr, pc, value_col)
        pivots += 1
        if degenerate:
            degen_run += 1
            if degen_run >= 50:
                bland = True
        else:
            degen_run = 0
            bland = False
        if pivots > max_pivots:
            raise BudgetExceeded(f"simplex exceeded {max_pivots} pivots")


def _run_simplex_np(T, basis, cost, n_enterable, max_pivots):
    """Float twin of _run_simplex on numpy arrays; same pivoting rules."""
    m = T.shape[0]
    eps = 1e-9
    degen_run = 0
    bland = False
    pivots = 0
    while True:
        seg = cost[:n_enterable]
        if n_enterable == 0:
            return "optimal"
        if bland:
            idx = np.nonzero(seg < -eps)[0]
            if idx.size == 0:
                return "optimal"
            pc = int(idx[0])
        else:
            pc = int(np.argmin(seg))
            if seg[pc] >= -eps:
                return "optimal"
        col = T[:, pc]
        mask = col > eps
        if not mask.any():
            return "unbounded"
        ratios = np.full(m, np.inf)
        ratios[mask] = T[mask, -1] / col[mask]
        best = ratios.min()
        cand = np.nonzero(ratios <= best + 1e-12)[0]
        pr = int(min(cand, key=lambda i: basis[i]))
        degenerate = abs(T[pr, -1]) < eps
        piv = T[pr, pc]
        T[pr] /= piv
        colv = T[:, pc].copy()
        colv[pr] = 0.0
        T -= np.outer(colv, T[pr])
        cf = cost[pc]
        if cf:
            cost -= cf * T[pr]
        basis[pr] = pc
        pivots += 1
        if degenerate:
            degen_run += 1
            if degen_run >= 50:
                bland = True
        else:
            degen_run = 0
            bland = False
        if pivots > max_pivots:
            raise BudgetExceeded(f"simplex exceeded {max_pivots} pivots")


def _phase1(std, max_pivots):
    """Returns (status, farkas_or_None) and leaves std.T at a feasible basis."""
    m, ncols = std.m, std.ncols
    basis = list(range(std.art0, std.art0 + m))
    # cost row for min sum(artificials), artificials basic: c_j - sum_i T[i][j]
    cost = []
    for j in range(ncols + 1):
        s = Q(0)
        for i in range(m):
            if std.T[i][j]:
                s += std.T[i][j]
        cj = Q(1) if std.art0 <= j < ncols else Q(0)
        cost.append(cj - s)
    # cost[-1] currently holds -sum(b) = -objective
    enterable = list(range(std.art0))
    status = _run_simplex(std.T, basis, cost, enterable, max_pivots)
    assert status == "optimal"  # min of a sum of nonnegatives is bounded
    obj = -cost[ncols]
    if obj > 0:
        y = []
        for i in range(m):
            yi = Q(1) - cost[std.art0 + i]
            y.append(-yi if std.flipped[i] else yi)
        return "infeasible", basis, None, y
    # drive artificials out of the basis where possible; redundant rows die
    dead = []
    for i in range(m):
        if basis[i] >= std.art0 and std.T[i][ncols] == 0:
            pc = next((j for j in range(std.art0)
                       if std.T[i][j] != 0), None)
            if pc is None:
                dead.append(i)
            else:
                _pivot(std.T, basis, cost, i, pc, ncols)
    if dead:
        for i in sorted(dead, reverse=True):
            del std.T[i]
            del basis[i]
        std.m = len(std.T)
    return "feasible", basis, cost, None


def _phase2(std, basis, max_pivots):
    ncols = std.ncols
    cost = [Q(v) for v in std.c_min] + [Q(0)] * (ncols - std.n + 1)
    # express the objective over the current basis
    for i, bi in enumerate(basis):
        f = cost[bi]
        if f:
            row = std.T[i]
            for j in range(ncols + 1):
                if row[j]:
                    cost[j] = cost[j] - f * row[j]
    enterable = [j for j in range(std.art0) ]
    status = _run_simplex(std.T, basis, cost, enterable, max_pivots)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Q(0)] * std.n
    for i, bi in enumerate(basis):
        if bi < std.n:
            x[bi] = std.T[i][ncols]
    obj_min = -cost[ncols]
    obj = obj_min if std.minimize else -obj_min
    return LPResult("optimal", x=x, obj=obj, farkas=None)


def _solve_rational(c, rows, minimize, max_pivots):
    std = _Std(c, rows, minimize)
    status, basis, cost, farkas = _phase1(std, max_pivots)
    if status == "infeasible":
        return LPResult("infeasible", farkas=farkas)
    return _phase2(std, basis, max_pivots)


# ---------------------------------------------------------------------------
# float-assisted mode


def _float_run(std_exact, max_pivots):
    """Replay the exact standard form in floats.

    The column layout (including flip decisions) is copied from the exact
    standardisation, so basis indices mean the same columns in both worlds.
    Returns ("optimal", basis, x_f, y_f), ("infeasible", None, None, y_f)
    with y_f in the flipped row space, or None when nothing usable came out.
    """
    m, ncols, art0 = std_exact.m, std_exact.ncols, std_exact.art0
    T = np.array([[float(v) for v in row] for row in std_exact.T], dtype=float)
    T = T.reshape(m, ncols + 1)
    basis = list(range(art0, art0 + m))
    cost = np.zeros(ncols + 1)
    cost[art0:ncols] = 1.0
    cost -= T.sum(axis=0)
    try:
        if _run_simplex_np(T, basis, cost, art0, max_pivots) != "optimal":
            return None
    except BudgetExceeded:
        return None
    if -cost[ncols] > 1e-7:
        # phase-1 multipliers: y_i = 1 - redcost(artificial_i)
        y_f = [1.0 - cost[art0 + i] for i in range(m)]
        return ("infeasible", None, None, y_f)
    for i in range(m):
        if basis[i] >= art0:
            row_seg = np.abs(T[i, :art0])
            pc = int(np.argmax(row_seg)) if row_seg.size else 0
            if not row_seg.size or row_seg[pc] <= 1e-7:
                return None  # dependent row; let the exact path handle it
            piv = T[i, pc]
            T[i] /= piv
            colv = T[:, pc].copy()
            colv[i] = 0.0
            T -= np.outer(colv, T[i])
            cf = cost[pc]
            if cf:
                cost -= cf * T[i]
            basis[i] = pc
    cost2 = np.zeros(ncols + 1)
    cost2[:std_exact.n] = [float(v) for v in std_exact.c_min]
    for i, bi in enumerate(basis):
        f = cost2[bi]
        if f:
            cost2 -= f * T[i]
    try:
        if _run_simplex_np(T, basis, cost2, art0, max_pivots) != "optimal":
            return None
    except BudgetExceeded:
        return None
    x_f = [0.0] * std_exact.n
    for i, bi in enumerate(basis):
        if bi < std_exact.n:
            x_f[bi] = float(T[i, ncols])
    y_f = [-float(cost2[art0 + i]) for i in range(m)]
    return ("optimal", basis, x_f, y_f)


def _reconstruct(v, limit=10**7):
    from fractions import Fraction
    fr = Fraction(v).limit_denominator(limit)
    return Q(fr.numerator, fr.denominator)


def _certify_optimal(c, rows, minimize, flipped, x_f, y_f):
    """Exact optimality proof from rounded primal and dual candidates: both
    feasible and a zero duality gap.  Returns LPResult or None."""
    n = len(c)
    c_min = [Q(v) if minimize else -Q(v) for v in c]
    x = [_reconstruct(v) for v in x_f]
    if any(xi < 0 for xi in x):
        return None
    y = []
    for i, yf in enumerate(y_f):
        yi = _reconstruct(yf)
        y.append(-yi if flipped[i] else yi)
    dual_obj = Q(0)
    col_acc = [Q(0)] * n  # sum_i y_i * a_ij
    for (coeffs, sense, rhs), yi in zip(rows, y):
        lhs = Q(0)
        for j, a in enumerate(coeffs):
            if a:
                a = Q(a)
                lhs += a * x[j]
                if yi:
                    col_acc[j] += yi * a
        rhs = Q(rhs)
        if sense == "<=":
            if lhs > rhs or yi > 0:
                return None
        elif sense == ">=":
            if lhs < rhs or yi < 0:
                return None
        else:
            if lhs != rhs:
                return None
        dual_obj += yi * rhs
    for j in range(n):
        if c_min[j] - col_acc[j] < 0:  # dual infeasible at column j
            return None
    obj_min = sum(ci * xi for ci, xi in zip(c_min, x))
    if obj_min != dual_obj:
        return None
    return LPResult("optimal", x=x, obj=obj_min if minimize else -obj_min)


def _certify_infeasible(rows, flipped, y_f):
    """Exact Farkas check of a rounded phase-1 certificate."""
    y = []
    for i, yf in enumerate(y_f):
        yi = _reconstruct(yf)
        y.append(-yi if flipped[i] else yi)
    n = len(rows[0][0]) if rows else 0
    col_acc = [Q(0)] * n
    comb_rhs = Q(0)
    for (coeffs, sense, rhs), yi in zip(rows, y):
        if sense == "<=" and yi > 0:
            return None
        if sense == ">=" and yi < 0:
            return None
        if yi:
            for j, a in enumerate(coeffs):
                if a:
                    col_acc[j] += yi * Q(a)
            comb_rhs += yi * Q(rhs)
    if comb_rhs <= 0 or any(v > 0 for v in col_acc):
        return None
    return LPResult("infeasible", farkas=y)


def _gauss_solve(M, rhs):
    """Solve M x = rhs exactly; returns None if singular."""
    m = len(M)
    A = [row[:] + [rhs[i]] for i, row in enumerate(M)]
    cols = len(A[0])
    for k in range(m):
        pr = next((i for i in range(k, m) if A[i][k] != 0), None)
        if pr is None:
            return None
        A[k], A[pr] = A[pr], A[k]
        inv = 1 / A[k][k]
        for j in range(k, cols):
            if A[k][j]:
                A[k][j] *= inv
        for i in range(m):
            if i != k and A[i][k]:
                f = A[i][k]
                for j in range(k, cols):
                    if A[k][j]:
                        A[i][j] -= f * A[k][j]
    return [A[i][cols - 1] for i in range(m)]


def _verify_float_basis(std, basis):
    """Exact feasibility + optimality check of a proposed basis; the float
    run only ever nominates candidates, never decides."""
    m, n, art0 = std.m, std.n, std.art0
    if len(basis) != m or any(bi >= art0 for bi in basis):
        return None
    T0 = std.T  # still the initial tableau: _Std is fresh
    B = [[T0[i][bj] for bj in basis] for i in range(m)]
    xB = _gauss_solve(B, std.b)
    if xB is None or any(v < 0 for v in xB):
        return None
    # duals: y B = c_B  <=>  B^T y = c_B
    Bt = [[B[i][j] for i in range(m)] for j in range(m)]
    cB = [std.c_min[bj] if bj < n else Q(0) for bj in basis]
    y = _gauss_solve(Bt, cB)
    if y is None:
        return None
    basic = set(basis)
    for j in range(art0):
        if j in basic:
            continue
        cj = std.c_min[j] if j < n else Q(0)
        red = cj - sum(y[i] * T0[i][j] for i in range(m) if T0[i][j])
        if red < 0:
            return None
    x = [Q(0)] * n
    for bj, v in zip(basis, xB):
        if bj < n:
            x[bj] = v
    obj_min = sum(ci * xi for ci, xi in zip(std.c_min, x))
    return LPResult("optimal", x=x, obj=obj_min if std.minimize else -obj_min)


def solve_lp(c, rows, minimize=True, mode="rational", max_pivots=100_000):
    """Optimise c.x subject to rows over x >= 0.

    mode "rational" is fully exact; mode "float" runs in floats first and
    certifies the resulting basis exactly, so its answers are just as exact,
    only faster on larger systems (with a silent exact fallback).
    """
    if mode not in ("rational", "float"):
        raise ValueError(f"mode must be 'rational' or 'float', got {mode!r}")
    if mode == "float":
        std = _Std(c, rows, minimize)
        found = _float_final_basis(std, max_pivots)
        if found is not None:
            res = _verify_float_basis(std, found)
            if res is not None:
                return res
    return _solve_rational(c, rows, minimize, max_pivots)
