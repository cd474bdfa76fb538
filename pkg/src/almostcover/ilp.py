"""Exact integer optima by LP-based branch and bound.

solve_multicover finds the minimum-size integer multiset of trace columns
meeting per-vertex demands: bound = ceil of the exact LP relaxation, branch
on the most fractional column (ties to the smallest index), children
mult <= floor(w) and mult >= ceil(w), depth-first with the ceiling child
explored first.  Every LP bound carries verified certificates, so a node is
only pruned on proven grounds.  g_exact delegates the deficiency search to
the compiled multiset-DFS kernel.

Restricting columns to maximal traces is lossless: demands are "at least"
constraints and every hyperplane's trace is contained in some maximal
trace, so replacing each plane of an optimal solution by a maximal trace
containing it gives an equal-size solution over maximal traces.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels, constructions, lp
from .core import (
    DemandVector,
    all_vertices,
    harmonic,
    layer,
    layered_demands,
    uniform_demands,
)
from .geometry import enumerate_maximal_traces, trace_of


@dataclass
class Limits:
    max_nodes: int = 10**6
    time_limit: float = 300.0


@dataclass
class IlpResult:
    status: str  # "proved" | "limit_reached"
    optimum: int | None
    witness: dict = field(default_factory=dict)  # column index -> multiplicity
    root_bound: Fraction | None = None
    lower_bound: int | None = None
    nodes: int = 0


@dataclass
class GResult:
    status: str  # "proved" | "limit_reached"
    deficiency: int
    witness: list = field(default_factory=list)  # column indices, one per plane
    nodes: int = 0


_TRACE_CACHE = {}


def maximal_trace_columns(n):
    """Sorted maximal-trace bitsets for Q^n, memoized per dimension."""
    if n not in _TRACE_CACHE:
        _TRACE_CACHE[n] = [t.bits for t in enumerate_maximal_traces(n)]
    return _TRACE_CACHE[n]


def cover_to_columns(cover, columns):
    """Express a cover as column multiplicities: each plane's trace is placed
    on the smallest maximal column containing it."""
    mults = {}
    for h, m in cover.planes:
        bits = trace_of(h).bits
        for j, col in enumerate(columns):
            if bits | col == col:
                mults[j] = mults.get(j, 0) + m
                break
        else:
            raise ValueError("plane trace not inside any maximal trace")
    return mults


def _shifted_demands(n, demands, columns, lower):
    dem = [demands[v] for v in all_vertices(n)]
    for j, lo in lower.items():
        if lo:
            col = columns[j]
            b = col
            while b:
                low = b & -b
                i = low.bit_length() - 1
                if dem[i] > 0:
                    dem[i] = max(0, dem[i] - lo)
                b ^= low
    return DemandVector(n, tuple(dem))


def solve_multicover(n, columns, demands, incumbent=None, limits=None):
    """Branch and bound over integer column multiplicities.

    incumbent: optional known-feasible warm start, either a MultiCover or
    a {column index: multiplicity} map.  Hitting the node or time budget
    is a normal "limit_reached" outcome carrying the best incumbent and
    the proven lower bound.
    """
    limits = limits or Limits()
    if isinstance(incumbent, constructions.MultiCover):
        incumbent = cover_to_columns(incumbent, columns)
    deadline = time.monotonic() + limits.time_limit
    best_size = None
    best_witness = None
    if incumbent:
        best_size = sum(incumbent.values())
        best_witness = dict(incumbent)

    root_bound = None
    nodes = 0
    truncated = False
    # each stack entry: (lower bounds dict, upper bounds dict)
    stack = [({}, {})]
    # weakest ceil-bound over pruned-by-limit subtrees; proved lower bound
    open_bounds = []
    while stack:
        if nodes >= limits.max_nodes or time.monotonic() > deadline:
            truncated = True
            # everything still on the stack is unexplored
            open_bounds.append(0)
            break
        lower, upper = stack.pop()
        nodes += 1
        offset = sum(lower.values())
        dem = _shifted_demands(n, demands, columns, lower)
        ub = {j: u - lower.get(j, 0) for j, u in upper.items()}
        if any(u < 0 for u in ub.values()):
            continue
        sol = lp.solve_cover_lp(lp.LpProblem(n, columns, dem), upper=ub)
        if sol.status == "infeasible":
            continue
        bound = offset + math.ceil(sol.value)
        if root_bound is None:
            root_bound = Fraction(offset) + sol.value
        if best_size is not None and bound >= best_size:
            continue
        frac_j = -1
        frac_score = None
        total = dict(lower)
        for j, w in sol.primal.items():
            total[j] = total.get(j, 0) + w
        for j in sorted(total):
            w = total[j]
            f = w - math.floor(w)
            if f != 0:
                score = abs(f - Fraction(1, 2))
                if frac_score is None or score < frac_score:
                    frac_score = score
                    frac_j = j
        if frac_j < 0:
            # integral LP optimum: new incumbent (strictly better, else pruned)
            size = offset + int(sol.value)
            witness = {j: int(w) for j, w in total.items() if w}
            best_size = size
            best_witness = witness
            continue
        w = total[frac_j]
        lo_child = (dict(lower), {**upper, frac_j: math.floor(w)})
        hi_child = ({**lower, frac_j: math.ceil(w)}, dict(upper))
        stack.append(lo_child)
        stack.append(hi_child)  # popped first: round up toward the incumbent

    if truncated:
        lb = min(open_bounds) if open_bounds else best_size
        return IlpResult(
            status="limit_reached",
            optimum=best_size,
            witness=best_witness or {},
            root_bound=root_bound,
            lower_bound=lb,
            nodes=nodes,
        )
    return IlpResult(
        status="proved",
        optimum=best_size,
        witness=best_witness or {},
        root_bound=root_bound,
        lower_bound=best_size,
        nodes=nodes,
    )


def f_exact(n, k, limits=None):
    """Minimum size of an integral almost k-cover of Q^n."""
    if n < 1 or k < 1:
        raise ValueError("f_exact requires n, k >= 1")
    columns = maximal_trace_columns(n)
    seed = cover_to_columns(constructions.best_known(n, k), columns)
    return solve_multicover(n, columns, uniform_demands(n, k), seed, limits)


def layered_min_m(n, k, limits=None):
    """Minimum planes when the layer-t demand is max(k - t, 0)."""
    if n < 1 or k < 1:
        raise ValueError("layered_min_m requires n, k >= 1")
    columns = maximal_trace_columns(n)
    seed_cover = constructions.MultiCover(
        n,
        tuple(
            (constructions._plane_sum_eq(n, range(n), t), k - t)
            for t in range(1, min(k, n + 1))
        ),
    )
    seed = cover_to_columns(seed_cover, columns) if seed_cover.planes else {}
    return solve_multicover(n, columns, layered_demands(n, k), seed, limits)


def layered_lp_bound(k):
    """Closed-form LP lower bound 1 - k + k*H_{k-1} for the layered problem."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return Fraction(0)  # no demand at all: H_0 = 0
    return Fraction(1 - k) + k * harmonic(k - 1)


def _coverage_matrix(n, columns):
    cc = np.zeros((len(columns), 1 << n), dtype=np.uint8)
    for j, col in enumerate(columns):
        for v in all_vertices(n):
            if (col >> (v - 1)) & 1:
                cc[j, v] = 1
    return cc


def _deficiency_of(n, k, columns, picks):
    cov = [0] * (1 << n)
    for j in picks:
        col = columns[j]
        for v in all_vertices(n):
            if (col >> (v - 1)) & 1:
                cov[v] += 1
    return sum(1 for v in range(1 << n) if cov[v] < k)


def g_exact(n, m, k, limits=None):
    """Minimum number of vertices (origin included) covered fewer than k
    times by any multiset of m hyperplanes avoiding the origin."""
    if n < 1 or m < 0 or k < 1:
        raise ValueError("g_exact requires n >= 1, m >= 0, k >= 1")
    limits = limits or Limits()
    columns = maximal_trace_columns(n)

    # candidate witnesses: lifted best-known covers of subcubes, padded to
    # exactly m planes with repeats of the full-support trace
    best_def = 1 << n
    best_picks = []
    pad = max(range(len(columns)), key=lambda j: bin(columns[j]).count("1"))
    for d in range(n, 0, -1):
        c = constructions.best_known(d, k)
        if c.size <= m:
            lifted = constructions.lift_cover(c, n)
            picks = []
            for j, mult in cover_to_columns(lifted, columns).items():
                picks.extend([j] * mult)
            picks.extend([pad] * (m - len(picks)))
            dv = _deficiency_of(n, k, columns, picks)
            if dv < best_def:
                best_def = dv
                best_picks = sorted(picks)
            break
    if m > 0 and not best_picks:
        picks = [pad] * m
        best_def = _deficiency_of(n, k, columns, picks)
        best_picks = picks

    cc = _coverage_matrix(n, columns)
    best, witness, nodes, completed = _kernels.g_search(
        cc, m, k, best_def, node_limit=limits.max_nodes
    )
    if len(witness) and witness[0] >= 0:
        picks = sorted(int(j) for j in witness)
    else:
        picks = best_picks
        best = best_def
    status = "proved" if completed else "limit_reached"
    return GResult(status=status, deficiency=int(best), witness=picks, nodes=int(nodes))
