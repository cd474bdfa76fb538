"""Integer hot loops: hyperplane-trace scanning and the deficiency search.

Everything here works on machine integers only (0/1 vertex data, Bareiss
fraction-free elimination, bitset traces), so the kernels can be compiled
with numba.  A pure-numpy fallback is selected when numba is unavailable or
when the environment variable ALMOSTCOVER_PURE_NUMPY is set to a nonempty
value.  Exact rational arithmetic never enters this module; callers
re-verify every witness with fractions.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

_FORCE_NUMPY = bool(os.environ.get("ALMOSTCOVER_PURE_NUMPY"))

try:
    if _FORCE_NUMPY:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):  # no-op decorator
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


def backend_name() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# Hyperplane-trace scan.
#
# Every inclusion-maximal trace of Q^n is the trace of the unique hyperplane
# <a,x>=1 through n linearly independent 0/1 vertices, so we scan all
# n-subsets of the 2^n-1 nonzero vertices, solve V a = 1 fraction-free
# (Montante/Bareiss full elimination; intermediate entries are minors of a
# 0/1 matrix, tiny), and emit the covered-vertex bitset per nonsingular
# subset.  Deduplication happens in the driver.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _scan_chunk_numba(n, comb, out_tr, out_num, out_den):
    """Process combinations starting at `comb`, fill outputs, advance comb.

    Returns (count, done).  comb is the next unprocessed combination of
    vertex masks (strictly increasing); done means iteration is exhausted.
    """
    M = (1 << n) - 1
    cap = out_tr.shape[0]
    count = 0
    A = np.zeros((n, n + 1), np.int64)
    while True:
        if count >= cap:
            return count, False
        # set up the augmented system V a = 1
        singular = False
        for i in range(n):
            v = comb[i]
            for j in range(n):
                A[i, j] = (v >> j) & 1
            A[i, n] = 1
        prev = np.int64(1)
        for kc in range(n):
            piv = -1
            for r in range(kc, n):
                if A[r, kc] != 0:
                    piv = r
                    break
            if piv < 0:
                singular = True
                break
            if piv != kc:
                for j in range(n + 1):
                    t = A[kc, j]
                    A[kc, j] = A[piv, j]
                    A[piv, j] = t
            p = A[kc, kc]
            for r in range(n):
                if r == kc:
                    continue
                arc = A[r, kc]
                for j in range(n + 1):
                    A[r, j] = (A[r, j] * p - arc * A[kc, j]) // prev
            prev = p
        if not singular:
            # a_j = A[j,n] / A[j,j]; compare subset sums against 1 using the
            # common multiple P = prod(diag) to stay in integers
            P = np.int64(1)
            for j in range(n):
                P *= A[j, j]
            tr = np.uint64(0)
            for v in range(1, M + 1):
                s = np.int64(0)
                for j in range(n):
                    if (v >> j) & 1:
                        s += A[j, n] * (P // A[j, j])
                if s == P:
                    tr |= np.uint64(1) << np.uint64(v - 1)
            out_tr[count] = tr
            for j in range(n):
                out_num[count, j] = A[j, n]
                out_den[count, j] = A[j, j]
            count += 1
        # advance the combination odometer
        i = n - 1
        while i >= 0 and comb[i] == M - (n - 1 - i):
            i -= 1
        if i < 0:
            return count, True
        comb[i] += 1
        for j in range(i + 1, n):
            comb[j] = comb[j - 1] + 1


def _montante_batch(mats):
    """Vectorized Montante elimination on a stack of augmented systems.

    mats: (B, n, n+1) int64.  Returns (num (B,n), den (B,n), valid (B,)).
    """
    A = mats
    B, n, _ = A.shape
    bidx = np.arange(B)
    valid = np.ones(B, dtype=bool)
    prev = np.ones(B, dtype=np.int64)
    for kc in range(n):
        nz = A[:, kc:, kc] != 0
        valid &= nz.any(axis=1)
        piv = nz.argmax(axis=1) + kc
        rowk = A[bidx, kc].copy()
        A[bidx, kc] = A[bidx, piv]
        A[bidx, piv] = rowk
        p = np.where(valid, A[:, kc, kc], 1)
        pivot_row = A[:, kc, :].copy()
        A = (A * p[:, None, None] - A[:, :, kc : kc + 1] * pivot_row[:, None, :]) // prev[
            :, None, None
        ]
        A[:, kc, :] = pivot_row
        prev = p
    den = A[:, np.arange(n), np.arange(n)]
    num = A[:, :, n]
    return num, den, valid


def _scan_numpy(n, chunk):
    """Yield (traces, nums, dens) batches over all n-subsets of vertices."""
    M = (1 << n) - 1
    bits = ((np.arange(1, M + 1)[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int64)
    combos = itertools.combinations(range(1, M + 1), n)
    pows = np.uint64(1) << np.arange(M, dtype=np.uint64)
    while True:
        block = np.array(list(itertools.islice(combos, chunk)), dtype=np.int64)
        if block.size == 0:
            return
        Bsz = block.shape[0]
        mats = np.ones((Bsz, n, n + 1), dtype=np.int64)
        mats[:, :, :n] = (block[:, :, None] >> np.arange(n)[None, None, :]) & 1
        num, den, valid = _montante_batch(mats)
        num, den = num[valid], den[valid]
        if num.shape[0] == 0:
            continue
        P = den.prod(axis=1)
        scaled = num * (P[:, None] // den)
        covered = scaled @ bits.T == P[:, None]
        traces = (covered.astype(np.uint64) * pows[None, :]).sum(axis=1)
        yield traces, num, den


def hyperplane_trace_scan(n):
    """All distinct hyperplane traces of Q^n with one integer witness each.

    Returns a dict {trace_bitset: (num_array, den_array)} where the witness
    hyperplane is a_j = num[j]/den[j].
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    M = (1 << n) - 1
    seen = {}
    if HAVE_NUMBA:
        chunk = max(1024, (1 << 22) // (M * n))
        comb = np.arange(1, n + 1, dtype=np.int64)
        out_tr = np.empty(chunk, np.uint64)
        out_num = np.empty((chunk, n), np.int64)
        out_den = np.empty((chunk, n), np.int64)
        done = False
        while not done:
            count, done = _scan_chunk_numba(n, comb, out_tr, out_num, out_den)
            _merge_chunk(seen, out_tr[:count], out_num[:count], out_den[:count])
    else:
        chunk = max(1024, (1 << 21) // max(1, M))
        for traces, num, den in _scan_numpy(n, chunk):
            _merge_chunk(seen, traces, num, den)
    return seen


def _merge_chunk(seen, traces, num, den):
    uniq, idx = np.unique(traces, return_index=True)
    for u, i in zip(uniq.tolist(), idx.tolist()):
        if u not in seen:
            seen[u] = (num[i].copy(), den[i].copy())


# ---------------------------------------------------------------------------
# Deficiency search: minimize the number of vertices covered fewer than k
# times by a multiset of m columns, scanning multisets in non-decreasing
# canonical column order with an admissible counting/capacity bound.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _g_bound_numba(cov, rem, k, maxcov):
    V = cov.shape[0]
    unfixable = 1  # the origin is never covered
    needcnt = 0
    hist = np.zeros(k + 1, np.int64)
    for v in range(1, V):
        r = k - cov[v]
        if r > rem:
            unfixable += 1
        elif r > 0:
            needcnt += 1
            hist[r] += 1
    cap = rem * maxcov
    fix = 0
    for r in range(1, k + 1):
        if cap <= 0:
            break
        take = hist[r]
        if take * r > cap:
            take = cap // r
        fix += take
        cap -= take * r
    lo = needcnt - fix
    if lo < 0:
        lo = 0
    return unfixable + lo


@njit(cache=True)
def _g_search_numba(colcov, m, k, incumbent, maxcov, node_limit):
    """Returns (best, witness, nodes, completed)."""
    T, V = colcov.shape
    best = incumbent
    bestwit = np.full(m, -1, np.int64)
    stack = np.zeros(m, np.int64)
    cov = np.zeros(V, np.int64)
    tmp = np.zeros(V, np.int64)
    depth = 0
    nextj = 0
    nodes = 0
    completed = True
    while depth >= 0:
        if depth == m:
            d = 0
            for v in range(V):
                if cov[v] < k:
                    d += 1
            if d < best:
                best = d
                for i in range(m):
                    bestwit[i] = stack[i]
            depth -= 1
            jlast = stack[depth]
            for v in range(V):
                cov[v] -= colcov[jlast, v]
            nextj = jlast + 1
            continue
        advanced = False
        while nextj < T:
            nodes += 1
            if node_limit > 0 and nodes > node_limit:
                return best, bestwit, nodes, False
            for v in range(V):
                tmp[v] = cov[v] + colcov[nextj, v]
            b = _g_bound_numba(tmp, m - depth - 1, k, maxcov)
            if b < best:
                for v in range(V):
                    cov[v] = tmp[v]
                stack[depth] = nextj
                depth += 1
                advanced = True
                break
            nextj += 1
        if advanced:
            continue
        depth -= 1
        if depth < 0:
            break
        jlast = stack[depth]
        for v in range(V):
            cov[v] -= colcov[jlast, v]
        nextj = jlast + 1
    return best, bestwit, nodes, completed


def _g_bound_numpy(cov, rem, k, maxcov):
    r = k - cov[1:]
    unfixable = 1 + int((r > rem).sum())
    needy = r[(r > 0) & (r <= rem)]
    cap = rem * maxcov
    fix = 0
    for rv in range(1, k + 1):
        if cap <= 0:
            break
        take = int((needy == rv).sum())
        take = min(take, cap // rv)
        fix += take
        cap -= take * rv
    return unfixable + max(0, needy.size - fix)


def _g_search_numpy(colcov, m, k, incumbent, maxcov, node_limit):
    T, V = colcov.shape
    state = {"best": incumbent, "wit": None, "nodes": 0, "completed": True}
    stack = []

    def rec(cov, depth, j0):
        if not state["completed"]:
            return
        rem = m - depth - 1
        if depth == m - 1:
            # last level vectorized over all remaining columns
            cand = colcov[j0:]
            state["nodes"] += cand.shape[0]
            if node_limit > 0 and state["nodes"] > node_limit:
                state["completed"] = False
                return
            if cand.shape[0] == 0:
                return
            defs = ((cov[None, :] + cand) < k).sum(axis=1)
            i = int(defs.argmin())
            if int(defs[i]) < state["best"]:
                state["best"] = int(defs[i])
                state["wit"] = list(stack) + [j0 + i]
            return
        for j in range(j0, T):
            state["nodes"] += 1
            if node_limit > 0 and state["nodes"] > node_limit:
                state["completed"] = False
                return
            newcov = cov + colcov[j]
            if _g_bound_numpy(newcov, rem, k, maxcov) < state["best"]:
                stack.append(j)
                rec(newcov, depth + 1, j)
                stack.pop()

    rec(np.zeros(V, dtype=np.int64), 0, 0)
    wit = np.array(state["wit"] if state["wit"] is not None else [-1] * m, dtype=np.int64)
    return state["best"], wit, state["nodes"], state["completed"]


def g_search(colcov, m, k, incumbent, node_limit=0):
    """Exact deficiency search over multisets of m columns.

    colcov: (T, 2^n) uint8 coverage indicators including the origin at index
    0 (always zero there).  Returns (best, witness_indices, nodes, completed);
    witness is all -1 when the incumbent was never improved.
    """
    colcov = np.ascontiguousarray(colcov, dtype=np.int64)
    maxcov = int(colcov.sum(axis=1).max()) if colcov.shape[0] else 0
    if m == 0:
        v = colcov.shape[1]
        return (v if k >= 1 else 0), np.empty(0, np.int64), 0, True
    if HAVE_NUMBA:
        best, wit, nodes, completed = _g_search_numba(
            colcov, m, k, incumbent, maxcov, node_limit
        )
    else:
        best, wit, nodes, completed = _g_search_numpy(
            colcov, m, k, incumbent, maxcov, node_limit
        )
    return int(best), wit, int(nodes), bool(completed)
