"""Affine hyperplanes of R^n reduced to their finite traces on the cube.

A hyperplane missing the origin is written <a,x> = 1; its trace is the
bitset of nonzero 0/1 vertices it covers.  Only inclusion-maximal traces
matter for covering problems, and every one of them is the trace of the
unique hyperplane through n linearly independent cube vertices, which is
what the enumeration scans.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _kernels
from .core import all_vertices, check_vertex, format_rational

# The basis scan is C(2^n-1, n); n=6 is minutes, n=7 is out of reach.
ENUM_MAX_DIM = 6


@dataclass(frozen=True)
class HyperplaneForm:
    """Coefficient vector a of the hyperplane <a,x> = 1 (origin-avoiding)."""

    n: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.n:
            raise ValueError("coefficient vector has wrong length")
        if all(c == 0 for c in self.coeffs):
            raise ValueError("coefficients must not be all zero")

    def value_at(self, v: int) -> Fraction:
        """<a, v> for a vertex mask v."""
        s = Fraction(0)
        for j in range(self.n):
            if (v >> j) & 1:
                s += self.coeffs[j]
        return s

    def covers(self, v: int) -> bool:
        return self.value_at(v) == 1

    def serialize(self):
        return [format_rational(c) for c in self.coeffs]


@dataclass(frozen=True)
class Trace:
    """Bitset over the 2^n-1 nonzero vertices covered by some hyperplane."""

    n: int
    bits: int
    witness: HyperplaneForm | None = None

    def contains(self, v: int) -> bool:
        return bool((self.bits >> (v - 1)) & 1)

    def vertices(self):
        return [v for v in all_vertices(self.n) if self.contains(v)]

    def popcount(self) -> int:
        return self.bits.bit_count()

    def to_hex(self) -> str:
        return format(self.bits, "x")


@dataclass(frozen=True)
class AffineSolutionSpace:
    """particular + span(basis) = all a with <a,v> = 1 for the given vertices."""

    n: int
    particular: tuple
    basis: tuple


def trace_of(h: HyperplaneForm) -> Trace:
    bits = 0
    for v in all_vertices(h.n):
        if h.covers(v):
            bits |= 1 << (v - 1)
    return Trace(h.n, bits, witness=h)


def _homogeneous_rows(S, n):
    """Vertices as rational rows (v, 1), for affine-hull computations."""
    rows = []
    for v in S:
        check_vertex(n, v)
        rows.append([Fraction((v >> j) & 1) for j in range(n)] + [Fraction(1)])
    return rows


def _echelon(rows):
    """In-place rational row echelon with smallest-index pivoting.

    Returns the list of pivot column indices; zero rows are dropped.
    """
    pivots = []
    reduced = []
    for row in rows:
        row = row[:]
        for pcol, prow in zip(pivots, reduced):
            if row[pcol] != 0:
                f = row[pcol] / prow[pcol]
                for j in range(len(row)):
                    row[j] -= f * prow[j]
        for j, x in enumerate(row):
            if x != 0:
                pivots.append(j)
                reduced.append(row)
                break
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    return [pivots[i] for i in order], [reduced[i] for i in order]


def _in_span(pivots, reduced, vec):
    vec = vec[:]
    for pcol, prow in zip(pivots, reduced):
        if vec[pcol] != 0:
            f = vec[pcol] / prow[pcol]
            for j in range(len(vec)):
                vec[j] -= f * prow[j]
    return all(x == 0 for x in vec)


def origin_in_affine_hull(S, n: int) -> bool:
    """True iff some affine combination of S (coefficients summing to 1) is 0."""
    if not S:
        raise ValueError("S must be nonempty")
    pivots, reduced = _echelon(_homogeneous_rows(S, n))
    target = [Fraction(0)] * n + [Fraction(1)]
    return _in_span(pivots, reduced, target)


def solve_hyperplane_through(S, n: int):
    """Full solution space of <a,v> = 1 for all v in S, or None if infeasible.

    The system is infeasible exactly when the origin lies in the affine hull
    of S.  The particular solution is the one produced by Gaussian
    elimination with smallest-index pivoting (deterministic, but callers
    should only rely on the solution space).
    """
    if not S:
        raise ValueError("S must be nonempty")
    verts = sorted(set(S))
    rows = _homogeneous_rows(verts, n)  # row = (v, rhs)
    pivots, reduced = _echelon(rows)
    if any(p == n for p in pivots):
        # a pivot in the rhs column means 0 = 1 is implied: infeasible
        return None
    # back-substitute: free variables are the non-pivot coefficient columns
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    a = [Fraction(0)] * n
    for pcol, prow in reversed(list(zip(pivots, reduced))):
        s = prow[n] - sum(prow[j] * a[j] for j in range(pcol + 1, n))
        a[pcol] = s / prow[pcol]
    particular = a
    basis = []
    for jf in free:
        hom = solve_with_homogeneous(pivots, reduced, n, jf)
        basis.append(tuple(hom))
    return AffineSolutionSpace(n, tuple(particular), tuple(basis))


def solve_with_homogeneous(pivots, reduced, n, free_col):
    """Homogeneous solution with the given free coefficient set to 1."""
    a = [Fraction(0)] * n
    a[free_col] = Fraction(1)
    for pcol, prow in reversed(list(zip(pivots, reduced))):
        s = -sum(prow[j] * a[j] for j in range(pcol + 1, n))
        a[pcol] = s / prow[pcol]
    return a


def affine_closure_trace(S, n: int) -> Trace:
    """Vertices forced onto every hyperplane through S (exact span test)."""
    if not S:
        raise ValueError("S must be nonempty")
    pivots, reduced = _echelon(_homogeneous_rows(S, n))
    target = [Fraction(0)] * n + [Fraction(1)]
    if _in_span(pivots, reduced, target):
        raise ValueError("origin lies in the affine hull; no hyperplane through S")
    bits = 0
    for v in all_vertices(n):
        row = _homogeneous_rows([v], n)[0]
        if _in_span(pivots, reduced, row):
            bits |= 1 << (v - 1)
    return Trace(n, bits)


def enumerate_maximal_traces(n: int):
    """All inclusion-maximal realizable traces of Q^n, canonically sorted.

    Each trace carries an exact witness hyperplane.  Every maximal trace
    spans an (n-1)-flat missing the origin, hence is the trace of the
    hyperplane through n linearly independent cube vertices; two distinct
    full-rank hyperplane traces are never nested, so no subset filtering is
    required beyond deduplication.
    """
    if n < 1 or n > ENUM_MAX_DIM:
        raise ValueError("enumeration supports 1 <= n <= %d" % ENUM_MAX_DIM)
    found = _kernels.hyperplane_trace_scan(n)
    traces = []
    for bits in sorted(found):
        num, den = found[bits]
        coeffs = tuple(Fraction(int(num[j]), int(den[j])) for j in range(n))
        traces.append(Trace(n, int(bits), witness=HyperplaneForm(n, coeffs)))
    return traces


def brute_force_maximal_traces(n: int):
    """Independent oracle: closures of all feasible vertex subsets of size <= n.

    Exponentially slower than enumerate_maximal_traces; used by tests only.
    """
    from itertools import combinations

    verts = list(all_vertices(n))
    closures = set()
    for size in range(1, n + 1):
        for S in combinations(verts, size):
            if origin_in_affine_hull(S, n):
                continue
            closures.add(affine_closure_trace(S, n).bits)
    maximal = []
    for b in sorted(closures):
        if not any(b != c and (b & c) == b for c in closures):
            maximal.append(Trace(n, b))
    return maximal
