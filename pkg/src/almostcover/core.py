"""Exact arithmetic, cube indexing, and shared combinatorial helpers.

All quantities in this package are exact: rationals are `fractions.Fraction`
(arbitrary precision, always in lowest terms), vertices of the n-cube are
nonzero n-bit masks, and there is no floating-point mode anywhere.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

# Masks must fit comfortably in a machine word; exhaustive enumeration is
# capped much lower (see geometry.ENUM_MAX_DIM).
MAX_DIM = 20

Rational = Fraction


def parse_rational(s: str) -> Fraction:
    """Parse "p" or "p/q" into an exact rational; no decimals accepted."""
    s = s.strip()
    if not re.fullmatch(r"[+-]?\d+(/[+-]?\d+)?", s):
        raise ValueError("not a rational: %r" % (s,))
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ValueError("zero denominator: %r" % (s,))


def format_rational(q) -> str:
    """Render a rational as "p" or "p/q" in lowest terms."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def binomial(n: int, t: int) -> int:
    """C(n, t), with 0 outside the range 0 <= t <= n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if t < 0 or t > n:
        return 0
    return math.comb(n, t)


def harmonic(n: int) -> Fraction:
    """Exact harmonic number H_n = 1 + 1/2 + ... + 1/n."""
    if n < 1:
        raise ValueError("harmonic requires n >= 1")
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


def lcm_binomials(n: int) -> int:
    """lcm(C(n-1,0), C(n-1,1), ..., C(n-1,n-1))."""
    if n < 1:
        raise ValueError("lcm_binomials requires n >= 1")
    return math.lcm(*(math.comb(n - 1, j) for j in range(n)))


def layer(v: int) -> int:
    """Number of 1-coordinates of a vertex mask (its layer t)."""
    return v.bit_count()


def check_vertex(n: int, v: int) -> None:
    if n < 1 or n > MAX_DIM:
        raise ValueError("dimension out of range: %r" % (n,))
    if v < 1 or v >= (1 << n):
        raise ValueError("vertex mask out of range for n=%d: %r" % (n, v))


def vertex_weight(n: int, v: int) -> Fraction:
    """Weight 1/(t*C(n,t)) of a vertex on layer t.

    Summed over all nonzero vertices these weights give exactly H_n, which
    is what makes them the right dual prices for the fractional cover.
    """
    check_vertex(n, v)
    t = layer(v)
    return Fraction(1, t * binomial(n, t))


def vertex_to_hex(v: int) -> str:
    return format(v, "x")


def vertex_from_hex(s: str) -> int:
    return int(s, 16)


def all_vertices(n: int):
    """All nonzero vertex masks of the n-cube, ascending."""
    return range(1, 1 << n)


@dataclass(frozen=True)
class DemandVector:
    """Required coverage multiplicity for every nonzero vertex.

    demand[v-1] is the requirement for the vertex with mask v.  The origin
    carries no entry; its demand is identically zero by normalization.
    """

    n: int
    demand: tuple

    def __post_init__(self):
        if len(self.demand) != (1 << self.n) - 1:
            raise ValueError("demand vector has wrong length for n=%d" % self.n)
        if any(d < 0 for d in self.demand):
            raise ValueError("demands must be nonnegative")

    def __getitem__(self, v: int) -> int:
        return self.demand[v - 1]


def uniform_demands(n: int, k: int) -> DemandVector:
    """Demand k at every nonzero vertex (the almost k-cover problem)."""
    return DemandVector(n, tuple([k] * ((1 << n) - 1)))


def layered_demands(n: int, k: int) -> DemandVector:
    """Demand max(k - t, 0) on layer t (the layered covering problem)."""
    return DemandVector(n, tuple(max(k - layer(v), 0) for v in all_vertices(n)))
