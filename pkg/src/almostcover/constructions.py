"""Explicit almost k-covers: the basic construction, the symmetric cover,
the ad-hoc catalog covers, cover lifting, and the coverage verifier.

All planes are kept in origin-avoiding normal form <a,x> = 1, so e.g.
"x_1 + x_2 + x_3 = 2" is stored with coefficients (1/2, 1/2, 1/2), and
negative coefficients are allowed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    all_vertices,
    binomial,
    format_rational,
    layer,
    lcm_binomials,
    parse_rational,
)
from .geometry import HyperplaneForm, trace_of


@dataclass(frozen=True)
class MultiCover:
    """Multiset of hyperplanes with positive multiplicities.

    Multiplicities are positive integers for integral covers and positive
    rationals for fractional ones.
    """

    n: int
    planes: tuple  # of (HyperplaneForm, multiplicity)

    @property
    def size(self):
        return sum(m for _, m in self.planes)

    def union(self, other: "MultiCover") -> "MultiCover":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        merged = {}
        for h, m in self.planes + other.planes:
            merged[h.coeffs] = merged.get(h.coeffs, 0) + m
        planes = tuple(
            (HyperplaneForm(self.n, c), m) for c, m in sorted(merged.items())
        )
        return MultiCover(self.n, planes)


@dataclass(frozen=True)
class CoverageReport:
    n: int
    coverage: dict  # vertex mask -> exact coverage
    min_coverage: Fraction
    origin_coverage: Fraction
    layer_minima: dict  # layer t -> minimum coverage on that layer

    def meets(self, k) -> bool:
        return self.min_coverage >= k


def verify_cover(c: MultiCover, k) -> CoverageReport:
    """Exact per-vertex coverage counts; a failed bound is data, not an error."""
    coverage = {v: Fraction(0) for v in all_vertices(c.n)}
    for h, mult in c.planes:
        tr = trace_of(h)
        for v in all_vertices(c.n):
            if tr.contains(v):
                coverage[v] += mult
    layer_minima = {}
    for v, cov in coverage.items():
        t = layer(v)
        if t not in layer_minima or cov < layer_minima[t]:
            layer_minima[t] = cov
    min_cov = min(coverage.values()) if coverage else Fraction(0)
    # normal form <a,x>=1 cannot cover the origin
    return CoverageReport(c.n, coverage, min_cov, Fraction(0), layer_minima)


def _plane_sum_eq(n, support, rhs):
    """The plane sum_{i in support} x_i = rhs, normalized to rhs 1."""
    coeffs = [Fraction(0)] * n
    for i in support:
        coeffs[i] = Fraction(1, rhs)
    return HyperplaneForm(n, tuple(coeffs))


def _unit_plane(n, i):
    return _plane_sum_eq(n, [i], 1)


def _plane(n, *coeffs):
    return HyperplaneForm(n, tuple(Fraction(c) for c in coeffs))


def basic_cover(n: int, k: int) -> MultiCover:
    """x_i = 1 for all i, plus k-t copies of sum x_i = t; size n + C(k,2)."""
    if n < 1 or k < 1:
        raise ValueError("basic_cover requires n, k >= 1")
    planes = [(_unit_plane(n, i), 1) for i in range(n)]
    for t in range(1, k):
        planes.append((_plane_sum_eq(n, range(n), t), k - t))
    return MultiCover(n, tuple(planes))


def symmetric_cover(n: int, k: int) -> MultiCover:
    """Integral symmetric cover: requires n*lcm_binomials(n) to divide k.

    Uses every plane x_{i_1}+...+x_{i_j} = 1 with multiplicity k/(j*C(n,j));
    size is exactly H_n * k and every vertex is covered exactly k times.
    """
    x = lcm_binomials(n)
    if k % (n * x) != 0:
        raise ValueError("symmetric_cover requires %d | k" % (n * x))
    planes = []
    for j in range(1, n + 1):
        mult = k // (j * binomial(n, j))
        for support in _supports(n, j):
            planes.append((_plane_sum_eq(n, support, 1), mult))
    return MultiCover(n, tuple(planes))


def fractional_symmetric(n: int, k: int) -> MultiCover:
    """Fractional symmetric cover: weight k/(j*C(n,j)) on each support-j plane."""
    if n < 1 or k < 1:
        raise ValueError("fractional_symmetric requires n, k >= 1")
    planes = []
    for j in range(1, n + 1):
        w = Fraction(k, j * binomial(n, j))
        for support in _supports(n, j):
            planes.append((_plane_sum_eq(n, support, 1), w))
    return MultiCover(n, tuple(planes))


def _supports(n, j):
    from itertools import combinations

    return combinations(range(n), j)


def _q4_k4():
    planes = [(_unit_plane(4, i), 1) for i in range(4)]
    planes += [
        (_plane_sum_eq(4, [0, 3], 1), 1),
        (_plane_sum_eq(4, [1, 3], 1), 1),
        (_plane_sum_eq(4, [2, 3], 1), 1),
        (_plane_sum_eq(4, [0, 1, 2], 1), 1),
        (_plane_sum_eq(4, [0, 1, 2, 3], 1), 1),
    ]
    return MultiCover(4, tuple(planes))


def _q5_k4():
    planes = [(_unit_plane(5, i), 1) for i in range(5)]
    for i in range(5):
        planes.append((_plane_sum_eq(5, [i, (i + 1) % 5, (i + 2) % 5], 1), 1))
    return MultiCover(5, tuple(planes))


def _q3_k4():
    planes = [(_unit_plane(3, i), 2) for i in range(3)]
    planes.append((_plane_sum_eq(3, [0, 1, 2], 1), 2))
    return MultiCover(3, tuple(planes))


def _q3_k5():
    planes = [(_unit_plane(3, i), 2) for i in range(3)]
    planes.append((_plane_sum_eq(3, [0, 1, 2], 1), 3))
    planes.append((_plane_sum_eq(3, [0, 1, 2], 2), 1))
    return MultiCover(3, tuple(planes))


def _q3_k7():
    planes = [(_unit_plane(3, i), 2) for i in range(3)]
    planes += [
        (_plane_sum_eq(3, [0, 1], 1), 2),
        (_plane_sum_eq(3, [0, 2], 1), 2),
        (_plane_sum_eq(3, [1, 2], 1), 1),
        (_plane(3, -1, 1, 1), 1),  # x2 + x3 - x1 = 1
        (_plane_sum_eq(3, [0, 1, 2], 1), 1),
    ]
    return MultiCover(3, tuple(planes))


_CATALOG = {
    "q3_k4": (_q3_k4, 3, 4),
    "q4_k4": (_q4_k4, 4, 4),
    "q5_k4": (_q5_k4, 5, 4),
    "q3_k5": (_q3_k5, 3, 5),
    "q3_k7": (_q3_k7, 3, 7),
}


def catalog_names():
    return sorted(_CATALOG)


def special_cover(name: str) -> MultiCover:
    """One of the hand-built catalog covers (q3_k4, q4_k4, q5_k4, q3_k5, q3_k7)."""
    if name not in _CATALOG:
        raise KeyError("unknown catalog cover: %r" % (name,))
    return _CATALOG[name][0]()


def catalog_k(name: str) -> int:
    return _CATALOG[name][2]


def lift_cover(c: MultiCover, n: int) -> MultiCover:
    """Pad each plane with zero coefficients up to dimension n.

    The lifted planes cover every vertex outside 0 x {0,1}^(n-d) exactly as
    before and leave those 2^(n-d) vertices (origin included) uncovered.
    """
    d = c.n
    if n < d:
        raise ValueError("cannot lift downwards")
    if n == d:
        return c
    planes = tuple(
        (HyperplaneForm(n, h.coeffs + (Fraction(0),) * (n - d)), m)
        for h, m in c.planes
    )
    return MultiCover(n, planes)


def best_known(n: int, k: int) -> MultiCover:
    """Smallest verified almost k-cover assembled from the constructions.

    Candidates: the basic cover, the symmetric cover when divisibility
    allows, catalog entries, and unions best(k1) + best(k2) over all splits
    (demands add under multiset union).  This only seeds branch-and-bound;
    optimality is the ILP's job.
    """
    if n < 1 or k < 1:
        raise ValueError("best_known requires n, k >= 1")
    best = {}
    x = lcm_binomials(n)
    for kk in range(1, k + 1):
        cands = [basic_cover(n, kk)]
        if kk % (n * x) == 0:
            cands.append(symmetric_cover(n, kk))
        for name, (fn, cn, ck) in _CATALOG.items():
            if cn == n and ck == kk:
                cands.append(fn())
        for k1 in range(1, kk // 2 + 1):
            cands.append(best[k1].union(best[kk - k1]))
        chosen = min(cands, key=lambda c: c.size)
        best[kk] = chosen
    result = best[k]
    if not verify_cover(result, k).meets(k):
        raise AssertionError("assembled cover fails verification")
    return result


# --- cover file (de)serialization ---------------------------------------


def cover_to_json(c: MultiCover) -> dict:
    return {
        "n": c.n,
        "planes": [
            {
                "a": [format_rational(x) for x in h.coeffs],
                "mult": m if isinstance(m, int) else format_rational(m),
            }
            for h, m in c.planes
        ],
    }


def cover_from_json(data: dict) -> MultiCover:
    n = int(data["n"])
    planes = []
    for p in data["planes"]:
        coeffs = tuple(parse_rational(s) for s in p["a"])
        m = p["mult"]
        mult = m if isinstance(m, int) else parse_rational(str(m))
        if isinstance(mult, Fraction) and mult.denominator == 1:
            mult = int(mult)
        if mult <= 0:
            raise ValueError("multiplicities must be positive")
        planes.append((HyperplaneForm(n, coeffs), mult))
    return MultiCover(n, tuple(planes))
