"""Sparse multivariate polynomials over exact rationals.

Used to expand the product of the affine forms <a,x> - 1 of a cover and to
read off zero multiplicities at cube vertices: the multiplicity at a
nonzero vertex equals its coverage count, and the product must not vanish
at the origin.  This is a verifier for that semantics, not a CAS; guards
keep term counts small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import all_vertices, check_vertex


@dataclass(frozen=True)
class MultiPoly:
    """terms: exponent tuple (length n) -> nonzero rational coefficient."""

    n: int
    terms: tuple  # sorted ((exps, coeff), ...)

    @staticmethod
    def from_dict(n, d):
        clean = tuple(sorted((e, c) for e, c in d.items() if c != 0))
        return MultiPoly(n, clean)

    def coeff(self, exps):
        for e, c in self.terms:
            if e == exps:
                return c
        return Fraction(0)

    @staticmethod
    def constant(n, value):
        value = Fraction(value)
        if value == 0:
            return MultiPoly(n, ())
        return MultiPoly(n, (((0,) * n, value),))

    @staticmethod
    def affine(n, coeffs, const):
        """<coeffs, x> + const."""
        d = {}
        for i, a in enumerate(coeffs):
            a = Fraction(a)
            if a:
                e = [0] * n
                e[i] = 1
                d[tuple(e)] = a
        c = Fraction(const)
        if c:
            d[(0,) * n] = d.get((0,) * n, Fraction(0)) + c
        return MultiPoly.from_dict(n, d)

    def __add__(self, other):
        d = dict(self.terms)
        for e, c in other.terms:
            d[e] = d.get(e, Fraction(0)) + c
        return MultiPoly.from_dict(self.n, d)

    def __mul__(self, other):
        d = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, Fraction(0)) + c1 * c2
        return MultiPoly.from_dict(self.n, d)

    def evaluate(self, point):
        point = [Fraction(p) for p in point]
        total = Fraction(0)
        for e, c in self.terms:
            v = c
            for i, ex in enumerate(e):
                if ex:
                    v *= point[i] ** ex
            total += v
        return total

    def shift(self, point):
        """The polynomial f(x + p), expanded exactly one variable at a time."""
        point = [Fraction(p) for p in point]
        cur = dict(self.terms)
        for i, p in enumerate(point):
            if p == 0:
                continue
            nxt = {}
            for e, c in cur.items():
                deg = e[i]
                # (x_i + p)^deg distributed over the rest of the term
                for j in range(deg + 1):
                    coeff = c * math.comb(deg, j) * p ** (deg - j)
                    ne = e[:i] + (j,) + e[i + 1 :]
                    nxt[ne] = nxt.get(ne, Fraction(0)) + coeff
            cur = nxt
        return MultiPoly.from_dict(self.n, cur)

    def is_zero(self):
        return not self.terms


def product_of_forms(c) -> MultiPoly:
    """Exact expansion of prod (<a,x> - 1)^mult over the cover's planes."""
    n = c.n
    total = 0
    for _, m in c.planes:
        if not isinstance(m, int):
            raise ValueError("product_of_forms needs integer multiplicities")
        total += m
    if n > 4 or total > 12:
        raise ValueError("size guard: need n <= 4 and total multiplicity <= 12")
    f = MultiPoly.constant(n, 1)
    for h, m in c.planes:
        factor = MultiPoly.affine(n, h.coeffs, -1)
        for _ in range(m):
            f = f * factor
    return f


def zero_multiplicity(f: MultiPoly, point):
    """Minimum total degree after shifting the origin to `point`.

    0 iff f(point) != 0; math.inf for the zero polynomial.
    """
    if f.is_zero():
        return math.inf
    g = f.shift(point)
    return min(sum(e) for e, _ in g.terms)


def check_cover_multiplicity(c, k) -> bool:
    """True iff the cover product vanishes to order >= k at every nonzero
    vertex and not at all at the origin."""
    f = product_of_forms(c)
    n = c.n
    origin = (Fraction(0),) * n
    if zero_multiplicity(f, origin) != 0:
        return False
    for v in all_vertices(n):
        check_vertex(n, v)
        point = tuple(Fraction((v >> i) & 1) for i in range(n))
        if zero_multiplicity(f, point) < k:
            return False
    return True


def vertex_multiplicities(c):
    """{vertex mask: multiplicity of the cover product there}, origin at 0."""
    f = product_of_forms(c)
    n = c.n
    out = {}
    for v in range(1 << n):
        point = tuple(Fraction((v >> i) & 1) for i in range(n))
        m = zero_multiplicity(f, point)
        out[v] = m
    return out
