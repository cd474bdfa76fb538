"""Subset-sum LYM analogue and the permutation machinery behind it.

For rationals a_1..a_n, the family of supports S with sum_{i in S} a_i = 1
satisfies sum_S 1/(|S| C(n,|S|)) <= 1.  The proof associates each member
vertex with the permutations of [n] that begin with its support in some
order while keeping every proper prefix sum strictly below 1; no
permutation serves two vertices, and each vertex claims at least
(t-1)!(n-t)! of them.  The brute-force scans (2^n subsets, n!
permutations) are the point here, not a performance problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial

from .core import Rational, all_vertices, binomial, layer


@dataclass(frozen=True)
class SubsetSumFamily:
    n: int
    a: tuple  # coefficients
    members: tuple  # vertex masks with <a, v> = 1
    layer_counts: tuple  # count of members on layer t, index t-1


def _value(a, v):
    s = Fraction(0)
    for i in range(len(a)):
        if (v >> i) & 1:
            s += a[i]
    return s


def subset_sum_family(a) -> SubsetSumFamily:
    a = tuple(Fraction(x) for x in a)
    n = len(a)
    if n < 1 or n > 20:
        raise ValueError("need 1 <= n <= 20")
    members = tuple(v for v in all_vertices(n) if _value(a, v) == 1)
    counts = [0] * n
    for v in members:
        counts[layer(v) - 1] += 1
    return SubsetSumFamily(n, a, members, tuple(counts))


def lym_sum(a) -> Fraction:
    fam = subset_sum_family(a)
    n = fam.n
    return sum(
        (Fraction(c, t * binomial(n, t)) for t, c in enumerate(fam.layer_counts, 1)),
        Fraction(0),
    )


def cycle_start(e) -> int:
    """Start index (1-based) from which every cyclic prefix sum of length
    1..t-1 is <= 0.  Exists because the total is zero: cut just after a
    maximal consecutive-sum block.  Ties go to the earliest block (smallest
    start, then shortest length, the empty block included)."""
    e = [Fraction(x) for x in e]
    t = len(e)
    if t < 1:
        raise ValueError("need at least one term")
    if sum(e) != 0:
        raise ValueError("terms must sum to zero")
    best = Fraction(0)  # the empty block
    best_start, best_len = 1, 0
    for s in range(1, t + 1):
        acc = Fraction(0)
        for length in range(1, t):
            acc += e[(s - 1 + length - 1) % t]
            if acc > best:
                best = acc
                best_start, best_len = s, length
    start = (best_start - 1 + best_len) % t + 1
    # sanity: the defining property must hold
    acc = Fraction(0)
    for j in range(t - 1):
        acc += e[(start - 1 + j) % t]
        if acc > 0:
            raise AssertionError("cycle lemma violated")
    return start


def _support(v):
    return tuple(i for i in range(v.bit_length()) if (v >> i) & 1)


def associated_permutation_count(a, v) -> int:
    """Number of permutations of [n] beginning with the support of v in an
    order whose proper prefix sums all stay strictly below 1."""
    a = tuple(Fraction(x) for x in a)
    n = len(a)
    if n > 8:
        raise ValueError("n <= 8 for the factorial scan")
    if not (1 <= v < (1 << n)) or _value(a, v) != 1:
        raise ValueError("vertex is not on the hyperplane")
    supp = _support(v)
    t = len(supp)
    good = 0
    for order in permutations(supp):
        acc = Fraction(0)
        ok = True
        for j in range(t - 1):
            acc += a[order[j]]
            if acc >= 1:
                ok = False
                break
        if ok:
            good += 1
    return good * factorial(n - t)


def disjointness_check(a) -> bool:
    """True iff no permutation of [n] is associated to two member vertices."""
    a = tuple(Fraction(x) for x in a)
    n = len(a)
    if n > 8:
        raise ValueError("n <= 8 for the factorial scan")
    members = set(subset_sum_family(a).members)
    for perm in permutations(range(n)):
        hits = 0
        acc = Fraction(0)
        mask = 0
        prefix_ok = True  # all sums of length < current are < 1
        for d in perm:
            mask |= 1 << d
            if mask in members and prefix_ok:
                hits += 1
                if hits > 1:
                    return False
            acc += a[d]
            if acc >= 1:
                prefix_ok = False
    return True
