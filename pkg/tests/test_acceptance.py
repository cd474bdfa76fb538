"""Acceptance gate: one test per criterion, exact arithmetic throughout.

Each test prints a single PASS line on success so the suite output doubles
as a report.
"""

import math
import os
import random
import time
from fractions import Fraction
from math import factorial

import pytest

from almostcover import constructions as cs
from almostcover import ilp, lp, lym, poly
from almostcover.core import all_vertices, harmonic, layer, uniform_demands
from almostcover.geometry import enumerate_maximal_traces


def test_01_fractional_optimum():
    t0 = time.monotonic()
    for n in range(1, 6):
        cols = [t.bits for t in enumerate_maximal_traces(n)]
        for k in (1, 2, 7):
            sol = lp.solve_cover_lp(lp.LpProblem(n, cols, uniform_demands(n, k)))
            assert sol.status == "optimal"
            assert sol.value == harmonic(n) * k
    dt = time.monotonic() - t0
    assert dt < 60
    print("PASS criterion 1: fractional optimum H_n*k certified, n<=5 (%.1fs)" % dt)


def test_02_integral_optima_closed_forms():
    t0 = time.monotonic()
    for k in range(1, 11):
        r = ilp.f_exact(2, k)
        assert r.status == "proved" and r.optimum == math.ceil(Fraction(3 * k, 2))
    assert ilp.f_exact(3, 1).optimum == 3
    for k in range(2, 9):
        r = ilp.f_exact(3, k)
        assert r.status == "proved" and r.optimum == math.ceil(Fraction(11 * k, 6))
    assert ilp.f_exact(4, 1).optimum == 4
    for k in range(2, 5):
        r = ilp.f_exact(4, k)
        assert r.status == "proved" and r.optimum == math.ceil(Fraction(25 * k, 12))
    dt = time.monotonic() - t0
    assert dt < 300
    print("PASS criterion 2: integral optima match closed forms, all proved (%.1fs)" % dt)


def test_03_k3_is_n_plus_3():
    t0 = time.monotonic()
    for n in (2, 3, 4):
        r = ilp.f_exact(n, 3)
        assert r.status == "proved" and r.optimum == n + 3
    dt = time.monotonic() - t0
    assert dt < 120
    print("PASS criterion 3: f(n,3)=n+3 proved for n=2..4 (%.1fs)" % dt)


def test_04_k4_values():
    assert ilp.f_exact(3, 4).optimum == 8
    assert ilp.f_exact(4, 4).optimum == 9
    c = cs.special_cover("q5_k4")
    assert c.size == 10 and cs.verify_cover(c, 4).meets(4)
    r = ilp.f_exact(5, 4, ilp.Limits(max_nodes=10**6, time_limit=1800.0))
    if r.status == "proved":
        assert r.optimum == 10
        msg = "f(5,4)=10 proved"
    else:
        assert r.optimum <= 10  # the <= direction is witnessed regardless
        msg = "f(5,4)<=10 verified, equality on record"
    print("PASS criterion 4: f(3,4)=8, f(4,4)=9, %s" % msg)


@pytest.mark.skipif(
    not os.environ.get("ALMOSTCOVER_STRETCH"),
    reason="stretch instance; set ALMOSTCOVER_STRETCH=1 to run",
)
def test_05_stretch_f_5_15():
    r = ilp.f_exact(5, 15, ilp.Limits(max_nodes=10**7, time_limit=3600.0))
    if r.status == "proved":
        assert r.optimum == 35
    print("PASS criterion 5: f(5,15) run finished with status %s" % r.status)


def test_06_construction_suite():
    for name in cs.catalog_names():
        c = cs.special_cover(name)
        rep = cs.verify_cover(c, cs.catalog_k(name))
        assert rep.meets(cs.catalog_k(name)) and rep.origin_coverage == 0
    for n in range(1, 6):
        for k in range(1, 6):
            rep = cs.verify_cover(cs.basic_cover(n, k), k)
            assert rep.meets(k) and rep.origin_coverage == 0
    c = cs.symmetric_cover(3, 6)
    assert c.size == 11  # planes counted with multiplicity
    rep = cs.verify_cover(c, 6)
    assert set(rep.coverage.values()) == {Fraction(6)}
    print("PASS criterion 6: catalog, basic and symmetric covers all verify")


def test_07_lym_bound():
    rng = random.Random(20260824)
    worst = Fraction(0)
    for _ in range(10**4):
        n = rng.randint(1, 8)
        a = [Fraction(rng.randint(-100, 100), rng.randint(1, 100)) for _ in range(n)]
        s = lym.lym_sum(a)
        assert s <= 1
        worst = max(worst, s)
    for n in range(1, 11):
        for v in all_vertices(n):
            a = [1 if (v >> i) & 1 else 0 for i in range(n)]
            assert lym.lym_sum(a) == 1
    print("PASS criterion 7: lym bound on 10^4 random vectors (max %s), tight on 0/1" % worst)


def test_08_proof_machinery():
    t0 = time.monotonic()
    rng = random.Random(8)
    for _ in range(10**3):
        n = rng.randint(1, 6)
        a = [Fraction(rng.randint(-50, 50), rng.randint(1, 50)) for _ in range(n)]
        assert lym.disjointness_check(a)
        for v in lym.subset_sum_family(a).members:
            t = layer(v)
            c = lym.associated_permutation_count(a, v)
            assert c >= factorial(t - 1) * factorial(n - t)
    for _ in range(10**5):
        t = rng.randint(1, 12)
        e = [Fraction(rng.randint(-40, 40), rng.randint(1, 16)) for _ in range(t - 1)]
        e.append(-sum(e, Fraction(0)))
        s = lym.cycle_start(e)
        acc = Fraction(0)
        for j in range(t - 1):
            acc += e[(s - 1 + j) % t]
            assert acc <= 0
    dt = time.monotonic() - t0
    assert dt < 300
    print("PASS criterion 8: disjointness, counting bound, cycle starts (%.1fs)" % dt)


def test_09_multiplicity_bridge():
    t0 = time.monotonic()
    checked = 0
    for name in cs.catalog_names():
        c = cs.special_cover(name)
        total = sum(m for _, m in c.planes)
        if c.n > 4 or total > 12:
            continue  # outside the polynomial guards
        rep = cs.verify_cover(c, 1)
        f = poly.product_of_forms(c)
        origin = (Fraction(0),) * c.n
        assert poly.zero_multiplicity(f, origin) == 0
        for v in all_vertices(c.n):
            pt = tuple(Fraction((v >> i) & 1) for i in range(c.n))
            assert poly.zero_multiplicity(f, pt) == rep.coverage[v]
        checked += 1
    assert checked >= 3
    dt = time.monotonic() - t0
    assert dt < 60
    print("PASS criterion 9: multiplicity equals coverage on %d catalog covers (%.1fs)" % (checked, dt))


def test_10_deficiency_values():
    t0 = time.monotonic()
    for n in range(1, 5):
        for m in range(0, n + 1):
            r = ilp.g_exact(n, m, 1)
            assert r.status == "proved" and r.deficiency == 2 ** (n - m)
        for m in range(1, n + 2):
            r = ilp.g_exact(n, m, 2)
            assert r.status == "proved" and r.deficiency == 2 ** (n - m + 1)
    # trivial lower bound and lift upper bound on solved instances
    for n in range(1, 5):
        for k in (1, 2):
            for m in range(1, n + k):
                r = ilp.g_exact(n, m, k)
                assert r.deficiency >= 2 ** max(0, n - m + k - 1)
    for d in (2, 3):
        for k in (1, 2):
            fd = ilp.f_exact(d, k).optimum
            assert ilp.g_exact(4, fd, k).deficiency <= 2 ** (4 - d)
    dt = time.monotonic() - t0
    assert dt < 600
    print("PASS criterion 10: deficiency closed forms and bounds (%.1fs)" % dt)


def test_11_layered_problem():
    for n in range(1, 5):
        for k in range(1, 5):
            r = ilp.layered_min_m(n, k)
            assert r.status == "proved"
            assert r.optimum <= k * (k - 1) // 2
    assert ilp.layered_lp_bound(1) == 0
    for k in range(2, 11):
        assert ilp.layered_lp_bound(k) == 1 - k + k * harmonic(k - 1)
    print("PASS criterion 11: layered minima within C(k,2), LP bound closed form")
