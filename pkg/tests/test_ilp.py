"""Branch-and-bound and deficiency search against frozen exact values."""

import math
from fractions import Fraction

import pytest

from almostcover import constructions as cs
from almostcover import ilp
from almostcover.core import all_vertices, uniform_demands


def _check_witness(n, columns, witness, demands):
    cov = {v: 0 for v in all_vertices(n)}
    for j, m in witness.items():
        for v in all_vertices(n):
            if (columns[j] >> (v - 1)) & 1:
                cov[v] += m
    for v in all_vertices(n):
        assert cov[v] >= demands[v]


def test_f_exact_small_values():
    expect = {
        (1, 1): 1, (2, 1): 2, (2, 2): 3, (2, 3): 5,
        (3, 1): 3, (3, 2): 4, (3, 3): 6, (3, 4): 8,
        (4, 2): 5, (4, 3): 7,
    }
    for (n, k), val in expect.items():
        r = ilp.f_exact(n, k)
        assert r.status == "proved"
        assert r.optimum == val
        assert sum(r.witness.values()) == val
        _check_witness(n, ilp.maximal_trace_columns(n), r.witness, uniform_demands(n, k))


def test_root_bound_is_lp_value():
    r = ilp.f_exact(3, 3)
    assert r.root_bound == Fraction(11, 2)


def test_node_limit_reported():
    r = ilp.f_exact(4, 1, ilp.Limits(max_nodes=2))
    assert r.status == "limit_reached"
    assert r.optimum == 4  # the seeded incumbent is already optimal
    assert r.lower_bound <= r.optimum


def test_determinism():
    a = ilp.f_exact(3, 1)
    b = ilp.f_exact(3, 1)
    assert (a.optimum, a.nodes, a.witness) == (b.optimum, b.nodes, b.witness)


def test_layered_values():
    # frozen from proved runs; demand on layer t is max(k - t, 0)
    expect = {(3, 1): 0, (3, 2): 1, (3, 3): 3, (3, 4): 5, (4, 2): 1, (4, 3): 3, (4, 4): 5}
    for (n, k), val in expect.items():
        r = ilp.layered_min_m(n, k)
        assert r.status == "proved" and r.optimum == val


def test_layered_upper_bound_construction():
    for n in range(1, 5):
        for k in range(1, 5):
            r = ilp.layered_min_m(n, k)
            assert r.status == "proved"
            assert r.optimum <= k * (k - 1) // 2


def test_layered_lp_bound_closed_form():
    from almostcover.core import harmonic

    assert ilp.layered_lp_bound(1) == 0
    for k in range(2, 11):
        assert ilp.layered_lp_bound(k) == 1 - k + k * harmonic(k - 1)


def test_g_exact_closed_forms():
    for n in range(1, 5):
        for m in range(0, n + 1):
            r = ilp.g_exact(n, m, 1)
            assert r.status == "proved" and r.deficiency == 2 ** (n - m)
        for m in range(1, n + 2):
            r = ilp.g_exact(n, m, 2)
            assert r.status == "proved" and r.deficiency == 2 ** (n - m + 1)


def test_g_witness_is_exact():
    r = ilp.g_exact(3, 2, 2)
    cols = ilp.maximal_trace_columns(3)
    assert len(r.witness) == 2
    assert ilp._deficiency_of(3, 2, cols, r.witness) == r.deficiency


def test_g_trivial_and_lift_bounds():
    for n in range(1, 5):
        for k in (1, 2):
            for m in range(1, n + k):
                r = ilp.g_exact(n, m, k)
                assert r.deficiency >= 2 ** max(0, n - m + k - 1)
    # m planes from an optimal subcube cover leave at most 2^{n-d} short
    for d in (2, 3):
        fd = ilp.f_exact(d, 2).optimum
        r = ilp.g_exact(4, fd, 2)
        assert r.deficiency <= 2 ** (4 - d)


def test_g_matches_brute_force_oracle():
    from itertools import combinations_with_replacement

    for n in (2, 3):
        cols = ilp.maximal_trace_columns(n)
        for m in range(1, 5):
            for k in (1, 2, 3):
                best = 1 << n
                for picks in combinations_with_replacement(range(len(cols)), m):
                    best = min(best, ilp._deficiency_of(n, k, cols, picks))
                r = ilp.g_exact(n, m, k)
                assert r.status == "proved" and r.deficiency == best


def test_g_4_5_3():
    # inside the sandwich 2^{n-m+k-1} = 2 <= g <= 2^{4-2} = 4 (lift of an
    # optimal 3-cover of the square); the exhaustive search settles it at 4
    r = ilp.g_exact(4, 5, 3)
    assert r.status == "proved" and r.deficiency == 4


def test_f_sandwich_monotone_subadditive():
    import math as _m

    from almostcover.lp import f_star

    vals = {}
    for n in (2, 3):
        for k in range(1, 6):
            vals[n, k] = ilp.f_exact(n, k).optimum
            assert _m.ceil(f_star(n, k)) <= vals[n, k] <= n + k * (k - 1) // 2
    for n in (2, 3):
        for k in range(2, 6):
            assert vals[n, k] >= vals[n, k - 1] + 1
        for k1 in range(1, 3):
            for k2 in range(1, 3):
                assert vals[n, k1 + k2] <= vals[n, k1] + vals[n, k2]


def test_solve_multicover_rejects_uncoverable():
    with pytest.raises(ValueError):
        ilp.f_exact(0, 1)
