import random
from fractions import Fraction

import pytest

from almostcover import core


def test_parse_format_roundtrip():
    rng = random.Random(11)
    for _ in range(500):
        q = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
        assert core.parse_rational(core.format_rational(q)) == q


def test_format_lowest_terms():
    assert core.format_rational(Fraction(22, 12)) == "11/6"
    assert core.format_rational(Fraction(-3)) == "-3"
    assert core.format_rational(Fraction(0)) == "0"


def test_parse_rejects_garbage():
    for bad in ["", "1/0", "a/b", "1.5", "1/2/3"]:
        with pytest.raises(ValueError):
            core.parse_rational(bad)


def test_harmonic_values():
    assert core.harmonic(1) == 1
    assert core.harmonic(3) == Fraction(11, 6)
    assert core.harmonic(4) == Fraction(25, 12)
    assert core.harmonic(5) == Fraction(137, 60)


def test_binomial_agrees_with_pascal():
    for n in range(0, 12):
        for j in range(-2, n + 3):
            if 0 <= j <= n:
                if 0 < j:
                    assert core.binomial(n, j) == core.binomial(n - 1, j - 1) + core.binomial(n - 1, j)
            else:
                assert core.binomial(n, j) == 0


def test_lcm_binomials():
    # lcm of C(n-1, j) over j
    assert core.lcm_binomials(3) == 2
    assert core.lcm_binomials(5) == 12


def test_layer_and_vertex_hex():
    for n in range(1, 7):
        for v in core.all_vertices(n):
            assert core.layer(v) == bin(v).count("1")
            assert core.vertex_from_hex(core.vertex_to_hex(v)) == v


def test_vertex_weight_sums_to_harmonic():
    # sum of 1/(t C(n,t)) over all nonzero vertices is H_n
    for n in range(1, 8):
        total = sum(core.vertex_weight(n, v) for v in core.all_vertices(n))
        assert total == core.harmonic(n)


def test_demand_vectors():
    d = core.uniform_demands(3, 4)
    assert all(d[v] == 4 for v in core.all_vertices(3))
    d = core.layered_demands(3, 3)
    assert d[0b001] == 2 and d[0b011] == 1 and d[0b111] == 0


def test_check_vertex_bounds():
    core.check_vertex(3, 7)
    with pytest.raises(ValueError):
        core.check_vertex(3, 0)
    with pytest.raises(ValueError):
        core.check_vertex(3, 8)
