"""Trace enumeration against an independent brute-force oracle."""

import random
from fractions import Fraction

import pytest

from almostcover import geometry
from almostcover.core import all_vertices, vertex_weight
from almostcover.geometry import (
    HyperplaneForm,
    brute_force_maximal_traces,
    enumerate_maximal_traces,
    origin_in_affine_hull,
    solve_hyperplane_through,
    trace_of,
)

# trace counts frozen from the brute-force closure oracle (n <= 4) and the
# deduplicated subset scan (n = 5)
MAXIMAL_TRACE_COUNTS = {1: 1, 2: 3, 3: 11, 4: 95, 5: 2629}


def test_trace_counts():
    for n, expect in MAXIMAL_TRACE_COUNTS.items():
        assert len(enumerate_maximal_traces(n)) == expect


def test_matches_brute_force_oracle():
    for n in range(1, 5):
        fast = [t.bits for t in enumerate_maximal_traces(n)]
        slow = sorted(t.bits for t in brute_force_maximal_traces(n))
        assert fast == slow


def test_witness_soundness():
    for n in range(1, 6):
        for t in enumerate_maximal_traces(n):
            assert trace_of(t.witness).bits == t.bits


def test_traces_are_antichain():
    for n in range(1, 5):
        bits = [t.bits for t in enumerate_maximal_traces(n)]
        for i, a in enumerate(bits):
            for b in bits[i + 1 :]:
                assert a & b != a and a & b != b


def test_lym_bound_per_trace():
    # total vertex weight on any hyperplane trace is at most 1
    for n in range(1, 6):
        for t in enumerate_maximal_traces(n):
            w = sum(vertex_weight(n, v) for v in t.vertices())
            assert w <= 1


def test_solve_hyperplane_through_random_subsets():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(1, 4)
        verts = rng.sample(list(all_vertices(n)), rng.randint(1, n))
        sol = solve_hyperplane_through(verts, n)
        if sol is None:
            assert origin_in_affine_hull(verts, n)
        else:
            h = HyperplaneForm(n, sol.particular)
            for v in verts:
                assert h.value_at(v) == 1


def test_hyperplane_form_rejects_zero_vector():
    with pytest.raises(ValueError):
        HyperplaneForm(2, (Fraction(0), Fraction(0)))


def test_trace_serialization():
    t = enumerate_maximal_traces(3)[0]
    assert int(t.to_hex(), 16) == t.bits
    assert all(isinstance(s, str) for s in t.witness.serialize())
