import random
from fractions import Fraction
from math import factorial

import pytest

from almostcover import lym
from almostcover.core import binomial, layer


def test_family_examples():
    fam = lym.subset_sum_family((1, 1, 1))
    assert fam.layer_counts == (3, 0, 0)
    fam = lym.subset_sum_family((Fraction(1, 2),) * 3)
    assert fam.layer_counts == (0, 3, 0)
    fam = lym.subset_sum_family((2, -1, 0))
    assert set(fam.members) == {0b011, 0b111}


def test_lym_sum_examples():
    assert lym.lym_sum((1, 1, 1)) == 1
    assert lym.lym_sum((Fraction(1, 2),) * 3) == Fraction(1, 2)
    assert lym.lym_sum((2, -1, 0)) == Fraction(1, 2)


def test_lym_sum_equals_layer_count_form():
    rng = random.Random(41)
    for _ in range(200):
        n = rng.randint(1, 6)
        a = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)]
        fam = lym.subset_sum_family(a)
        alt = sum(
            (Fraction(c, t * binomial(n, t)) for t, c in enumerate(fam.layer_counts, 1)),
            Fraction(0),
        )
        assert lym.lym_sum(a) == alt


def test_cycle_start_examples():
    assert lym.cycle_start([-1, 2, -1]) == 3
    assert lym.cycle_start([0, 0, 0]) == 1
    assert lym.cycle_start([1, -1]) == 2


def test_cycle_start_rejects_nonzero_sum():
    with pytest.raises(ValueError):
        lym.cycle_start([1, 1])
    with pytest.raises(ValueError):
        lym.cycle_start([])


def test_cycle_start_property(seed=17, trials=3000):
    rng = random.Random(seed)
    for _ in range(trials):
        t = rng.randint(1, 12)
        e = [Fraction(rng.randint(-30, 30), rng.randint(1, 12)) for _ in range(t - 1)]
        e.append(-sum(e, Fraction(0)))
        s = lym.cycle_start(e)
        acc = Fraction(0)
        for j in range(t - 1):
            acc += e[(s - 1 + j) % t]
            assert acc <= 0


def test_permutation_count_examples():
    assert lym.associated_permutation_count((1, 1), 0b01) == 1
    assert lym.associated_permutation_count((Fraction(1, 2),) * 2, 0b11) == 2
    assert lym.associated_permutation_count((1, 1, 1), 0b001) == 2


def test_permutation_count_rejects_off_hyperplane():
    with pytest.raises(ValueError):
        lym.associated_permutation_count((1, 1), 0b11)


def test_counting_bound_and_packing(seed=29, trials=150):
    rng = random.Random(seed)
    for _ in range(trials):
        n = rng.randint(1, 5)
        a = [Fraction(rng.randint(-20, 20), rng.randint(1, 10)) for _ in range(n)]
        fam = lym.subset_sum_family(a)
        total = 0
        for v in fam.members:
            c = lym.associated_permutation_count(a, v)
            t = layer(v)
            assert c >= factorial(t - 1) * factorial(n - t)
            total += c
        assert total <= factorial(n)
        assert lym.disjointness_check(a)


def test_disjointness_known_cases():
    assert lym.disjointness_check((1, 1, 1, 1))
    assert lym.disjointness_check((Fraction(1, 2),) * 3)
