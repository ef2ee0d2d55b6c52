import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orderdim.errors import NotSeparated, PointOutsideInterval
from orderdim.separators import (
    MAXIMAL,
    MINIMAL,
    RationalInterval,
    SeparatorInstance,
    approximating_sequences,
    embed,
    embedded_interval,
    ls,
    ls_star,
    ls_to_point,
    point_to_separator,
    separator_elements,
    xc1_via_ls,
)


def random_instance(rng: random.Random, max_len: int = 12) -> SeparatorInstance:
    n = rng.randint(0, max_len)
    order = [f"u{i}" for i in range(n)]
    rng.shuffle(order)
    cut = rng.randint(0, n)
    I = {x for x in order[:cut] if rng.random() < 0.5}
    F = {x for x in order[cut:] if rng.random() < 0.5}
    return SeparatorInstance(tuple(order), frozenset(I), frozenset(F))


def brute_separators(inst):
    out = []
    for k in range(len(inst.order) + 1):
        B = set(inst.order[:k])
        if inst.I <= B and not (B & inst.F):
            out.append(frozenset(B))
    return out


def brute_has_element(inst):
    rank = inst.rank
    return any(
        all(rank[a] <= rank[b] for a in inst.I) and all(rank[b] <= rank[c] for c in inst.F) for b in inst.order
    )


def test_examples():
    inst = SeparatorInstance(("a", "b", "c", "d"), {"a"}, {"d"})
    assert ls(inst, MINIMAL) == {"a"}
    assert ls(inst, MAXIMAL) == {"a", "b", "c"}
    empty = SeparatorInstance((), (), ())
    assert ls(empty) == frozenset()
    assert separator_elements([inst, empty]) == {0}


def test_not_separated():
    bad = SeparatorInstance(("a", "b"), {"b"}, {"a"})
    with pytest.raises(NotSeparated) as info:
        ls_star([SeparatorInstance(("x",), (), ()), bad])
    assert info.value.index == 1


def test_random_instances_against_brute_force():
    rng = random.Random(2024)
    for _ in range(500):
        inst = random_instance(rng)
        seps = brute_separators(inst)
        assert seps
        lo, hi = ls(inst, MINIMAL), ls(inst, MAXIMAL)
        assert lo == min(seps, key=len) and hi == max(seps, key=len)
        assert inst.is_separator(lo) and inst.is_separator(hi)
        assert (0 in separator_elements([inst])) == brute_has_element(inst)
        x = ls_to_point(inst)
        assert x in embedded_interval(inst)
        assert inst.is_separator(point_to_separator(inst, x))


def test_every_interval_point_gives_a_separator():
    rng = random.Random(99)
    for _ in range(200):
        inst = random_instance(rng, 8)
        A = embedded_interval(inst)
        for t in range(5):
            x = A.lo + (A.hi - A.lo) * Fraction(t, 4)
            assert inst.is_separator(point_to_separator(inst, x))


def test_point_outside_interval():
    inst = SeparatorInstance(("a", "b", "c"), {"b"}, ())
    A = embedded_interval(inst)
    with pytest.raises(PointOutsideInterval):
        point_to_separator(inst, A.lo - Fraction(1, 100))


def test_embedding_is_order_preserving():
    inst = SeparatorInstance(tuple("abcde"), (), ())
    points = [embed(inst, x, c) for x in inst.order for c in (0, 1)]
    assert points == sorted(points)
    assert all(0 < p < 1 for p in points)


def test_xc1_examples():
    assert xc1_via_ls(RationalInterval(Fraction(1, 3), Fraction(1, 3))) == Fraction(1, 3)
    assert xc1_via_ls(RationalInterval(0, 1)) in RationalInterval(0, 1)
    assert xc1_via_ls(RationalInterval(0, 0)) == 0


def test_approximations_converge_strictly():
    A = RationalInterval(Fraction(1, 4), Fraction(2, 3))
    lows, highs = approximating_sequences(A, 10)
    assert lows == sorted(lows) and all(q < A.lo for q in lows)
    assert highs == sorted(highs, reverse=True) and all(q > A.hi for q in highs)
    assert A.lo - lows[-1] < Fraction(1, 1000)


@settings(max_examples=300, deadline=None)
@given(
    a=st.fractions(min_value=0, max_value=1),
    b=st.fractions(min_value=0, max_value=1),
    depth=st.integers(min_value=0, max_value=10),
)
def test_xc1_lands_in_interval(a, b, depth):
    A = RationalInterval(min(a, b), max(a, b))
    assert xc1_via_ls(A, depth) in A


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_minimal_below_maximal(r):
    inst = random_instance(r)
    assert ls(inst, MINIMAL) <= ls(inst, MAXIMAL)
