import itertools
import random

import pytest

from orderdim.core import LinearExtension, build_poset, linearize
from orderdim.dimension import (
    Realizer,
    dimension_exact,
    dimension_oracle,
    linear_extensions,
    standard_realization,
    verify_realizer,
)
from orderdim.errors import BudgetExceeded, NotAnExtension, SizeMismatch, TooLarge
from orderdim.generators import gen_fn

from conftest import all_posets, brute_width, relabeled, shuffled_random_poset


def _realizes_brute(P, orders):
    # intersection of the orders equals the strict order, checked pair by pair
    for x, y in itertools.permutations(range(P.n), 2):
        in_all = all(o.index(x) < o.index(y) for o in orders)
        if in_all != P.less(x, y):
            return False
    return True


def test_verify_matches_brute_force():
    rng = random.Random(2)
    for _ in range(200):
        P = shuffled_random_poset(rng.randint(2, 6), rng)
        exts = linear_extensions(P)
        picks = [list(rng.choice(exts)) for _ in range(rng.randint(1, 3))]
        assert bool(verify_realizer(P, Realizer(picks))) == _realizes_brute(P, picks)


def test_verify_reports_unreversed_pair():
    P, R = gen_fn(3)
    verdict = verify_realizer(P, Realizer(R.exts[:2]))
    assert not verdict
    x, y = verdict.pair
    assert all(e.rank[x] < e.rank[y] for e in R.exts[:2])
    assert not P.comparable(x, y)


def test_verify_rejects_non_extensions():
    P = build_poset("ab", [("a", "b")])
    with pytest.raises(NotAnExtension):
        verify_realizer(P, Realizer([(1, 0)]))
    with pytest.raises(SizeMismatch):
        verify_realizer(P, Realizer([(0,)]))


def test_standard_realization():
    rng = random.Random(4)
    for _ in range(60):
        P = shuffled_random_poset(rng.randint(1, 7), rng)
        R = standard_realization(P)
        assert verify_realizer(P, R)
    antichain = build_poset("ab", [])
    assert len(standard_realization(antichain)) == 2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_fn_dimension(n):
    P, R = gen_fn(n)
    res = dimension_exact(P)
    assert res.dim == n
    assert len(res.witness) == n and verify_realizer(P, res.witness)
    assert [t for t, _ in res.proof_of_lower] == list(range(1, n))


def test_small_cases():
    assert dimension_exact(build_poset(["a"], [])).dim == 1
    assert dimension_exact(build_poset("abc", [("a", "b"), ("b", "c")])).dim == 1
    assert dimension_exact(build_poset("abc", [])).dim == 2
    assert dimension_oracle(build_poset("abc", [])) == 2


def test_exhaustive_four_element_posets():
    posets = list(all_posets(4))
    assert len(posets) == 219
    for P in posets:
        assert dimension_exact(P).dim == dimension_oracle(P)


def test_random_oracle_agreement():
    rng = random.Random(8)
    for _ in range(60):
        P = shuffled_random_poset(rng.randint(5, 8), rng)
        assert dimension_exact(P).dim == dimension_oracle(P)


def test_dimension_bounds_and_monotonicity():
    rng = random.Random(10)
    for _ in range(40):
        P = shuffled_random_poset(rng.randint(4, 8), rng)
        d = dimension_exact(P).dim
        assert d <= brute_width(P)
        assert d <= max(2, P.n // 2)
        keep = rng.sample(range(P.n), rng.randint(1, P.n - 1))
        assert dimension_exact(P.induced(keep)).dim <= d


def test_budget_exceeded_carries_bounds():
    P, _ = gen_fn(4)
    with pytest.raises(BudgetExceeded) as info:
        dimension_exact(P, node_budget=5)
    exc = info.value
    assert exc.lower <= 4 <= exc.upper
    assert exc.nodes > 5 - 1


def test_oracle_size_limit():
    P, _ = gen_fn(5)
    with pytest.raises(TooLarge):
        dimension_oracle(P)


def test_linear_extensions_enumeration():
    P = build_poset("abc", [("a", "b")])
    got = {tuple(P.labels[x] for x in e) for e in linear_extensions(P)}
    assert got == {("a", "b", "c"), ("a", "c", "b"), ("c", "a", "b")}


def _reversals(P, R, n):
    a = [P.index(f"a:{k}") for k in range(n)]
    b = [P.index(f"b:{k}") for k in range(n)]
    return [sum(1 for e in R.exts if e.rank[b[k]] < e.rank[a[k]]) for k in range(n)]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_each_pair_reversed_exactly_once(n):
    rng = random.Random(n)
    base, _ = gen_fn(n)
    for _ in range(10):
        P = relabeled(base, rng)
        R = dimension_exact(P).witness
        assert len(R) == n
        assert _reversals(P, R, n) == [1] * n


def test_each_pair_reversed_once_in_every_3_realizer_of_f3():
    P, _ = gen_fn(3)
    exts = [LinearExtension(e) for e in linear_extensions(P)]
    found = 0
    for trio in itertools.combinations(exts, 3):
        R = Realizer(trio)
        if verify_realizer(P, R):
            found += 1
            assert _reversals(P, R, 3) == [1, 1, 1]
    assert found > 0


def test_witness_linearizes_slots():
    P, _ = gen_fn(3)
    res = dimension_exact(P)
    assert all(e.extends(P) for e in res.witness)
    assert linearize(P).extends(P)
