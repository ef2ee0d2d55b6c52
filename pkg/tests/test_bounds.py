import random

import pytest

from orderdim.bounds import (
    AnchoredRequest,
    anchor_linearization,
    anchoring_holds,
    db_point,
    dbc,
    dbi,
    lift_extension,
)
from orderdim.core import ChainSet, LinearExtension, build_poset, linearize
from orderdim.dimension import Realizer, dimension_exact, standard_realization, verify_realizer
from orderdim.errors import (
    ChainsNotPairwiseIncomparable,
    ElementNotRemoved,
    InvalidRealizer,
    NotAChain,
    NotAnExtension,
    NotIncomparableChains,
    SizeMismatch,
)
from orderdim.generators import gen_fn, gen_sharpness

from conftest import random_chain, shuffled_random_poset


def _subrealizer(P, removed):
    Q, _ = P.without(removed)
    return dimension_exact(Q).witness if Q.n <= 9 else standard_realization(Q)


def _incomparable_chains(P, rng, count):
    chains, used = [], set()
    for _ in range(count):
        pool = [x for x in range(P.n) if x not in used and all(not P.comparable(x, y) for y in used)]
        c = random_chain(P, rng, pool, max_len=3)
        chains.append(c)
        used |= c
    return chains


def _brute_anchor_ok(P, ext, C0, C1):
    rank = ext.rank
    for x in range(P.n):
        for c0 in C0:
            for c1 in C1:
                if not P.comparable(x, c0) and not P.comparable(x, c1):
                    if not rank[c0] < rank[x] < rank[c1]:
                        return False
    return True


def test_anchor_on_f3():
    P, _ = gen_fn(3)
    a0, b0 = P.index("a:0"), P.index("b:0")
    ext = anchor_linearization(AnchoredRequest(P, {a0}, {b0}))
    assert ext.order[0] == a0 and ext.order[-1] == b0


def test_anchor_random():
    rng = random.Random(31)
    for _ in range(100):
        P = shuffled_random_poset(rng.randint(2, 9), rng)
        C0, C1 = _incomparable_chains(P, rng, 2)
        ext = anchor_linearization(AnchoredRequest(P, C0, C1))
        assert ext.extends(P)
        assert _brute_anchor_ok(P, ext, C0, C1)
        assert anchoring_holds(P, ext, C0, C1)


def test_anchor_rejects_bad_chains():
    P = build_poset("abc", [("a", "b")])
    with pytest.raises(NotAChain):
        AnchoredRequest(P, {0, 2}, set())
    with pytest.raises(NotIncomparableChains):
        AnchoredRequest(P, {0}, {1})


def test_lift_keeps_subextension():
    rng = random.Random(41)
    for _ in range(50):
        P = shuffled_random_poset(rng.randint(2, 9), rng)
        S = rng.sample(range(P.n), rng.randint(0, P.n - 1))
        Q, keep = P.without(S)
        ext = linearize(Q)
        out = lift_extension(P, S, ext)
        assert out.extends(P)
        assert out.restrict(keep) == ext


def test_lift_errors():
    P = build_poset("abc", [("a", "b")])
    with pytest.raises(SizeMismatch):
        lift_extension(P, [2], LinearExtension((0,)))
    with pytest.raises(NotAnExtension):
        lift_extension(P, [2], LinearExtension((1, 0)))


def test_dbi_contract_random():
    rng = random.Random(51)
    for _ in range(100):
        P = shuffled_random_poset(rng.randint(3, 10), rng)
        n = rng.randint(1, 3)
        chains = ChainSet(tuple(_incomparable_chains(P, rng, n)))
        R = _subrealizer(P, chains.union())
        out = dbi(P, chains, R)
        assert len(out) == len(R) + max(2, n)
        assert verify_realizer(P, out)
        _, keep = P.without(chains.union())
        assert all(out[i].restrict(keep) == R[i] for i in range(len(R)))


def test_dbc_contract_random():
    rng = random.Random(61)
    for _ in range(100):
        P = shuffled_random_poset(rng.randint(3, 10), rng)
        n = rng.randint(1, 3)
        chains = ChainSet(tuple(random_chain(P, rng, max_len=3) for _ in range(n)))
        R = _subrealizer(P, chains.union())
        out = dbc(P, chains, R)
        assert len(out) == len(R) + 2 * n
        assert verify_realizer(P, out)


def test_db_point_contract_random():
    rng = random.Random(71)
    for _ in range(100):
        P = shuffled_random_poset(rng.randint(2, 10), rng)
        x0 = rng.randrange(P.n)
        Q, keep = P.without([x0])
        R = _subrealizer(P, [x0])
        out = db_point(P, x0, R)
        m = len(R)
        assert len(out) == m + 1
        assert verify_realizer(P, out)
        for j in range(m - 1):
            assert out[j].restrict(keep) == R[j]


def test_db_point_chain_plus_isolated_point():
    P = build_poset(["a", "b", "c", "x"], [("a", "b"), ("b", "c")])
    x = P.index("x")
    Q, _ = P.without([x])
    out = db_point(P, x, Realizer((linearize(Q),)))
    assert len(out) == 2 and verify_realizer(P, out)


def test_dbi_rejects_comparable_chains():
    P = build_poset("abc", [("a", "b")])
    with pytest.raises(ChainsNotPairwiseIncomparable):
        dbi(P, [{0}, {1}], Realizer((LinearExtension((0,)),)))


def test_invalid_subrealizer():
    P, _ = gen_fn(3)
    a0 = P.index("a:0")
    Q, _ = P.without([a0])
    too_few = Realizer((linearize(Q),))
    with pytest.raises(InvalidRealizer):
        db_point(P, a0, too_few)


def test_db_point_needs_removed_element():
    P, R = gen_fn(2)
    with pytest.raises(ElementNotRemoved):
        db_point(P, 0, R)


def test_f6_chains_give_six_extensions():
    case = gen_sharpness("e35")
    out = dbc(case.poset, case.chains, case.witness)
    assert len(out) == 6
    assert verify_realizer(case.poset, out)


def test_single_chain_adds_two():
    P, _ = gen_fn(4)
    C = ChainSet(({P.index("a:0"), P.index("b:1")},))
    R = _subrealizer(P, C.union())
    assert len(dbi(P, C, R)) == len(R) + 2
