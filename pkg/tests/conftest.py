from __future__ import annotations

import itertools
import random

import pytest

from orderdim.core import Poset, build_poset, is_chain
from orderdim.generators import random_poset

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def relabeled(P: Poset, rng: random.Random) -> Poset:
    """Same order with the elements listed in a shuffled order."""
    perm = list(P.labels)
    rng.shuffle(perm)
    return build_poset(perm, [(P.labels[x], P.labels[y]) for x, y in P.pairs()])


def shuffled_random_poset(n: int, rng: random.Random) -> Poset:
    p = rng.choice([0.15, 0.3, 0.45, 0.6])
    return relabeled(random_poset(n, p, rng), rng)


def random_chain(P: Poset, rng: random.Random, pool=None, max_len=None) -> frozenset[int]:
    pool = list(range(P.n)) if pool is None else list(pool)
    rng.shuffle(pool)
    chain: list[int] = []
    for x in pool:
        if max_len is not None and len(chain) >= max_len:
            break
        if is_chain(P, chain + [x]):
            chain.append(x)
    return frozenset(chain)


def all_posets(n: int):
    """Every labelled strict order on ``n`` elements, by brute force over relations."""
    labels = [f"e{i}" for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for mask in range(1 << len(pairs)):
        rel = {pairs[k] for k in range(len(pairs)) if mask >> k & 1}
        if any((j, i) in rel for i, j in rel):
            continue
        if any((i, l) not in rel for (i, j), (k, l) in itertools.product(rel, rel) if j == k):
            continue
        yield build_poset(labels, [(labels[i], labels[j]) for i, j in rel])


def brute_width(P: Poset) -> int:
    best = 1
    for r in range(2, P.n + 1):
        for S in itertools.combinations(range(P.n), r):
            if all(not P.comparable(x, y) for x, y in itertools.combinations(S, 2)):
                best = r
                break
        else:
            break
    return best


@pytest.fixture
def rng():
    return random.Random(12345)
