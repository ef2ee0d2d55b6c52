"""Realizers, the pair-reversal realization and exact dimension.

Two independent routes compute dimension: :func:`dimension_exact` assigns
incomparable-pair reversals to slots with an incremental closure per slot,
and :func:`dimension_oracle` enumerates every linear extension and tests
subfamilies.  They share nothing beyond the :class:`Poset` type.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import LinearExtension, Poset, bits, incomparable_pairs, linearize, poset_from_edges
from .errors import BudgetExceeded, NotAnExtension, SizeMismatch, TooLarge

DEFAULT_NODE_BUDGET = 10**7
ORACLE_MAX_N = 8


@dataclass(frozen=True)
class Realizer:
    exts: tuple[LinearExtension, ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "exts",
            tuple(e if isinstance(e, LinearExtension) else LinearExtension(tuple(e)) for e in self.exts),
        )
        if not self.exts:
            raise SizeMismatch("a realizer needs at least one extension")

    def __len__(self):
        return len(self.exts)

    def __iter__(self):
        return iter(self.exts)

    def __getitem__(self, i):
        return self.exts[i]

    @classmethod
    def from_names(cls, P: Poset, orders: Iterable[Sequence[str]]) -> Realizer:
        return cls(tuple(LinearExtension(tuple(P.indices(o))) for o in orders))

    def names(self, P: Poset) -> list[list[str]]:
        return [e.names(P) for e in self.exts]


@dataclass(frozen=True)
class Verdict:
    """Outcome of :func:`verify_realizer`.

    On failure ``pair = (x, y)`` is an incomparable pair that no extension
    reverses: every extension puts ``x`` before ``y``.
    """

    ok: bool
    pair: tuple[int, int] | None = None

    def __bool__(self):
        return self.ok

    def describe(self, P: Poset) -> str:
        if self.ok:
            return "ok"
        x, y = self.pair
        return f"violation: {P.labels[x]} | {P.labels[y]} but no extension puts {P.labels[y]} before {P.labels[x]}"


def check_extensions(P: Poset, R: Realizer) -> None:
    """Raise unless every member of ``R`` is a linear extension of ``P``."""
    for i, ext in enumerate(R.exts):
        if not ext.is_permutation_of(P.n):
            raise SizeMismatch(f"extension {i} is not a permutation of the {P.n} elements")
        bad = ext.first_violation(P)
        if bad is not None:
            raise NotAnExtension(i, (P.labels[bad[0]], P.labels[bad[1]]))


def verify_realizer(P: Poset, R: Realizer) -> Verdict:
    check_extensions(P, R)
    ranks = [e.rank for e in R.exts]
    for x, y in incomparable_pairs(P):
        if not any(r[y] < r[x] for r in ranks):
            return Verdict(False, (x, y))
        if not any(r[x] < r[y] for r in ranks):
            return Verdict(False, (y, x))
    return Verdict(True)


def standard_realization(P: Poset) -> Realizer:
    """One extension per ordered incomparable pair ``(a, b)``, putting ``a`` below ``b``.

    The extension linearizes ``x <= y or (x <= a and b <= y)``.
    """
    pairs = incomparable_pairs(P)
    if not pairs:
        return Realizer((linearize(P),))
    ordered = sorted(pairs + [(b, a) for a, b in pairs])
    exts = []
    for a, b in ordered:
        above_b = P.up[b] | 1 << b
        edges = list(P.up)
        for x in bits(P.down[a] | 1 << a):
            edges[x] |= above_b
        exts.append(linearize(poset_from_edges(P.labels, edges)))
    return Realizer(tuple(exts))


def ordered_incomparable_pairs(P: Poset) -> list[tuple[int, int]]:
    pairs = incomparable_pairs(P)
    return sorted(pairs + [(b, a) for a, b in pairs])


@dataclass(frozen=True)
class DimensionResult:
    dim: int
    witness: Realizer
    # (t, nodes) for every t < dim whose search space was exhausted
    proof_of_lower: tuple[tuple[int, int], ...] = field(default=())
    nodes: int = 0


class _SlotSearch:
    """Assign every needed reversal ``y before x`` to one of ``t`` slots.

    Each slot keeps the transitive closure of the order plus its assigned
    reversals as up/down bitmasks; a reversal fits a slot unless the slot
    already forces ``x`` below ``y``.
    """

    def __init__(self, P: Poset, pairs: list[tuple[int, int]], t: int, budget: int):
        self.P = P
        self.pairs = pairs
        self.t = t
        self.budget = budget
        self.nodes = 0

    def run(self):
        P = self.P
        base_up = tuple(P.up)
        base_down = tuple(P.down)
        slots = [(base_up, base_down)] * self.t
        return self._search(slots, 0, list(range(len(self.pairs))))

    def _search(self, slots, used, open_pairs):
        pairs = self.pairs
        t = self.t
        remaining = []
        best = None
        best_count = t + 1
        for idx in open_pairs:
            x, y = pairs[idx]
            count = 0
            covered = False
            for j in range(used):
                up = slots[j][0]
                if up[y] >> x & 1:
                    covered = True
                    break
                if not up[x] >> y & 1:
                    count += 1
            if covered:
                continue
            remaining.append(idx)
            if used < t:
                count += 1
            if count < best_count:
                best_count = count
                best = idx
                if count == 0:
                    return None
        if best is None:
            return slots[:used]
        x, y = pairs[best]
        options = [j for j in range(used) if not slots[j][0][x] >> y & 1]
        if used < t:
            options.append(used)
        for j in options:
            self.nodes += 1
            if self.nodes > self.budget:
                raise _OutOfBudget
            up, down = slots[j]
            up = list(up)
            down = list(down)
            below = down[y] | 1 << y
            above = up[x] | 1 << x
            for a in bits(below):
                up[a] |= above
            for b in bits(above):
                down[b] |= below
            new_slots = list(slots)
            new_slots[j] = (tuple(up), tuple(down))
            found = self._search(new_slots, max(used, j + 1), remaining)
            if found is not None:
                return found
        return None


class _OutOfBudget(Exception):
    pass


def _upper_cap(P: Poset, n_pairs: int) -> int:
    # at most floor(n/2) from four elements on, and never more than 2 below that
    return max(2, min(n_pairs, P.n // 2))


def dimension_exact(P: Poset, max_t: int | None = None, node_budget: int = DEFAULT_NODE_BUDGET) -> DimensionResult:
    """Least ``t`` such that ``t`` linear extensions realize ``P``.

    Iterative deepening over ``t``; failure at ``t - 1`` is the lower-bound
    certificate.  Raises :class:`BudgetExceeded` rather than guessing.
    """
    pairs = ordered_incomparable_pairs(P)
    if not pairs:
        return DimensionResult(1, Realizer((linearize(P),)))
    limit = max_t if max_t is not None else max(P.n, 2)
    exhausted = [(1, 0)]
    total = 0
    t = 2
    while t <= limit:
        search = _SlotSearch(P, pairs, t, node_budget - total)
        try:
            slots = search.run()
        except _OutOfBudget:
            raise BudgetExceeded(t, _upper_cap(P, len(pairs)), total + search.nodes) from None
        total += search.nodes
        if slots is not None:
            exts = tuple(linearize(_slot_poset(P, up)) for up, _ in slots)
            witness = Realizer(exts)
            assert len(witness) == t and verify_realizer(P, witness)
            return DimensionResult(t, witness, tuple(exhausted), total)
        exhausted.append((t, search.nodes))
        t += 1
    raise BudgetExceeded(limit + 1, _upper_cap(P, len(pairs)), total)


def _slot_poset(P: Poset, up) -> Poset:
    return Poset(P.labels, tuple(up))


def linear_extensions(P: Poset) -> list[tuple[int, ...]]:
    """Every linear extension of ``P``, in lexicographic order."""
    n = P.n
    out: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def rec(placed: int) -> None:
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for x in range(n):
            if not placed >> x & 1 and P.down[x] & ~placed == 0:
                prefix.append(x)
                rec(placed | 1 << x)
                prefix.pop()

    rec(0)
    return out


def dimension_oracle(P: Poset) -> int:
    """Brute-force dimension for ``n <= 8`` by enumerating all extensions."""
    if P.n > ORACLE_MAX_N:
        raise TooLarge(f"oracle handles at most {ORACLE_MAX_N} elements, got {P.n}")
    crit = [(x, y) for x in range(P.n) for y in range(P.n) if x != y and not P.comparable(x, y)]
    if not crit:
        return 1
    masks = []
    for ext in linear_extensions(P):
        pos = {x: r for r, x in enumerate(ext)}
        m = 0
        for k, (x, y) in enumerate(crit):
            if pos[y] < pos[x]:
                m |= 1 << k
        masks.append(m)
    M = np.array(masks, dtype=np.uint64)
    full = (1 << len(crit)) - 1

    def covers(t: int, need: int) -> bool:
        if need == 0:
            return True
        if t == 1:
            nd = np.uint64(need)
            return bool(np.any(M & nd == nd))
        low = np.uint64(need & -need)
        for m in np.unique(M[M & low != 0] & np.uint64(need)):
            if covers(t - 1, need & ~int(m)):
                return True
        return False

    t = 2
    while not covers(t, full):
        t += 1
    return t
