"""Finite posets, chains, closures and deterministic linearization.

Elements are labelled externally by strings and internally by dense indices
``0..n-1`` in label order.  Relations are stored as bitmasks: bit ``y`` of
``up[x]`` is set iff ``x < y`` (strict).
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    CycleDetected,
    DuplicateLabel,
    InconsistentStream,
    IndexOutOfRange,
    NotAChain,
    UnknownLabel,
)


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def to_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _closure(n: int, edges: Sequence[int]) -> list[int]:
    reach = list(edges)
    for k in range(n):
        bit = 1 << k
        rk = reach[k]
        for i in range(n):
            if reach[i] & bit:
                reach[i] |= rk
    return reach


def _find_cycle(n: int, edges: Sequence[int], start: int) -> list[int]:
    # BFS back to ``start`` over the direct edges.
    parent = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in bits(edges[u]):
            if v == start:
                path = [u]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                path.reverse()
                return path + [start]
            if v not in parent:
                parent[v] = u
                queue.append(v)
    raise AssertionError("no cycle through start")


@dataclass(frozen=True)
class Poset:
    """A finite strict partial order.

    Build instances with :func:`build_poset` or :func:`extend_acyclic`; the
    raw constructor trusts ``up`` to be transitively closed and irreflexive.
    """

    labels: tuple[str, ...]
    up: tuple[int, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def down(self) -> tuple[int, ...]:
        down = [0] * self.n
        for x, m in enumerate(self.up):
            for y in bits(m):
                down[y] |= 1 << x
        return tuple(down)

    @cached_property
    def lt(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(bool(self.up[x] >> y & 1) for y in range(self.n)) for x in range(self.n))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(label) from None

    def indices(self, labels: Iterable[str]) -> list[int]:
        return [self.index(a) for a in labels]

    def less(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def comparable(self, x: int, y: int) -> bool:
        return x == y or bool((self.up[x] | self.down[x]) >> y & 1)

    def pairs(self) -> list[tuple[int, int]]:
        """All strict pairs ``(x, y)`` with ``x < y``, lexicographic."""
        return [(x, y) for x in range(self.n) for y in bits(self.up[x])]

    def cover_pairs(self) -> list[tuple[int, int]]:
        out = []
        for x in range(self.n):
            above = self.up[x]
            for y in bits(above):
                if not (above & self.down[y]):
                    out.append((x, y))
        return out

    def check_index(self, *xs: int) -> None:
        for x in xs:
            if not (isinstance(x, int) and 0 <= x < self.n):
                raise IndexOutOfRange(f"element index {x!r} outside 0..{self.n - 1}")

    def induced(self, keep: Iterable[int]) -> Poset:
        """Subposet on ``keep``; new indices follow ascending old indices."""
        keep = sorted(set(keep))
        self.check_index(*keep)
        pos = {old: new for new, old in enumerate(keep)}
        mask = to_mask(keep)
        up = tuple(to_mask(pos[y] for y in bits(self.up[x] & mask)) for x in keep)
        return Poset(tuple(self.labels[x] for x in keep), up)

    def without(self, removed: Iterable[int]) -> tuple[Poset, list[int]]:
        """Subposet with ``removed`` deleted, plus the kept old indices."""
        removed = set(removed)
        self.check_index(*removed)
        keep = [x for x in range(self.n) if x not in removed]
        return self.induced(keep), keep


@dataclass(frozen=True)
class LinearExtension:
    """A total order as a permutation of element indices, bottom first."""

    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))

    def __len__(self):
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    @cached_property
    def rank(self) -> dict[int, int]:
        return {x: r for r, x in enumerate(self.order)}

    def before(self, x: int, y: int) -> bool:
        return self.rank[x] < self.rank[y]

    def is_permutation_of(self, n: int) -> bool:
        return len(self.order) == n and sorted(self.order) == list(range(n))

    def first_violation(self, P: Poset) -> tuple[int, int] | None:
        """First order pair ``x < y`` that this order puts the other way round."""
        rank = self.rank
        for x, y in P.pairs():
            if rank[x] > rank[y]:
                return (x, y)
        return None

    def extends(self, P: Poset) -> bool:
        return self.is_permutation_of(P.n) and self.first_violation(P) is None

    def names(self, P: Poset) -> list[str]:
        return [P.labels[x] for x in self.order]

    def restrict(self, keep: Sequence[int]) -> LinearExtension:
        """Order induced on ``keep`` (old indices), renumbered as :meth:`Poset.induced`."""
        pos = {old: new for new, old in enumerate(sorted(keep))}
        return LinearExtension(tuple(pos[x] for x in self.order if x in pos))


@dataclass(frozen=True)
class ChainSet:
    chains: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "chains", tuple(frozenset(c) for c in self.chains))

    def __len__(self):
        return len(self.chains)

    def __iter__(self):
        return iter(self.chains)

    def union(self) -> frozenset[int]:
        return frozenset().union(*self.chains)


def _labels_index(labels: Sequence[str]) -> dict[str, int]:
    index: dict[str, int] = {}
    for i, name in enumerate(labels):
        if name in index:
            raise DuplicateLabel(name)
        index[name] = i
    return index


def poset_from_edges(labels: Sequence[str], edges: Sequence[int]) -> Poset:
    """Close an index relation given as successor bitmasks into a Poset."""
    labels = tuple(labels)
    _labels_index(labels)
    n = len(labels)
    if len(edges) != n:
        raise ValueError(f"{len(edges)} edge masks for {n} labels")
    reach = _closure(n, edges)
    for x in range(n):
        if reach[x] >> x & 1:
            cycle = _find_cycle(n, edges, x)
            raise CycleDetected([labels[i] for i in cycle])
    return Poset(labels, tuple(reach))


def build_poset(labels: Sequence[str], pairs: Iterable[tuple[str, str]]) -> Poset:
    """Poset on ``labels`` whose order is the transitive closure of ``pairs``."""
    labels = tuple(labels)
    index = _labels_index(labels)
    edges = [0] * len(labels)
    for a, b in pairs:
        if a not in index:
            raise UnknownLabel(a)
        if b not in index:
            raise UnknownLabel(b)
        edges[index[a]] |= 1 << index[b]
    return poset_from_edges(labels, edges)


def extend_acyclic(labels: Sequence[str], pairs: Iterable[tuple[str, str]]) -> Poset:
    """Extend an acyclic relation to the least partial order containing it.

    Raises :class:`CycleDetected` carrying a witness cycle otherwise.
    """
    return build_poset(labels, pairs)


def incomparable_pairs(P: Poset) -> list[tuple[int, int]]:
    out = []
    for x in range(P.n):
        near = P.up[x] | P.down[x]
        for y in range(x + 1, P.n):
            if not near >> y & 1:
                out.append((x, y))
    return out


def is_chain(P: Poset, S: Iterable[int]) -> bool:
    S = sorted(set(S))
    P.check_index(*S)
    for i, x in enumerate(S):
        for y in S[i + 1:]:
            if not P.comparable(x, y):
                return False
    return True


def chains_incomparable(P: Poset, C0: Iterable[int], C1: Iterable[int]) -> bool:
    C0, C1 = set(C0), set(C1)
    for C in (C0, C1):
        if not is_chain(P, C):
            raise NotAChain(sorted(P.labels[x] for x in C))
    return all(not P.comparable(x, y) for x in C0 for y in C1)


def down_set(P: Poset, x: int) -> frozenset[int]:
    P.check_index(x)
    return frozenset(bits(P.down[x]))


def up_set(P: Poset, x: int) -> frozenset[int]:
    P.check_index(x)
    return frozenset(bits(P.up[x]))


def linearize(P: Poset) -> LinearExtension:
    """Emit the smallest-index minimal element until none remain."""
    indeg = [bin(m).count("1") for m in P.down]
    heap = [x for x in range(P.n) if indeg[x] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        x = heapq.heappop(heap)
        order.append(x)
        for y in bits(P.up[x]):
            indeg[y] -= 1
            if indeg[y] == 0:
                heapq.heappush(heap, y)
    return LinearExtension(tuple(order))


class OnlineLinearizer:
    """Place elements one at a time, each seeing only its earlier predecessors.

    A new element is inserted directly above the current greatest of its
    strict predecessors, or at the bottom when it has none.  Elements never
    move relative to each other once placed.
    """

    def __init__(self):
        self.names: list[str] = []
        self.order: list[int] = []
        self._index: dict[str, int] = {}
        self._down: list[int] = []

    def add(self, name: str, preds: Iterable[str] = ()) -> int:
        if name in self._index:
            raise InconsistentStream(f"element {name!r} presented twice")
        pmask = 0
        for p in preds:
            if p not in self._index:
                raise InconsistentStream(f"{name!r} lists unseen predecessor {p!r}")
            pmask |= 1 << self._index[p]
        for p in bits(pmask):
            if self._down[p] & ~pmask:
                raise InconsistentStream(f"predecessors of {name!r} are not downward closed")
        i = len(self.names)
        self.names.append(name)
        self._index[name] = i
        self._down.append(pmask)
        if pmask:
            pos = max(r for r, y in enumerate(self.order) if pmask >> y & 1) + 1
        else:
            pos = 0
        self.order.insert(pos, i)
        return i

    def extension(self) -> LinearExtension:
        return LinearExtension(tuple(self.order))


def online_linearize(stream: Iterable[tuple[str, Iterable[str]]]) -> LinearExtension:
    """Linearize a poset presented as ``(element, strict predecessors)`` pairs.

    Indices in the result are stream positions.
    """
    lin = OnlineLinearizer()
    for name, preds in stream:
        lin.add(name, preds)
    return lin.extension()


def presentation(P: Poset, listing: Sequence[int]) -> list[tuple[str, list[str]]]:
    """Stream presenting ``P`` in the element order ``listing``."""
    seen = 0
    out = []
    for x in listing:
        out.append((P.labels[x], [P.labels[y] for y in bits(P.down[x] & seen)]))
        seen |= 1 << x
    return out
