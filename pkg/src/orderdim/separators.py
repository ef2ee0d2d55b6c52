"""Separator sets in finite linear orders and the interval-choice reductions.

A separator for ``(L, I, F)`` is an initial segment of ``L`` containing ``I``
and missing ``F``.  The reductions to and from choice on rational intervals
use exact :class:`fractions.Fraction` arithmetic throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .errors import NotSeparated, PointOutsideInterval

MINIMAL = "minimal"
MAXIMAL = "maximal"


@dataclass(frozen=True)
class SeparatorInstance:
    """A finite linear order (bottom first) with lower set ``I`` and upper set ``F``.

    Construction checks only that ``I`` and ``F`` are drawn from ``order``;
    :meth:`check` enforces ``I`` strictly below ``F``.
    """

    order: tuple[Hashable, ...]
    I: frozenset
    F: frozenset

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "I", frozenset(self.I))
        object.__setattr__(self, "F", frozenset(self.F))
        if len(set(self.order)) != len(self.order):
            raise ValueError("order lists an element twice")
        stray = (self.I | self.F) - set(self.order)
        if stray:
            raise ValueError(f"I/F mention elements outside the order: {sorted(map(str, stray))}")

    @cached_property
    def rank(self) -> dict:
        return {x: r for r, x in enumerate(self.order)}

    @property
    def top_of_I(self) -> int:
        """Rank of the highest element of ``I``, or -1."""
        return max((self.rank[x] for x in self.I), default=-1)

    @property
    def bottom_of_F(self) -> int:
        """Rank of the lowest element of ``F``, or ``len(order)``."""
        return min((self.rank[x] for x in self.F), default=len(self.order))

    def check(self, index: int | None = None) -> None:
        if self.top_of_I >= self.bottom_of_F:
            raise NotSeparated("I is not strictly below F", index)

    def is_separator(self, B: Iterable) -> bool:
        B = set(B)
        if not B <= set(self.order) or not self.I <= B or B & self.F:
            return False
        return B == set(self.order[: len(B)])


def ls(inst: SeparatorInstance, mode: str = MINIMAL) -> frozenset:
    """The least (``minimal``) or greatest (``maximal``) separator."""
    inst.check()
    if mode == MINIMAL:
        return frozenset(inst.order[: inst.top_of_I + 1])
    if mode == MAXIMAL:
        return frozenset(inst.order[: inst.bottom_of_F])
    raise ValueError(f"unknown mode {mode!r}")


def ls_star(insts: Sequence[SeparatorInstance], mode: str = MINIMAL) -> list[frozenset]:
    for j, inst in enumerate(insts):
        inst.check(j)
    return [ls(inst, mode) for inst in insts]


def separator_elements(insts: Sequence[SeparatorInstance]) -> frozenset[int]:
    """Indices ``j`` whose instance has some ``b`` with ``I <= b <= F`` (reflexive)."""
    out = set()
    for j, inst in enumerate(insts):
        lo = max(inst.top_of_I, 0)
        hi = min(inst.bottom_of_F, len(inst.order) - 1)
        if lo <= hi:
            out.add(j)
    return frozenset(out)


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not 0 <= lo <= hi <= 1:
            raise ValueError(f"need 0 <= lo <= hi <= 1, got [{lo}, {hi}]")

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def embed(inst: SeparatorInstance, element, bit: int) -> Fraction:
    """Order embedding of ``L x 2`` (lexicographic) onto a uniform grid in (0, 1)."""
    t = 2 * inst.rank[element] + bit
    return Fraction(t + 1, 2 * len(inst.order) + 1)


def embedded_interval(inst: SeparatorInstance) -> RationalInterval:
    lo = max((embed(inst, a, 1) for a in inst.I), default=Fraction(0))
    hi = min((embed(inst, b, 0) for b in inst.F), default=Fraction(1))
    if lo > hi:
        raise AssertionError(f"empty interval [{lo}, {hi}] for a separated instance")
    return RationalInterval(lo, hi)


def ls_to_point(inst: SeparatorInstance) -> Fraction:
    """Solve the interval-choice instance encoded by ``inst``; midpoint choice."""
    inst.check()
    return embedded_interval(inst).midpoint


def point_to_separator(inst: SeparatorInstance, x) -> frozenset:
    """Read a separator off a point ``x`` of the encoded interval."""
    x = Fraction(x)
    A = embedded_interval(inst)
    if x not in A:
        raise PointOutsideInterval(f"{x} not in [{A.lo}, {A.hi}]")
    B = frozenset(l for l in inst.order if embed(inst, l, 0) < x)
    assert all(embed(inst, l, 1) > x for l in inst.order if l not in B)
    assert inst.is_separator(B)
    return B


def approximating_sequences(A: RationalInterval, depth: int) -> tuple[list[Fraction], list[Fraction]]:
    """Rationals rising strictly to ``A.lo`` and falling strictly to ``A.hi``.

    A side is empty when its endpoint sits on the boundary of [0, 1].
    """
    lows = [] if A.lo == 0 else [A.lo * (1 - Fraction(1, 2 ** (i + 1))) for i in range(depth)]
    highs = [] if A.hi == 1 else [A.hi + (1 - A.hi) * Fraction(1, 2 ** (i + 1)) for i in range(depth)]
    return lows, highs


def xc1_via_ls(A: RationalInterval, depth: int = 8) -> Fraction:
    """Pick a point of ``A`` by separating its lower and upper approximations."""
    lows, highs = approximating_sequences(A, depth)
    inst = SeparatorInstance(tuple(sorted(lows + highs)), frozenset(lows), frozenset(highs))
    B = ls(inst, MINIMAL)
    left = max(B, default=Fraction(0))
    right = min((q for q in inst.order if q not in B), default=Fraction(1))
    x = min(max((left + right) / 2, A.lo), A.hi)
    assert x in A
    return x
