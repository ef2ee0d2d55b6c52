"""Realizer-extension algorithms behind the chain and point removal bounds.

Each function takes a realizer of a subposet and returns a realizer of the
whole poset with the size the corresponding bound promises, asserting the
result before returning it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    ChainSet,
    LinearExtension,
    Poset,
    bits,
    chains_incomparable,
    down_set,
    is_chain,
    linearize,
    poset_from_edges,
    to_mask,
    up_set,
)
from .dimension import Realizer, verify_realizer
from .errors import (
    ChainsNotPairwiseIncomparable,
    CycleDetected,
    ElementNotRemoved,
    InvalidRealizer,
    NotAChain,
    NotAnExtension,
    NotIncomparableChains,
    OrderError,
    SizeMismatch,
)
from .separators import MINIMAL, SeparatorInstance, ls


def _close(P: Poset, edges: Sequence[int]) -> Poset:
    try:
        return poset_from_edges(P.labels, edges)
    except CycleDetected as exc:
        raise AssertionError(f"construction produced a cycle: {exc}") from exc


def _incomparable_mask(P: Poset, x: int) -> int:
    return ((1 << P.n) - 1) & ~(P.up[x] | P.down[x] | 1 << x)


@dataclass(frozen=True)
class AnchoredRequest:
    """Ask for an extension with ``C0`` at the bottom and ``C1`` at the top."""

    P: Poset
    C0: frozenset[int] = frozenset()
    C1: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "C0", frozenset(self.C0))
        object.__setattr__(self, "C1", frozenset(self.C1))
        for C in (self.C0, self.C1):
            if not is_chain(self.P, C):
                raise NotAChain(sorted(self.P.labels[x] for x in C))
        if self.C0 and self.C1 and not chains_incomparable(self.P, self.C0, self.C1):
            raise NotIncomparableChains("anchored chains must be incomparable")


def anchor_linearization(req: AnchoredRequest) -> LinearExtension:
    """Linearize the order plus "C0-element below each incomparable outsider"
    plus "each incomparable outsider below a C1-element"."""
    P = req.P
    m0, m1 = to_mask(req.C0), to_mask(req.C1)
    edges = list(P.up)
    for x in req.C0:
        edges[x] |= _incomparable_mask(P, x) & ~m0
    for y in req.C1:
        for x in bits(_incomparable_mask(P, y) & ~m1):
            edges[x] |= 1 << y
    ext = linearize(_close(P, edges))
    assert anchoring_holds(P, ext, req.C0, req.C1)
    return ext


def anchoring_holds(P: Poset, ext: LinearExtension, C0: Iterable[int], C1: Iterable[int]) -> bool:
    """``c0 < x < c1`` in ``ext`` whenever ``x`` is incomparable to both."""
    rank = ext.rank
    C0, C1 = list(C0), list(C1)
    for x in range(P.n):
        for c0 in C0:
            if P.comparable(x, c0):
                continue
            for c1 in C1:
                if not P.comparable(x, c1) and not rank[c0] < rank[x] < rank[c1]:
                    return False
    return True


def lift_extension(P: Poset, S: Iterable[int], ext: LinearExtension) -> LinearExtension:
    """Extend a linear extension of ``P - S`` to all of ``P``, keeping it intact on ``P - S``."""
    Q, keep = P.without(S)
    if not ext.is_permutation_of(Q.n):
        raise SizeMismatch(f"extension covers {len(ext)} elements, subposet has {Q.n}")
    bad = ext.first_violation(Q)
    if bad is not None:
        raise NotAnExtension(0, (Q.labels[bad[0]], Q.labels[bad[1]]))
    edges = list(P.up)
    order = [keep[q] for q in ext.order]
    for a, b in zip(order, order[1:]):
        edges[a] |= 1 << b
    out = linearize(_close(P, edges))
    assert out.restrict(keep) == ext
    return out


def _as_chains(chains) -> ChainSet:
    return chains if isinstance(chains, ChainSet) else ChainSet(tuple(chains))


def _check_subrealizer(Q: Poset, R: Realizer) -> None:
    try:
        verdict = verify_realizer(Q, R)
    except OrderError as exc:
        raise InvalidRealizer(str(exc)) from exc
    if not verdict:
        raise InvalidRealizer(verdict.describe(Q))


def _lifted(P: Poset, removed, R: Realizer) -> list[LinearExtension]:
    Q, _ = P.without(removed)
    _check_subrealizer(Q, R)
    return [lift_extension(P, removed, e) for e in R.exts]


def dbi(P: Poset, chains, R: Realizer) -> Realizer:
    """Realizer of ``P`` from one of ``P`` minus ``n`` pairwise incomparable chains.

    Adds ``max(2, n)`` anchored extensions: the cyclic pairs
    ``(C[j], C[j+1 mod n])`` for ``n >= 2``, and ``(C0, {})``, ``({}, C0)`` for
    ``n == 1``.
    """
    cs = _as_chains(chains)
    C = list(cs.chains)
    n = len(C)
    if n == 0:
        raise ValueError("dbi needs at least one chain")
    for c in C:
        if not is_chain(P, c):
            raise NotAChain(sorted(P.labels[x] for x in c))
    for i in range(n):
        for j in range(i + 1, n):
            if not chains_incomparable(P, C[i], C[j]):
                raise ChainsNotPairwiseIncomparable(f"chains {i} and {j} are comparable")
    exts = _lifted(P, cs.union(), R)
    if n == 1:
        anchors = [(C[0], frozenset()), (frozenset(), C[0])]
    else:
        anchors = [(C[j], C[(j + 1) % n]) for j in range(n)]
    exts += [anchor_linearization(AnchoredRequest(P, c0, c1)) for c0, c1 in anchors]
    out = Realizer(tuple(exts))
    assert len(out) == len(R) + max(2, n) and verify_realizer(P, out)
    return out


def dbc(P: Poset, chains, R: Realizer) -> Realizer:
    """Realizer of ``P`` from one of ``P`` minus ``n`` arbitrary chains; adds ``2n``."""
    cs = _as_chains(chains)
    for c in cs:
        if not is_chain(P, c):
            raise NotAChain(sorted(P.labels[x] for x in c))
    exts = _lifted(P, cs.union(), R)
    for c in cs:
        exts.append(anchor_linearization(AnchoredRequest(P, c, frozenset())))
        exts.append(anchor_linearization(AnchoredRequest(P, frozenset(), c)))
    out = Realizer(tuple(exts))
    assert len(out) == len(R) + 2 * len(cs) and verify_realizer(P, out)
    return out


def _insert_at_cut(order: Sequence[int], cut: int, x0: int) -> LinearExtension:
    return LinearExtension(tuple(order[:cut]) + (x0,) + tuple(order[cut:]))


def db_point(P: Poset, x0: int, R: Realizer) -> Realizer:
    """Realizer of ``P`` with one more extension than a realizer of ``P - {x0}``.

    Every input extension but the last keeps its order on ``P - {x0}``, with
    ``x0`` placed just above the least separator of its down- and up-sets.
    The last one is split into "x0 just above its down-set" and "x0 just
    below its up-set".
    """
    P.check_index(x0)
    if any(len(e) == P.n for e in R.exts):
        raise ElementNotRemoved(f"{P.labels[x0]} still appears in the given realizer")
    Q, keep = P.without([x0])
    _check_subrealizer(Q, R)
    pos = {old: new for new, old in enumerate(keep)}
    I = frozenset(pos[x] for x in down_set(P, x0))
    F = frozenset(pos[x] for x in up_set(P, x0))
    m = len(R)
    out = []
    for ext in R.exts[: m - 1]:
        B = ls(SeparatorInstance(ext.order, I, F), MINIMAL)
        out.append(_insert_at_cut([keep[q] for q in ext.order], len(B), x0))
    last = R.exts[m - 1].order
    low = [keep[q] for q in last if q in I] + [x0] + [keep[q] for q in last if q not in I]
    high = [keep[q] for q in last if q not in F] + [x0] + [keep[q] for q in last if q in F]
    out += [LinearExtension(tuple(low)), LinearExtension(tuple(high))]
    result = Realizer(tuple(out))
    assert len(result) == m + 1 and verify_realizer(P, result)
    assert all(result[j].restrict(keep) == R[j] for j in range(m - 1))
    return result
