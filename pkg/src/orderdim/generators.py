"""Named posets with their companion chains, realizers and expected dimensions.

Naming is fixed so fixtures stay stable: ``a:i``/``b:i`` for the standard
examples, ``x:m``, ``y:m`` for level ``m`` of the leveled posets and
``c:r:j``, ``d:r:j`` (f-witness ``r``), ``p:s:j``, ``q:s:j`` (g-witness ``s``).
"""

from __future__ import annotations

import random

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

from .bounds import dbc, dbi
from .core import ChainSet, Poset, bits, poset_from_edges
from .dimension import Realizer, verify_realizer
from .errors import BadArity, InvalidInjection, InvalidRealizer, OrderError, VariantArityMismatch
from .separators import SeparatorInstance


def random_poset(n: int, p: float, rng: random.Random, prefix: str = "e") -> Poset:
    """Close a random relation that only points from lower to higher index."""
    labels = [f"{prefix}{i}" for i in range(n)]
    up = [sum(1 << v for v in range(u + 1, n) if rng.random() < p) for u in range(n)]
    return poset_from_edges(labels, up)


def random_injection(N: int, rng: random.Random) -> InjectionPair:
    """Random disjoint partial injections into ``[0, N)``."""
    values = list(range(N))
    rng.shuffle(values)
    a = rng.randint(0, N)
    b = rng.randint(a, N)
    return InjectionPair(tuple(values[:a]), tuple(values[a:b]), N)


def _a(i):
    return f"a:{i}"


def _b(i):
    return f"b:{i}"


def fn_labels(n: int) -> list[str]:
    return [_a(i) for i in range(n)] + [_b(i) for i in range(n)]


def _checked_poset(labels: Sequence[str], less: Callable[[int, int], bool]) -> Poset:
    n = len(labels)
    up = [sum(1 << v for v in range(n) if u != v and less(u, v)) for u in range(n)]
    P = poset_from_edges(labels, up)
    if list(P.up) != up:
        raise AssertionError("generated relation is not transitive")
    return P


def fn_extension_names(n: int, i: int) -> list[str]:
    """The i-th extension of the canonical n-realizer of F_n."""
    low = [_a(j) for j in range(n) if j != i]
    high = [_b(j) for j in reversed(range(n)) if j != i]
    return low + [_b(i), _a(i)] + high


def gen_fn(n: int) -> tuple[Poset, Realizer]:
    if n < 2:
        raise BadArity(f"F_n needs n >= 2, got {n}")
    labels = fn_labels(n)
    P = _checked_poset(labels, lambda u, v: u < n <= v and v - n != u)
    R = Realizer.from_names(P, [fn_extension_names(n, i) for i in range(n)])
    assert verify_realizer(P, R)
    return P, R


@dataclass(frozen=True)
class InjectionPair:
    """Finite partial injections ``f``, ``g`` (``f[r]`` is the value at ``r``) below ``N``."""

    f: tuple[int, ...]
    g: tuple[int, ...]
    N: int

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        object.__setattr__(self, "g", tuple(self.g))
        values = self.f + self.g
        if len(set(self.f)) != len(self.f) or len(set(self.g)) != len(self.g):
            raise InvalidInjection("f and g must be injective")
        if set(self.f) & set(self.g):
            raise InvalidInjection("f and g must have disjoint ranges")
        if any(not 0 <= v < self.N for v in values):
            raise InvalidInjection(f"values must lie in [0, {self.N})")

    @property
    def f_inverse(self) -> dict[int, int]:
        return {v: r for r, v in enumerate(self.f)}

    @property
    def g_inverse(self) -> dict[int, int]:
        return {v: s for s, v in enumerate(self.g)}


class El(NamedTuple):
    kind: str  # one of x y c d p q
    level: int
    witness: int | None = None
    col: int | None = None

    @property
    def label(self) -> str:
        if self.kind in "xy":
            return f"{self.kind}:{self.level}"
        return f"{self.kind}:{self.witness}:{self.col}"


@dataclass(frozen=True)
class LeveledPoset:
    poset: Poset
    level: tuple[int, ...]
    # level -> ("antichain",) | ("f", r) | ("g", s)
    meta: dict = field(hash=False, compare=False)
    elements: tuple[El, ...] = field(repr=False, hash=False, compare=False, default=())

    @property
    def levels(self) -> list[int]:
        return sorted(set(self.level))

    def x(self, m: int) -> int:
        return self.poset.index(f"x:{m}")

    def y(self, m: int) -> int:
        return self.poset.index(f"y:{m}")

    def level_members(self, m: int) -> list[int]:
        return [i for i, l in enumerate(self.level) if l == m]


def _elements(width: int, inj: InjectionPair) -> tuple[list[El], dict]:
    finv, ginv = inj.f_inverse, inj.g_inverse
    els: list[El] = []
    meta = {}
    for m in range(inj.N):
        els += [El("x", m), El("y", m)]
        if m in finv:
            r = finv[m]
            meta[m] = ("f", r)
            els += [El("c", m, r, j) for j in range(width)]
            els += [El("d", m, r, j) for j in range(width)]
        elif m in ginv:
            s = ginv[m]
            meta[m] = ("g", s)
            els += [El("p", m, s, j) for j in range(width)]
            els += [El("q", m, s, j) for j in range(width)]
        else:
            meta[m] = ("antichain",)
    return els, meta


def _pk_less(u: El, v: El) -> bool:
    if u.level != v.level:
        return u.level < v.level
    pair = u.kind + v.kind
    if pair in ("xd", "cy", "px", "yq"):
        return True
    if pair in ("cd", "pq"):
        return u.col != v.col
    return False


def _variant_less(u: El, v: El) -> bool:
    # levels are copies of F_{n+1} but d/q columns only climb within their column
    if u.kind in "dq":
        return v.kind in "dq" and v.col == u.col and v.level > u.level
    if v.kind in "dq":
        if u.level != v.level:
            return u.level < v.level
        if v.kind == "d":
            return u.kind == "x" or (u.kind == "c" and u.col != v.col)
        return u.kind == "y" or (u.kind == "p" and u.col != v.col)
    if u.level != v.level:
        return u.level < v.level
    return u.kind + v.kind in ("cy", "px")


def _leveled(els: list[El], meta: dict, less) -> LeveledPoset:
    P = _checked_poset([e.label for e in els], lambda i, j: less(els[i], els[j]))
    return LeveledPoset(P, tuple(e.level for e in els), meta, tuple(els))


def gen_pk(k: int, inj: InjectionPair) -> LeveledPoset:
    """Levels ``0..N-1``; an f-value level is a copy of F_k, a g-value level its mirror."""
    if k < 3:
        raise BadArity(f"P^k needs k >= 3, got {k}")
    els, meta = _elements(k - 1, inj)
    return _leveled(els, meta, _pk_less)


def _level_orders(lp: LeveledPoset, pattern) -> list[list[str]]:
    """Concatenate, level by level, the label sequences produced by ``pattern``."""
    out: list[list[str]] = [[], []]
    for m in lp.levels:
        tag = lp.meta[m]
        for i in (0, 1):
            out[i] += pattern(i, m, tag)
    return out


def _thm46_pattern(i, m, tag):
    x, y = f"x:{m}", f"y:{m}"
    if tag[0] == "antichain":
        return [x, y] if i == 0 else [y, x]
    w = tag[1]
    if tag[0] == "f":
        c = lambda j: f"c:{w}:{j}"
        d = lambda j: f"d:{w}:{j}"
        if i == 0:
            return [x, c(2), d(0), c(0), d(1), y]
        return [c(0), c(2), y, x, d(1), d(0)]
    p = lambda j: f"p:{w}:{j}"
    q = lambda j: f"q:{w}:{j}"
    if i == 0:
        return [p(0), p(2), x, y, q(1), q(0)]
    return [y, p(2), q(0), p(0), q(1), x]


def _thm48_pattern(n):
    odd = list(range(1, 2 * n, 2))  # surviving c/p columns besides 0
    even = list(range(2, 2 * n + 1, 2))  # surviving d/q columns besides 0

    def pattern(i, m, tag):
        x, y = f"x:{m}", f"y:{m}"
        if tag[0] == "antichain":
            return [x, y] if i == 0 else [y, x]
        w = tag[1]
        if tag[0] == "f":
            c = lambda j: f"c:{w}:{j}"
            d = lambda j: f"d:{w}:{j}"
            if i == 0:
                return [x] + [c(j) for j in reversed(odd)] + [d(0), c(0)] + [d(j) for j in even] + [y]
            return [c(0)] + [c(j) for j in odd] + [y, x] + [d(j) for j in reversed(even)] + [d(0)]
        p = lambda j: f"p:{w}:{j}"
        q = lambda j: f"q:{w}:{j}"
        if i == 0:
            return [p(0)] + [p(j) for j in odd] + [x, y] + [q(j) for j in reversed(even)] + [q(0)]
        # mirror of the f-level order above with x and y swapped at the ends
        return [y] + [p(j) for j in reversed(odd)] + [q(0), p(0)] + [q(j) for j in even] + [x]

    return pattern


def _thm49_pattern(n):
    def pattern(i, m, tag):
        x, y = f"x:{m}", f"y:{m}"
        if tag[0] == "antichain":
            return [x, y] if i == 0 else [y, x]
        w = tag[1]
        if tag[0] == "f":
            cs = [f"c:{w}:{j}" for j in range(n)]
            return [x] + cs + [y] if i == 0 else cs[::-1] + [y, x]
        ps = [f"p:{w}:{j}" for j in range(n)]
        return ps + [x, y] if i == 0 else [y] + ps[::-1] + [x]

    return pattern


THM46 = "thm46"
THM48 = "thm48"
THM49 = "thm49"
VARIANTS = (THM46, THM48, THM49)


def gen_pk_chain_variant(variant: str, inj: InjectionPair, n: int | None = None):
    """Leveled poset, removal chains, and a 2-realizer of the poset minus the chains.

    ``thm46`` uses k = 4 and one chain through columns c1, d2, p1, q2;
    ``thm48`` uses k = 2n + 2 and chains C_i through columns c2i, d(2i-1),
    p2i, q(2i-1); ``thm49`` uses the column-restricted order with the n
    chains of d/q columns.
    """
    if variant == THM46:
        if n not in (None, 1):
            raise VariantArityMismatch("thm46 takes no arity")
        lp = gen_pk(4, inj)
        names = [f"c:{r}:1" for r in range(len(inj.f))] + [f"d:{r}:2" for r in range(len(inj.f))]
        names += [f"p:{s}:1" for s in range(len(inj.g))] + [f"q:{s}:2" for s in range(len(inj.g))]
        chain_names = [names]
        pattern = _thm46_pattern
    elif variant == THM48:
        if n is None or n < 1:
            raise VariantArityMismatch("thm48 needs n >= 1")
        lp = gen_pk(2 * n + 2, inj)
        chain_names = []
        for i in range(1, n + 1):
            names = [f"c:{r}:{2 * i}" for r in range(len(inj.f))] + [f"d:{r}:{2 * i - 1}" for r in range(len(inj.f))]
            names += [f"p:{s}:{2 * i}" for s in range(len(inj.g))] + [f"q:{s}:{2 * i - 1}" for s in range(len(inj.g))]
            chain_names.append(names)
        pattern = _thm48_pattern(n)
    elif variant == THM49:
        if n is None or n < 3:
            raise VariantArityMismatch("thm49 needs n >= 3")
        els, meta = _elements(n, inj)
        lp = _leveled(els, meta, _variant_less)
        chain_names = [
            [f"d:{r}:{j}" for r in range(len(inj.f))] + [f"q:{s}:{j}" for s in range(len(inj.g))] for j in range(n)
        ]
        pattern = _thm49_pattern(n)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    P = lp.poset
    chains = ChainSet(tuple(frozenset(P.indices(c)) for c in chain_names))
    Q, _ = P.without(chains.union())
    R = Realizer.from_names(Q, _level_orders(lp, pattern))
    verdict = verify_realizer(Q, R)
    if not verdict:
        raise AssertionError(f"{variant} 2-realizer fails: {verdict.describe(Q)}")
    return lp, chains, R


def extract_separator(lp: LeveledPoset, R: Realizer, low_threshold: int) -> frozenset[int]:
    """Levels ``m`` where at most ``low_threshold`` extensions put ``y:m`` below ``x:m``."""
    try:
        verdict = verify_realizer(lp.poset, R)
    except OrderError as exc:
        raise InvalidRealizer(str(exc)) from exc
    if not verdict:
        raise InvalidRealizer(verdict.describe(lp.poset))
    A = set()
    for m in lp.levels:
        x, y = lp.x(m), lp.y(m)
        count = sum(1 for e in R.exts if e.rank[y] < e.rank[x])
        if count <= low_threshold:
            A.add(m)
    return frozenset(A)


DBI3 = "dbi3"
PIPELINES = (THM46, DBI3, THM48, THM49)


@dataclass(frozen=True)
class PipelineResult:
    leveled: LeveledPoset
    chains: ChainSet
    subrealizer: Realizer
    realizer: Realizer
    threshold: int
    separator: frozenset[int]


def separation_pipeline(variant: str, inj: InjectionPair, n: int | None = None) -> PipelineResult:
    """Build the variant poset, extend its 2-realizer with the matching bound, read off A.

    ``thm46`` adds one chain with the single-chain bound (4 extensions),
    ``dbi3`` pads that chain with two empty ones (5 extensions), ``thm48``
    uses the arbitrary-chain bound (2n + 2) and ``thm49`` the
    incomparable-chain bound (n + 2).
    """
    if variant == DBI3:
        lp, chains, R = gen_pk_chain_variant(THM46, inj)
        chains = ChainSet(chains.chains + (frozenset(), frozenset()))
        full, threshold = dbi(lp.poset, chains, R), 2
    elif variant == THM46:
        lp, chains, R = gen_pk_chain_variant(THM46, inj)
        full, threshold = dbi(lp.poset, chains, R), 1
    elif variant == THM48:
        lp, chains, R = gen_pk_chain_variant(THM48, inj, n)
        full, threshold = dbc(lp.poset, chains, R), 1
    elif variant == THM49:
        lp, chains, R = gen_pk_chain_variant(THM49, inj, n)
        full, threshold = dbi(lp.poset, chains, R), 2
    else:
        raise ValueError(f"unknown pipeline {variant!r}")
    A = extract_separator(lp, full, threshold)
    return PipelineResult(lp, chains, R, full, threshold, A)


@dataclass(frozen=True)
class SharpnessCase:
    poset: Poset
    chains: ChainSet
    dim_before: int
    dim_after: int
    # realizer of poset minus the chains, of size dim_after
    witness: Realizer


SHARPNESS = ("e31", "e32", "e33", "e34", "e35")


def gen_sharpness(example: str, n: int | None = None) -> SharpnessCase:
    if example == "e31":
        if n is None or n < 2:
            raise BadArity("e31 needs n >= 2")
        size, chain_names = n + 2, [[_a(n), _b(n + 1)]]
        # the first n extensions of F_{n+1}'s realizer, with its a_n renamed a_{n+1}
        rename = {_a(n): _a(n + 1)}
        orders = [[rename.get(v, v) for v in fn_extension_names(n + 1, i)] for i in range(n)]
        after = n
    elif example == "e32":
        if n is None or n < 2:
            raise BadArity("e32 needs n >= 2")
        size, chain_names = n + 2, [[_a(n + 1), _b(n)], [_a(n), _b(n + 1)]]
        orders = [fn_extension_names(n, i) for i in range(n)]
        after = n
    elif example == "e33":
        if n is None or n < 3:
            raise BadArity("e33 needs n >= 3")
        size, chain_names = n + 2, [[_b(i)] for i in range(n)]
        low = [_a(i) for i in range(n)]
        orders = [
            [_a(n + 1)] + low + [_b(n), _a(n), _b(n + 1)],
            [_a(n)] + low[::-1] + [_b(n + 1), _a(n + 1), _b(n)],
        ]
        after = 2
    elif example in ("e34", "e35"):
        if n is not None:
            raise BadArity(f"{example} takes no arity")
        size = 5 if example == "e34" else 6
        chain_names = [[_a(0), _b(1)], [_a(2), _b(3)]]
        if example == "e34":
            orders = [
                [_a(1), _a(3), _b(4), _a(4), _b(0), _b(2)],
                [_a(4), _a(3), _a(1), _b(2), _b(0), _b(4)],
            ]
        else:
            orders = [
                [_a(5), _a(3), _a(1), _b(4), _a(4), _b(0), _b(2), _b(5)],
                [_a(4), _a(1), _a(3), _b(5), _a(5), _b(2), _b(0), _b(4)],
            ]
        after = 2
    else:
        raise ValueError(f"unknown sharpness example {example!r}")
    P, _ = gen_fn(size)
    chains = ChainSet(tuple(frozenset(P.indices(c)) for c in chain_names))
    Q, _ = P.without(chains.union())
    R = Realizer.from_names(Q, orders)
    verdict = verify_realizer(Q, R)
    if not verdict:
        raise AssertionError(f"{example} witness fails: {verdict.describe(Q)}")
    return SharpnessCase(P, chains, size, after, R)


Z0 = "z0"


def _code_label(k: int) -> str:
    return f"v{k}"


@dataclass(frozen=True)
class DbpReversal:
    """A poset with a marked point whose extension problem encodes separator instances."""

    poset: Poset
    z0: int
    realizer: Realizer  # of poset minus z0, one order per instance plus the auxiliary one
    codes: tuple[dict, ...] = field(hash=False, compare=False)  # per instance: element -> label

    def recover(self, full: Realizer) -> list[frozenset]:
        """Separators for the original instances: what lies below ``z0`` in each output order."""
        out = []
        for j, code in enumerate(self.codes):
            ext = full.exts[j]
            below = {self.poset.labels[v] for v in ext.order[: ext.rank[self.z0]]}
            out.append(frozenset(e for e, lab in code.items() if lab in below))
        return out


def gen_dbp_reversal(insts: Sequence[SeparatorInstance]) -> DbpReversal:
    """Intersect the (padded, identified) instance orders plus an auxiliary order,
    then add ``z0`` between the common lower and upper sets."""
    for j, inst in enumerate(insts):
        inst.check(j)
    pad = max([3] + [len(inst.order) for inst in insts])
    classes = []
    for inst in insts:
        I = [e for e in inst.order if e in inst.I]
        F = [e for e in inst.order if e in inst.F]
        O = [e for e in inst.order if e not in inst.I and e not in inst.F]
        classes.append((I, F, O))
    cI = max([len(c[0]) for c in classes], default=0) + pad
    cF = max([len(c[1]) for c in classes], default=0) + pad
    cO = max([len(c[2]) for c in classes], default=0) + pad

    orders: list[list[int]] = []
    codes: list[dict] = []
    for j, (inst, (I, F, O)) in enumerate(zip(insts, classes)):
        fresh = lambda kind, t: ("pad", j, kind, t)
        below = [fresh("I", t) for t in range(cI - len(I))]
        extra_F = [fresh("F", t) for t in range(cF - len(F))]
        extra_O = [fresh("O", t) for t in range(cO - len(O))]
        above = []
        while extra_F or extra_O:
            if extra_O:
                above.append(extra_O.pop(0))
            if extra_F:
                above.append(extra_F.pop(0))
        padded = below + list(inst.order) + above
        pad_F = {e for e in above if e[2] == "F"}
        # I gets multiples of 3, F gets 1 mod 3, the rest 2 mod 3, in order of appearance
        offset = {"I": 0, "F": 2, "O": 1}
        seen = {"I": 0, "F": 0, "O": 0}
        code = {}
        for e in padded:
            cls = "I" if e in inst.I or e in below else "F" if e in inst.F or e in pad_F else "O"
            seen[cls] += 1
            code[e] = 3 * seen[cls] - offset[cls]
        orders.append([code[e] for e in padded])
        codes.append({e: _code_label(code[e]) for e in inst.order})
    I_codes = [3 * t for t in range(1, cI + 1)]
    F_codes = [3 * t - 2 for t in range(1, cF + 1)]
    O_codes = [3 * t - 1 for t in range(1, cO + 1)]
    orders.append(I_codes + O_codes + F_codes)

    support = sorted(I_codes + F_codes + O_codes)
    labels = [Z0] + [_code_label(k) for k in support]
    idx = {k: i + 1 for i, k in enumerate(support)}
    n = len(labels)
    ranks = [{idx[k]: r for r, k in enumerate(o)} for o in orders]
    up = [0] * n
    for u in range(1, n):
        for v in range(1, n):
            if u != v and all(r[u] < r[v] for r in ranks):
                up[u] |= 1 << v
    for k in I_codes:
        up[idx[k]] |= 1 << 0
    up[0] = sum(1 << idx[k] for k in F_codes)
    P = poset_from_edges(labels, up)
    if list(P.up) != up:
        raise AssertionError("identification did not produce a transitive order")
    Q, _ = P.without([0])
    R = Realizer.from_names(Q, [[_code_label(k) for k in o] for o in orders])
    assert verify_realizer(Q, R)
    return DbpReversal(P, 0, R, tuple(codes))

