"""Finite-stage simulator of the priority construction that defeats candidate separators.

Each order ``j < k`` starts as the single marker element ``0``.  At stage
``s`` the least unsatisfied program ``e < s`` assigned to ``j`` whose
computation on the current marker has converged acts: an answer ``0`` puts
two fresh elements ``z < w`` directly above the marker with ``z`` in ``I``,
an answer ``1`` puts ``w < z`` directly below it with ``z`` in ``F``, and
``w`` becomes the new marker.  Without an acting program the order grows by
a new bottom element (into ``I``) and a new top element (into ``F``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .errors import MismatchedInputs, NonMonotoneProgram
from .separators import SeparatorInstance

GROW = "grow"
ACT0 = "act0"
ACT1 = "act1"
UNRESOLVED = "unresolved"
SURVIVED = "survived"

Evaluator = Callable[[int, int, int], "int | None"]


class CandidateProgram:
    """A 0/1 program queried as ``value(x, j, s)``; ``None`` means not converged after ``s`` steps.

    The wrapper enforces monotone convergence: once ``(x, j)`` has converged
    at some step, every later answer must agree.
    """

    def __init__(self, id: int, evaluator: Evaluator, description: str = ""):
        if not isinstance(id, int) or id < 0:
            raise ValueError(f"program id must be a non-negative int, got {id!r}")
        self.id = id
        self.evaluator = evaluator
        self.description = description
        self._seen: dict[tuple[int, int], tuple[int, int]] = {}

    def __repr__(self):
        return f"CandidateProgram({self.id}, {self.description or self.evaluator!r})"

    def value(self, x: int, j: int, s: int) -> int | None:
        out = self.evaluator(x, j, s)
        if out not in (None, 0, 1):
            raise NonMonotoneProgram(f"program {self.id} answered {out!r} on ({x}, {j}, {s})")
        known = self._seen.get((x, j))
        if known is not None:
            s0, v = known
            if s >= s0 and out != v:
                raise NonMonotoneProgram(f"program {self.id} changed its answer on ({x}, {j}) after step {s0}")
            if s < s0 and out is not None and out != v:
                raise NonMonotoneProgram(f"program {self.id} changed its answer on ({x}, {j}) before step {s0}")
        if out is not None and (known is None or s < known[0]):
            self._seen[(x, j)] = (s, out)
        return out


def const_program(id: int, bit: int) -> CandidateProgram:
    return CandidateProgram(id, lambda x, j, s: bit, f"const{bit}")


def delayed_program(inner: CandidateProgram, delay: int) -> CandidateProgram:
    """Same answers as ``inner``, but nothing converges before step ``delay``."""

    def ev(x, j, s):
        return None if s < delay else inner.evaluator(x, j, s)

    return CandidateProgram(inner.id, ev, f"delayed({inner.description}, {delay})")


def set_program(id: int, members: Mapping[int, frozenset]) -> CandidateProgram:
    """Characteristic function of a fixed set per order."""

    def ev(x, j, s):
        return 1 if x in members.get(j, frozenset()) else 0

    return CandidateProgram(id, ev, "set")


@dataclass(frozen=True)
class Snapshot:
    """State at the beginning of a stage."""

    stage: int
    orders: tuple[tuple[int, ...], ...]
    I: tuple[frozenset, ...]
    F: tuple[frozenset, ...]
    markers: tuple[int, ...]
    delta: tuple[tuple[int, int], ...]  # (program id, flag)


@dataclass(frozen=True)
class Action:
    stage: int
    j: int
    action: str
    e: int | None
    z: int
    w: int

    def line(self) -> str:
        e = "-" if self.e is None else str(self.e)
        return f"stage={self.stage} j={self.j} action={self.action} e={e} z={self.z} w={self.w}"


@dataclass
class DiagonalTranscript:
    k: int
    assignment: dict[int, int]
    stages: int
    snapshots: list[Snapshot] = field(default_factory=list)
    actions: list[Action] = field(default_factory=list)

    def log_lines(self) -> list[str]:
        return [a.line() for a in self.actions]

    def log(self) -> str:
        return "".join(line + "\n" for line in self.log_lines())

    def acted(self) -> dict[int, Action]:
        return {a.e: a for a in self.actions if a.e is not None}


def _check_inputs(k: int, assignment: Mapping[int, int], programs: Sequence[CandidateProgram]) -> None:
    if k < 1:
        raise MismatchedInputs(f"need k >= 1, got {k}")
    ids = [p.id for p in programs]
    if len(set(ids)) != len(ids):
        raise MismatchedInputs("program ids repeat")
    for e in ids:
        if e not in assignment:
            raise MismatchedInputs(f"program {e} has no assigned order")
        if not 0 <= assignment[e] < k:
            raise MismatchedInputs(f"program {e} assigned to order {assignment[e]}, outside 0..{k - 1}")


def run_diagonalization(
    k: int, assignment: Mapping[int, int], programs: Sequence[CandidateProgram], stages: int
) -> tuple[list[SeparatorInstance], DiagonalTranscript]:
    assignment = {int(e): int(j) for e, j in assignment.items()}
    _check_inputs(k, assignment, programs)
    by_id = {p.id: p for p in programs}
    fiber = {j: sorted(e for e in by_id if assignment[e] == j) for j in range(k)}
    orders = [[0] for _ in range(k)]
    I = [set() for _ in range(k)]
    F = [set() for _ in range(k)]
    markers = [0] * k
    fresh = [1] * k  # least element of M not yet in L_j
    delta = {e: 0 for e in by_id}
    tr = DiagonalTranscript(k, dict(assignment), stages)

    def snapshot(s):
        tr.snapshots.append(
            Snapshot(
                s,
                tuple(tuple(o) for o in orders),
                tuple(frozenset(x) for x in I),
                tuple(frozenset(x) for x in F),
                tuple(markers),
                tuple(sorted(delta.items())),
            )
        )

    for s in range(stages):
        snapshot(s)
        new_delta = dict(delta)
        for j in range(k):
            x = markers[j]
            z, w = fresh[j], fresh[j] + 1
            fresh[j] += 2
            actor, answer = None, None
            for e in fiber[j]:
                if e >= s:
                    break
                if delta[e] == 0:
                    v = by_id[e].value(x, j, s)
                    if v is not None:
                        actor, answer = e, v
                        break
            L = orders[j]
            if actor is None:
                L.insert(0, z)
                L.append(w)
                I[j].add(z)
                F[j].add(w)
                tr.actions.append(Action(s, j, GROW, None, z, w))
                continue
            new_delta[actor] = 1
            pos = L.index(x)
            if answer == 0:
                L[pos + 1 : pos + 1] = [z, w]
                I[j].add(z)
                tr.actions.append(Action(s, j, ACT0, actor, z, w))
            else:
                L[pos:pos] = [w, z]
                F[j].add(z)
                tr.actions.append(Action(s, j, ACT1, actor, z, w))
            markers[j] = w
        delta = new_delta
    snapshot(stages)
    insts = [SeparatorInstance(tuple(orders[j]), frozenset(I[j]), frozenset(F[j])) for j in range(k)]
    for j, inst in enumerate(insts):
        inst.check(j)
    return insts, tr


@dataclass(frozen=True)
class RequirementVerdict:
    """How program ``e`` fails to be a separator for its order.

    ``clause`` is 2, 3 or 4 with the witnessing elements, ``unresolved`` when
    no witness exists among converged values and some query has not
    converged (clause 1 is pending), or ``survived`` when the program looks
    like a separator on every element.
    """

    e: int
    j: int
    clause: int | str
    witness: tuple[int, ...] = ()

    @property
    def defeated(self) -> bool:
        return isinstance(self.clause, int)

    def line(self) -> str:
        wit = ",".join(map(str, self.witness)) or "-"
        return f"e={self.e} j={self.j} clause={self.clause} witness={wit}"


def check_requirements(
    insts: Sequence[SeparatorInstance],
    transcript: DiagonalTranscript,
    programs: Sequence[CandidateProgram],
    budget: int,
) -> list[RequirementVerdict]:
    if len(insts) != transcript.k:
        raise MismatchedInputs(f"{len(insts)} instances for a transcript with k = {transcript.k}")
    final = transcript.snapshots[-1] if transcript.snapshots else None
    if final is None or tuple(inst.order for inst in insts) != final.orders:
        raise MismatchedInputs("instances do not match the transcript's final orders")
    if any(p.id not in transcript.assignment for p in programs):
        raise MismatchedInputs("program ids differ from the transcript's assignment")
    out = []
    for p in programs:
        j = transcript.assignment[p.id]
        inst = insts[j]
        values = {x: p.value(x, j, budget) for x in inst.order}
        out.append(RequirementVerdict(p.id, j, *_first_clause(inst, values)))
    return out


def _first_clause(inst: SeparatorInstance, values: dict) -> tuple:
    for x in inst.order:
        if x in inst.I and values[x] == 0:
            return 2, (x,)
    for x in inst.order:
        if x in inst.F and values[x] == 1:
            return 3, (x,)
    # a converged 0 strictly below a converged 1
    zero = None
    for x in inst.order:
        if values[x] == 0 and zero is None:
            zero = x
        elif values[x] == 1 and zero is not None:
            return 4, (x, zero)
    if any(v is None for v in values.values()):
        return UNRESOLVED, ()
    return SURVIVED, ()


def sufficient_stages(programs: Sequence[CandidateProgram], convergence: int) -> int:
    """``2 * |programs| + convergence``, enough when ids are ``0..|programs|-1``.

    More generally ``max(max id + 1, convergence) + |programs|`` stages let
    every requirement act once its computation converges.
    """
    m = len(programs)
    top = max((p.id for p in programs), default=-1) + 1
    return max(2 * m + convergence, max(top, convergence) + m)
