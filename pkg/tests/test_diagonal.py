from pathlib import Path

import pytest

from orderdim.diagonal import (
    ACT0,
    ACT1,
    GROW,
    CandidateProgram,
    check_requirements,
    const_program,
    delayed_program,
    run_diagonalization,
    set_program,
    sufficient_stages,
)
from orderdim.errors import MismatchedInputs, NonMonotoneProgram
from orderdim.separators import ls_star

GOLDEN = Path(__file__).parent / "golden"


def standard_programs():
    progs = [
        const_program(0, 0),
        const_program(1, 1),
        delayed_program(const_program(2, 0), 4),
        CandidateProgram(3, lambda x, j, s: x % 2, "parity"),
        delayed_program(CandidateProgram(4, lambda x, j, s: int(x >= 6), "threshold"), 2),
    ]
    assignment = {0: 0, 1: 1, 2: 0, 3: 2, 4: 1}
    return progs, assignment, 4


def test_no_programs_grows_both_ends():
    insts, tr = run_diagonalization(1, {}, [], 3)
    inst = insts[0]
    # marker 0 plus two new elements per stage
    assert len(inst.order) == 7
    assert len(inst.I) == 3 and len(inst.F) == 3
    assert inst.top_of_I < inst.bottom_of_F
    assert [a.action for a in tr.actions] == [GROW] * 3


def test_constant_zero_meets_clause_two_or_four():
    progs = [const_program(0, 0)]
    insts, tr = run_diagonalization(1, {0: 0}, progs, 2)
    verdict = check_requirements(insts, tr, progs, 2)[0]
    assert verdict.clause in (2, 4)
    assert tr.actions[1].action == ACT0


def test_constant_one_meets_clause_three():
    progs = [const_program(0, 1)]
    insts, tr = run_diagonalization(1, {0: 0}, progs, 3)
    assert check_requirements(insts, tr, progs, 3)[0].clause == 3


def test_never_converging_is_unresolved():
    progs = [CandidateProgram(0, lambda x, j, s: None, "never")]
    insts, tr = run_diagonalization(1, {0: 0}, progs, 5)
    assert check_requirements(insts, tr, progs, 5)[0].clause == "unresolved"


def test_copy_of_true_minimal_separator_is_defeated():
    progs, assignment, conv = standard_programs()
    S = sufficient_stages(progs, conv)
    before, _ = run_diagonalization(3, assignment, progs, S)
    minimal = dict(enumerate(ls_star(before)))
    copy = set_program(5, minimal)
    # on the run without it, the copy is a separator
    assert before[0].is_separator({x for x in before[0].order if copy.value(x, 0, 0) == 1})
    progs2 = progs + [copy]
    assignment2 = {**assignment, 5: 0}
    S2 = sufficient_stages(progs2, conv)
    insts, tr = run_diagonalization(3, assignment2, progs2, S2)
    verdicts = check_requirements(insts, tr, progs2, S2)
    assert all(v.defeated for v in verdicts)


def test_every_converging_program_defeated():
    progs, assignment, conv = standard_programs()
    S = sufficient_stages(progs, conv)
    insts, tr = run_diagonalization(3, assignment, progs, S)
    verdicts = check_requirements(insts, tr, progs, S)
    assert [v.e for v in verdicts] == [0, 1, 2, 3, 4]
    assert all(v.clause in (2, 3, 4) for v in verdicts)


def test_transcript_invariants():
    progs, assignment, conv = standard_programs()
    S = sufficient_stages(progs, conv)
    insts, tr = run_diagonalization(3, assignment, progs, S)
    # delta flips at most once, 0 -> 1
    for e in assignment:
        flags = [dict(s.delta)[e] for s in tr.snapshots]
        assert flags == sorted(flags)
    # two new elements per order per stage
    for a, b in zip(tr.snapshots, tr.snapshots[1:]):
        assert all(len(y) == len(x) + 2 for x, y in zip(a.orders, b.orders))
    # markers move at most once per assigned program
    for j in range(3):
        moves = sum(1 for a, b in zip(tr.snapshots, tr.snapshots[1:]) if a.markers[j] != b.markers[j])
        assert moves <= sum(1 for e in assignment if assignment[e] == j)
    for j, inst in enumerate(insts):
        inst.check(j)
        assert set(inst.order) == set(range(2 * S + 1))
    # each requirement acts at most once
    acted = [a.e for a in tr.actions if a.e is not None]
    assert len(acted) == len(set(acted))


def test_action_geometry():
    progs = [const_program(0, 0), const_program(1, 1)]
    insts, tr = run_diagonalization(1, {0: 0, 1: 0}, progs, 3)
    act0, act1 = tr.actions[1], tr.actions[2]
    assert (act0.action, act1.action) == (ACT0, ACT1)
    order = list(insts[0].order)
    # act0 at marker 0: 0 < z < w adjacent; act1 at marker w: w' < z' < w adjacent
    assert order.index(act0.z) == order.index(0) + 1
    assert order.index(act1.w) + 1 == order.index(act1.z) == order.index(act0.w) - 1


def test_golden_transcript():
    progs, assignment, conv = standard_programs()
    S = sufficient_stages(progs, conv)
    _, tr = run_diagonalization(3, assignment, progs, S)
    assert tr.log() == (GOLDEN / "diagonal_transcript.log").read_text()


def test_log_line_format():
    _, tr = run_diagonalization(1, {}, [], 1)
    assert tr.log_lines() == ["stage=0 j=0 action=grow e=- z=1 w=2"]


def test_monotone_wrapper():
    flaky = CandidateProgram(0, lambda x, j, s: s % 2)
    flaky.value(1, 0, 0)
    with pytest.raises(NonMonotoneProgram):
        flaky.value(1, 0, 1)
    with pytest.raises(NonMonotoneProgram):
        CandidateProgram(1, lambda x, j, s: 7).value(0, 0, 0)


def test_mismatched_inputs():
    progs = [const_program(0, 0)]
    with pytest.raises(MismatchedInputs):
        run_diagonalization(1, {}, progs, 2)
    with pytest.raises(MismatchedInputs):
        run_diagonalization(1, {0: 3}, progs, 2)
    insts, tr = run_diagonalization(1, {0: 0}, progs, 2)
    with pytest.raises(MismatchedInputs):
        check_requirements(insts + insts, tr, progs, 2)
    with pytest.raises(MismatchedInputs):
        check_requirements(insts, tr, [const_program(9, 1)], 2)
