"""Command-line front end.

Exit codes: 0 success, 1 input error (unreadable or invalid documents,
unmet preconditions, bad arguments), 2 property violation (a realizer that
does not realize, a program that survives diagonalization), 3 search budget
exhausted.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Sequence

from . import documents as docs
from .bounds import db_point, dbc, dbi
from .core import ChainSet
from .diagonal import (
    CandidateProgram,
    check_requirements,
    const_program,
    delayed_program,
    run_diagonalization,
    set_program,
    sufficient_stages,
)
from .dimension import DEFAULT_NODE_BUDGET, ORACLE_MAX_N, dimension_exact, dimension_oracle, verify_realizer
from .errors import BudgetExceeded, DocumentError, OrderError
from .generators import (
    SHARPNESS,
    VARIANTS,
    InjectionPair,
    LeveledPoset,
    extract_separator,
    gen_dbp_reversal,
    gen_fn,
    gen_pk,
    gen_pk_chain_variant,
    gen_sharpness,
    random_injection,
    random_poset,
)
from .separators import (
    MAXIMAL,
    MINIMAL,
    embedded_interval,
    ls_star,
    ls_to_point,
    point_to_separator,
    separator_elements,
    xc1_via_ls,
)

DEFAULT_SEED = 20240229

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATION = 2
EXIT_BUDGET = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _say(*parts) -> None:
    print(*parts)
    sys.stdout.flush()


def _fmt_set(xs) -> str:
    return "{" + ", ".join(str(x) for x in xs) + "}"


def _out_dir(path: str) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write(path: Path, doc: dict) -> None:
    docs.write(path, doc)
    _say(f"wrote {path}")


# dim / verify


def cmd_dim(args) -> int:
    pd = docs.read_poset(args.poset)
    P = pd.poset
    try:
        res = dimension_exact(P, max_t=args.max_t, node_budget=args.budget)
    except BudgetExceeded as exc:
        _say(f"budget exhausted after {exc.nodes} nodes: {exc.lower} <= dim <= {exc.upper}")
        return EXIT_BUDGET
    _say(f"dim {res.dim}")
    _say(f"nodes {res.nodes}")
    for t, nodes in res.proof_of_lower:
        _say(f"no realizer of size {t} ({nodes} nodes)")
    for i, names in enumerate(res.witness.names(P)):
        _say(f"witness {i}: {' '.join(names)}")
    if args.oracle:
        if P.n <= ORACLE_MAX_N:
            d = dimension_oracle(P)
            _say(f"oracle {d} {'agrees' if d == res.dim else 'DISAGREES'}")
            if d != res.dim:
                return EXIT_VIOLATION
        else:
            _say(f"oracle skipped ({P.n} > {ORACLE_MAX_N} elements)")
    if args.witness_out:
        _write(Path(args.witness_out), docs.realizer_to_doc(P, res.witness))
    return EXIT_OK


def cmd_verify(args) -> int:
    P = docs.read_poset(args.poset).poset
    R = docs.realizer_from_doc(docs.read(args.realizer, docs.REALIZER), P, args.realizer)
    verdict = verify_realizer(P, R)
    if verdict:
        _say(f"ok: {len(R)} extensions realize the order")
        return EXIT_OK
    _say(verdict.describe(P))
    return EXIT_VIOLATION


# extend


def cmd_extend(args) -> int:
    pd = docs.read_poset(args.poset)
    P = pd.poset
    if args.mode == "point":
        if args.point is not None:
            x0 = P.index(args.point)
        elif pd.marked_point is not None:
            x0 = pd.marked_point
        else:
            raise DocumentError("point mode needs --point or a marked_point in the poset document")
        removed = {x0}
    else:
        chains = pd.chain_set(args.chains)
        if not len(chains):
            raise DocumentError("chain modes need chains in the poset document")
        removed = chains.union()
    Q, _ = P.without(removed)
    R = docs.realizer_from_doc(docs.read(args.realizer, docs.REALIZER), Q, args.realizer)
    if args.mode == "point":
        full = db_point(P, x0, R)
    elif args.mode == "incomparable-chains":
        full = dbi(P, chains, R)
    else:
        full = dbc(P, chains, R)
    _say(f"extensions {len(full)} (from {len(R)})")
    _say("verify ok")
    _write(Path(args.out), docs.realizer_to_doc(P, full))
    if args.separator_threshold is not None:
        if pd.levels is None:
            raise DocumentError("--separator-threshold needs levels in the poset document")
        A = extract_separator(LeveledPoset(P, pd.levels, {}), full, args.separator_threshold)
        _say(f"separator levels {_fmt_set(sorted(A))}")
    return EXIT_OK


# gen


def _injection(args) -> InjectionPair:
    if args.f is None and args.g is None:
        return random_injection(args.N, random.Random(args.seed))
    parse = lambda s: tuple(int(v) for v in s.split(",") if v.strip()) if s else ()
    return InjectionPair(parse(args.f), parse(args.g), args.N)


def _leveled_doc(lp: LeveledPoset, chains: ChainSet | None = None) -> dict:
    named = {f"C{i}": c for i, c in enumerate(chains)} if chains is not None else {}
    return docs.poset_to_doc(docs.PosetDoc(lp.poset, named, None, lp.level))


def cmd_gen(args) -> int:
    out = _out_dir(args.out_dir)
    target = args.target
    if target == "fn":
        P, R = gen_fn(args.n)
        _write(out / "poset.json", docs.poset_to_doc(P))
        _write(out / "realizer.json", docs.realizer_to_doc(P, R))
    elif target == "pk":
        inj = _injection(args)
        lp = gen_pk(args.k, inj)
        _say(f"f {list(inj.f)} g {list(inj.g)} N {inj.N}")
        _write(out / "poset.json", _leveled_doc(lp))
    elif target == "variant":
        inj = _injection(args)
        lp, chains, R = gen_pk_chain_variant(args.variant, inj, args.n)
        Q, _ = lp.poset.without(chains.union())
        _say(f"f {list(inj.f)} g {list(inj.g)} N {inj.N}")
        _write(out / "poset.json", _leveled_doc(lp, chains))
        _write(out / "subrealizer.json", docs.realizer_to_doc(Q, R))
    elif target == "sharpness":
        case = gen_sharpness(args.example, args.n)
        Q, _ = case.poset.without(case.chains.union())
        _say(f"dim before {case.dim_before} after {case.dim_after}")
        named = {f"C{i}": c for i, c in enumerate(case.chains)}
        _write(out / "poset.json", docs.poset_to_doc(docs.PosetDoc(case.poset, named)))
        _write(out / "subrealizer.json", docs.realizer_to_doc(Q, case.witness))
    elif target == "dbp-reversal":
        insts = docs.instances_from_doc(docs.read(args.instances, docs.INSTANCES), args.instances)
        rev = gen_dbp_reversal(insts)
        Q, _ = rev.poset.without([rev.z0])
        _write(out / "poset.json", docs.poset_to_doc(docs.PosetDoc(rev.poset, {}, rev.z0)))
        _write(out / "subrealizer.json", docs.realizer_to_doc(Q, rev.realizer))
        codes = {
            "format_version": docs.FORMAT_VERSION,
            "kind": "codes",
            "codes": [{str(e): lab for e, lab in code.items()} for code in rev.codes],
        }
        _write(out / "codes.json", codes)
    elif target == "random":
        P = random_poset(args.n, args.p, random.Random(args.seed))
        _write(out / "poset.json", docs.poset_to_doc(P))
    return EXIT_OK


# separate


def cmd_separate(args) -> int:
    insts = docs.instances_from_doc(docs.read(args.instances, docs.INSTANCES), args.instances)
    for j, B in enumerate(ls_star(insts, args.mode)):
        _say(f"instance {j} {args.mode} separator {_fmt_set(x for x in insts[j].order if x in B)}")
    if args.elements:
        _say(f"separator elements {_fmt_set(sorted(separator_elements(insts)))}")
    if args.xc1_roundtrip:
        for j, inst in enumerate(insts):
            x = ls_to_point(inst)
            B = point_to_separator(inst, x)
            y = xc1_via_ls(embedded_interval(inst))
            _say(f"instance {j} point {x} separator {_fmt_set(v for v in inst.order if v in B)} xc1 {y}")
    return EXIT_OK


# diagonalize


def _program(spec: dict) -> tuple[CandidateProgram, int]:
    """Build a program from its table entry; also return its convergence step."""
    e = spec.get("id")
    if not isinstance(e, int):
        raise DocumentError(f"program entry without integer id: {spec!r}")
    kind = spec.get("type")
    if kind == "const0":
        return const_program(e, 0), 0
    if kind == "const1":
        return const_program(e, 1), 0
    if kind == "parity":
        return CandidateProgram(e, lambda x, j, s: x % 2, "parity"), 0
    if kind == "threshold":
        at = int(spec.get("at", 0))
        return CandidateProgram(e, lambda x, j, s: int(x >= at), f"threshold({at})"), 0
    if kind == "never":
        return CandidateProgram(e, lambda x, j, s: None, "never"), 0
    if kind == "table":
        values = {int(k): int(v) for k, v in spec.get("values", {}).items()}
        default = int(spec.get("default", 0))
        return CandidateProgram(e, lambda x, j, s: values.get(x, default), "table"), 0
    if kind == "delayed":
        inner, conv = _program({**spec.get("inner", {}), "id": e})
        delay = int(spec.get("delay", 0))
        return delayed_program(inner, delay), max(conv, delay)
    raise DocumentError(f"unknown program type {kind!r}")


def cmd_diagonalize(args) -> int:
    cfg = docs.read(args.config, docs.DIAGONAL_CONFIG)
    k = cfg.get("k")
    table = cfg.get("programs", [])
    if not isinstance(k, int) or not isinstance(table, list):
        raise DocumentError("diagonal config needs integer k and a programs list")
    assignment = {}
    plain, copies = [], []
    conv = 0
    for spec in table:
        if not isinstance(spec, dict) or not isinstance(spec.get("order"), int):
            raise DocumentError(f"program entry without integer order: {spec!r}")
        assignment[spec.get("id")] = spec["order"]
        if spec.get("type") == "copy-minimal":
            copies.append(spec["id"])
            continue
        prog, c = _program(spec)
        plain.append(prog)
        conv = max(conv, c)
    stages = cfg.get("stages")
    if stages is None:
        stages = sufficient_stages(plain + [const_program(e, 0) for e in copies], conv)
    if copies:
        # the true minimal separators of a run without these programs, frozen as set programs
        pre_assign = {p.id: assignment[p.id] for p in plain}
        pre, _ = run_diagonalization(k, pre_assign, [_program(s)[0] for s in table if s["id"] in pre_assign], stages)
        minimal = {j: B for j, B in enumerate(ls_star(pre, MINIMAL))}
        plain += [set_program(e, minimal) for e in copies]
    programs = sorted(plain, key=lambda p: p.id)
    insts, tr = run_diagonalization(k, assignment, programs, stages)
    verdicts = check_requirements(insts, tr, programs, stages)
    out = _out_dir(args.out_dir)
    _write(out / "instances.json", docs.instances_to_doc(insts))
    (out / "transcript.log").write_text(tr.log(), encoding="utf-8")
    _say(f"wrote {out / 'transcript.log'}")
    lines = [v.line() for v in verdicts]
    (out / "verdicts.txt").write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    _say(f"stages {stages}")
    for line in lines:
        _say(line)
    return EXIT_VIOLATION if any(v.clause == "survived" for v in verdicts) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orderdim", description="Poset dimension, realizer extension and separator tools.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("dim", help="exact dimension with a witness realizer")
    d.add_argument("poset")
    d.add_argument("--max-t", type=int)
    d.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    d.add_argument("--oracle", action="store_true", help=f"cross-check by brute force (<= {ORACLE_MAX_N} elements)")
    d.add_argument("--witness-out")
    d.set_defaults(func=cmd_dim)

    v = sub.add_parser("verify", help="check that a realizer realizes a poset")
    v.add_argument("poset")
    v.add_argument("realizer")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("extend", help="extend a realizer of a subposet to the whole poset")
    e.add_argument("mode", choices=["point", "incomparable-chains", "chains"])
    e.add_argument("poset")
    e.add_argument("realizer", help="realizer of the poset minus the point or chains")
    e.add_argument("--point")
    e.add_argument("--chains", nargs="+", help="chain names from the poset document (default: all)")
    e.add_argument("-o", "--out", default="realizer.json")
    e.add_argument("--separator-threshold", type=int)
    e.set_defaults(func=cmd_extend)

    g = sub.add_parser("gen", help="write generated posets and realizers")
    gsub = g.add_subparsers(dest="target", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("-o", "--out-dir", default=".")
        sp.set_defaults(func=cmd_gen)

    def injection(sp):
        sp.add_argument("--N", type=int, default=12)
        sp.add_argument("--f", help="comma-separated values of f")
        sp.add_argument("--g", help="comma-separated values of g")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED, help="used when --f and --g are omitted")

    s = gsub.add_parser("fn")
    s.add_argument("n", type=int)
    common(s)
    s = gsub.add_parser("pk")
    s.add_argument("k", type=int)
    injection(s)
    common(s)
    s = gsub.add_parser("variant")
    s.add_argument("variant", choices=list(VARIANTS))
    s.add_argument("--n", type=int)
    injection(s)
    common(s)
    s = gsub.add_parser("sharpness")
    s.add_argument("example", choices=list(SHARPNESS))
    s.add_argument("--n", type=int)
    common(s)
    s = gsub.add_parser("dbp-reversal")
    s.add_argument("instances")
    common(s)
    s = gsub.add_parser("random")
    s.add_argument("n", type=int)
    s.add_argument("--p", type=float, default=0.3)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common(s)

    s = sub.add_parser("separate", help="least/greatest separators and interval round trips")
    s.add_argument("instances")
    s.add_argument("--mode", choices=[MINIMAL, MAXIMAL], default=MINIMAL)
    s.add_argument("--elements", action="store_true")
    s.add_argument("--xc1-roundtrip", action="store_true")
    s.set_defaults(func=cmd_separate)

    s = sub.add_parser("diagonalize", help="run the stage construction against a program table")
    s.add_argument("config")
    s.add_argument("-o", "--out-dir", default=".")
    s.set_defaults(func=cmd_diagonalize)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (OrderError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
