"""Versioned JSON documents for posets, realizers, separator instances and diagonal configs.

Every document is an object with ``format_version`` and ``kind``.  Relations
are written as cover pairs and closed again on load, so a document written
from a poset reads back to an equal poset.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .core import ChainSet, Poset, build_poset, is_chain
from .dimension import Realizer
from .errors import DocumentError, NotAChain, SizeMismatch
from .separators import SeparatorInstance

FORMAT_VERSION = 1

POSET = "poset"
REALIZER = "realizer"
INSTANCES = "separator-instances"
DIAGONAL_CONFIG = "diagonal-config"


@dataclass(frozen=True)
class PosetDoc:
    poset: Poset
    chains: dict[str, frozenset[int]] = field(default_factory=dict, hash=False)
    marked_point: int | None = None
    levels: tuple[int, ...] | None = None

    def chain_set(self, names: Sequence[str] | None = None) -> ChainSet:
        names = list(self.chains) if names is None else list(names)
        missing = [n for n in names if n not in self.chains]
        if missing:
            raise DocumentError(f"unknown chain name(s): {', '.join(missing)}")
        return ChainSet(tuple(self.chains[n] for n in names))


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def write(path: str | Path, doc: dict) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def read(path: str | Path, kind: str | None = None) -> dict:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: not valid JSON ({exc})") from exc
    return check_header(doc, kind, str(path))


def check_header(doc: Any, kind: str | None, where: str = "document") -> dict:
    if not isinstance(doc, dict):
        raise DocumentError(f"{where}: expected a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise DocumentError(f"{where}: unsupported format_version {doc.get('format_version')!r}")
    if kind is not None and doc.get("kind") != kind:
        raise DocumentError(f"{where}: expected kind {kind!r}, got {doc.get('kind')!r}")
    return doc


def _strings(value, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise DocumentError(f"{what} must be a list of strings")
    return value


def poset_to_doc(pd: PosetDoc | Poset) -> dict:
    if isinstance(pd, Poset):
        pd = PosetDoc(pd)
    P = pd.poset
    doc: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "kind": POSET,
        "elements": list(P.labels),
        "relation": [[P.labels[x], P.labels[y]] for x, y in P.cover_pairs()],
    }
    if pd.chains:
        doc["chains"] = {name: [P.labels[x] for x in sorted(c)] for name, c in pd.chains.items()}
    if pd.marked_point is not None:
        doc["marked_point"] = P.labels[pd.marked_point]
    if pd.levels is not None:
        doc["levels"] = list(pd.levels)
    return doc


def poset_from_doc(doc: dict, where: str = "poset document") -> PosetDoc:
    check_header(doc, POSET, where)
    labels = _strings(doc.get("elements"), "elements")
    rel = doc.get("relation", [])
    if not isinstance(rel, list) or not all(isinstance(p, list) and len(p) == 2 for p in rel):
        raise DocumentError("relation must be a list of [from, to] pairs")
    P = build_poset(labels, [tuple(p) for p in rel])
    chains = {}
    for name, members in (doc.get("chains") or {}).items():
        idx = frozenset(P.indices(_strings(members, f"chain {name}")))
        if not is_chain(P, idx):
            raise NotAChain(sorted(members))
        chains[name] = idx
    marked = doc.get("marked_point")
    marked = P.index(marked) if marked is not None else None
    levels = doc.get("levels")
    if levels is not None:
        if not isinstance(levels, list) or len(levels) != P.n or not all(isinstance(v, int) for v in levels):
            raise DocumentError("levels must list one integer per element")
        levels = tuple(levels)
    return PosetDoc(P, chains, marked, levels)


def read_poset(path: str | Path) -> PosetDoc:
    return poset_from_doc(read(path, POSET), str(path))


def realizer_to_doc(P: Poset, R: Realizer, inline_poset: bool = True) -> dict:
    doc: dict[str, Any] = {"format_version": FORMAT_VERSION, "kind": REALIZER}
    if inline_poset:
        doc["poset"] = poset_to_doc(P)
    doc["extensions"] = R.names(P)
    return doc


def realizer_from_doc(doc: dict, P: Poset, where: str = "realizer document") -> Realizer:
    """Read the extensions of ``doc`` against ``P``; each must list exactly P's elements."""
    check_header(doc, REALIZER, where)
    exts = doc.get("extensions")
    if not isinstance(exts, list) or not exts:
        raise DocumentError("extensions must be a non-empty list")
    want = sorted(P.labels)
    for i, e in enumerate(exts):
        if sorted(_strings(e, f"extension {i}")) != want:
            raise SizeMismatch(f"extension {i} does not list exactly the poset's elements")
    return Realizer.from_names(P, exts)


def realizer_poset(doc: dict, base: Path | None = None) -> Poset | None:
    """The poset a realizer document refers to, inline or by path, if any."""
    ref = doc.get("poset")
    if ref is None:
        return None
    if isinstance(ref, str):
        path = Path(ref) if base is None else base / ref
        return read_poset(path).poset
    return poset_from_doc(ref).poset


def instances_to_doc(insts: Sequence[SeparatorInstance]) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": INSTANCES,
        "instances": [
            {
                "order": [str(x) for x in inst.order],
                "I": [str(x) for x in inst.order if x in inst.I],
                "F": [str(x) for x in inst.order if x in inst.F],
            }
            for inst in insts
        ],
    }


def instances_from_doc(doc: dict, where: str = "instances document") -> list[SeparatorInstance]:
    check_header(doc, INSTANCES, where)
    raw = doc.get("instances")
    if not isinstance(raw, list):
        raise DocumentError("instances must be a list")
    out = []
    for j, item in enumerate(raw):
        if not isinstance(item, dict):
            raise DocumentError(f"instance {j} must be an object")
        try:
            out.append(
                SeparatorInstance(
                    tuple(_strings(item.get("order"), f"instance {j} order")),
                    frozenset(_strings(item.get("I", []), f"instance {j} I")),
                    frozenset(_strings(item.get("F", []), f"instance {j} F")),
                )
            )
        except ValueError as exc:
            raise DocumentError(f"instance {j}: {exc}") from exc
    return out

