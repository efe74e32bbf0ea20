"""Reading and writing complexes, maps and results.

Text format: one facet per line, labels separated by whitespace, ``#``
starts a comment.  JSON format: ``{"facets": [["a", "b"], ...]}``.  A map is
JSON ``{"source": <complex>, "target": <complex>, "assignment": {label: label}}``
where each complex is either a facet object or a bare facet list.
The path ``-`` means standard input.
"""
from __future__ import annotations

import json
import sys
from typing import Any, Sequence

from .complex import CollapseStep, Complex, ComplexError, from_facets
from .maps import ContiguityChain, Decision, VertexMap

__all__ = [
    "ParseError",
    "parse_complex",
    "read_complex",
    "complex_to_text",
    "complex_to_json",
    "parse_map",
    "read_map",
    "map_to_json",
    "chain_to_json",
    "decision_to_json",
    "catresult_to_json",
    "steps_to_json",
    "forests_to_json",
]


class ParseError(ValueError):
    """Input could not be read as a complex or map."""


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _complex_from_obj(obj: Any) -> Complex:
    facets = obj.get("facets") if isinstance(obj, dict) else obj
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise ParseError('expected {"facets": [[label, ...], ...]}')
    if any(not isinstance(v, str) for f in facets for v in f):
        raise ParseError("labels must be strings")
    try:
        return from_facets(facets)
    except ComplexError as exc:
        raise ParseError(str(exc)) from None


def parse_complex(text: str) -> Complex:
    """Parse either format; JSON is recognised by a leading ``{`` or ``[``."""
    stripped = text.lstrip()
    if stripped.startswith(("{", "[")):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return _complex_from_obj(obj)
    facets = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            facets.append(line.split())
    if not facets:
        raise ParseError("no facets found")
    try:
        return from_facets(facets)
    except ComplexError as exc:
        raise ParseError(str(exc)) from None


def read_complex(path: str) -> Complex:
    return parse_complex(_read_source(path))


def complex_to_text(K: Complex) -> str:
    return "".join(" ".join(f) + "\n" for f in K.facets)


def complex_to_json(K: Complex) -> dict:
    return {"facets": [list(f) for f in K.facets]}


def parse_map(text: str) -> VertexMap:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or not {"source", "target", "assignment"} <= obj.keys():
        raise ParseError('a map needs "source", "target" and "assignment"')
    src = _complex_from_obj(obj["source"])
    tgt = _complex_from_obj(obj["target"])
    assignment = obj["assignment"]
    if not isinstance(assignment, dict):
        raise ParseError("assignment must be an object label -> label")
    try:
        return VertexMap.from_assignment(src, tgt, assignment)
    except (ComplexError, KeyError) as exc:
        raise ParseError(f"bad assignment: {exc}") from None


def read_map(path: str) -> VertexMap:
    return parse_map(_read_source(path))


def map_to_json(f: VertexMap, *, with_complexes: bool = True) -> dict:
    out: dict = {"assignment": f.assignment}
    if with_complexes:
        out = {"source": complex_to_json(f.source), "target": complex_to_json(f.target), **out}
    return out


def chain_to_json(chain: ContiguityChain) -> list[dict]:
    return [f.assignment for f in chain.maps]


def steps_to_json(steps: Sequence[CollapseStep]) -> list[dict]:
    return [{"removed": s.removed, "dominator": s.dominator} for s in steps]


def forests_to_json(forests: Sequence[Sequence[tuple[str, str]]]) -> list[list[list[str]]]:
    return [[list(e) for e in f] for f in forests]


def _witness_to_json(w: object) -> object:
    if w is None:
        return None
    if isinstance(w, ContiguityChain):
        return {"chain": chain_to_json(w)}
    if isinstance(w, VertexMap):
        return {"map": w.assignment}
    if isinstance(w, tuple):
        return [_witness_to_json(x) for x in w]
    if hasattr(w, "blocks") and hasattr(w, "ambient"):
        return {"blocks": w.block_facets()}
    return repr(w)


def decision_to_json(d: Decision) -> dict:
    out = {"status": d.status, "visited": d.visited, "budget": d.budget}
    if d.witness is not None:
        out["witness"] = _witness_to_json(d.witness)
    info = {k: v for k, v in d.info.items() if isinstance(v, (int, str, float, bool))}
    if info:
        out["info"] = info
    return out


def catresult_to_json(r, *, with_chains: bool = True) -> dict:
    out = {
        "lower": r.lower,
        "upper": r.upper,
        "exact": r.exact,
        "witness": {"blocks": r.witness.block_facets()} if r.witness is not None else None,
    }
    if with_chains and r.chains:
        out["chains"] = [chain_to_json(c) if c is not None else None for c in r.chains]
    out["stats"] = {k: v for k, v in r.stats.items() if isinstance(v, (int, str, float, bool))}
    return out
