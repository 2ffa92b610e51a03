"""JSON file formats and DOT export.

Formats (element ids are JSON strings):

* poset:      {"elements": [ids], "leq": [[a, b], ...]}
              (reflexive-transitive closure applied on load)
* witness:    {"A": {id: [ids]}, "B": {id: [ids]}}
* lattice:    {"downsets_of": <poset>}  or
              {"elements": ..., "leq": ..., "bottom": id,
               "check_distributive": bool?}
* deviation:  {"d": {"x,y": value}}   (ids must not contain commas)
* amalgam:    {"carrier": <poset>, "index": <poset>,
               "family": {p: [ids]}, "nu": {x: p}?}
* semilinear: {"dimension": n, "cells": [["2*x0 - 1 > 0", ...], ...]}
"""

from __future__ import annotations

import json
from typing import Optional

from .errors import InputError
from .lattices import FiniteDistributiveLattice, lattice_from_downsets
from .posets import (FinitePoset, SeparabilityWitness, StrongAmalgamSpec)
from .semilinear import SemilinearSet, parse_set


def poset_from_json(obj) -> FinitePoset:
    try:
        elements = obj["elements"]
        pairs = [tuple(p) for p in obj.get("leq", [])]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed poset JSON: {exc}") from None
    return FinitePoset.from_relation(elements, pairs)


def poset_to_json(P: FinitePoset) -> dict:
    return {"elements": list(P.elements),
            "leq": [[a, b] for (a, b) in sorted(
                ((a, b) for a in P.elements for b in P.elements
                 if P.lt(a, b)),
                key=lambda ab: (P.index(ab[0]), P.index(ab[1])))]}


def witness_from_json(obj) -> SeparabilityWitness:
    try:
        A = {x: frozenset(v) for x, v in obj["A"].items()}
        B = {x: frozenset(v) for x, v in obj["B"].items()}
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed witness JSON: {exc}") from None
    return SeparabilityWitness(A, B)


def witness_to_json(P: FinitePoset, W: SeparabilityWitness) -> dict:
    return {"A": {str(x): sorted(map(str, W.A[x])) for x in P.elements},
            "B": {str(x): sorted(map(str, W.B[x])) for x in P.elements}}


def lattice_from_json(obj) -> FiniteDistributiveLattice:
    if "downsets_of" in obj:
        return lattice_from_downsets(poset_from_json(obj["downsets_of"]))
    P = poset_from_json(obj)
    check = obj.get("check_distributive", True)
    D = FiniteDistributiveLattice(P, check_distributive=check)
    if "bottom" in obj and obj["bottom"] != D.bottom:
        raise InputError(
            f"declared bottom {obj['bottom']!r} is not the least element")
    return D


def lattice_to_json(D: FiniteDistributiveLattice) -> dict:
    out = poset_to_json(D.poset)
    out["bottom"] = D.bottom
    return out


def _downset_id_to_str(x) -> str:
    # down-set lattice ids are tuples of member ids
    if isinstance(x, tuple):
        return "{" + ",".join(map(str, x)) + "}"
    return str(x)


def deviation_from_json(obj, D: FiniteDistributiveLattice) -> dict:
    try:
        raw = obj["d"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed deviation JSON: {exc}") from None
    d = {}
    for key, v in raw.items():
        parts = key.split(",")
        if len(parts) != 2:
            raise InputError(f"bad pair key {key!r}")
        x, y = parts[0], parts[1]
        for e in (x, y, v):
            if e not in D.poset:
                raise InputError(f"unknown element {e!r} in deviation map")
        d[(x, y)] = v
    return d


def deviation_to_json(d: dict) -> dict:
    return {"d": {f"{x},{y}": str(v) for (x, y), v in sorted(
        d.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1])))}}


def amalgam_from_json(obj) -> tuple:
    """Returns (spec, nu or None)."""
    try:
        carrier = poset_from_json(obj["carrier"])
        index = poset_from_json(obj["index"])
        family = {p: frozenset(v) for p, v in obj["family"].items()}
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed amalgam JSON: {exc}") from None
    nu = obj.get("nu")
    if nu is not None:
        nu = dict(nu)
    return StrongAmalgamSpec(carrier, index, family), nu


def semilinear_from_json(obj) -> SemilinearSet:
    try:
        n = int(obj["dimension"])
        cells = obj["cells"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed semilinear JSON: {exc}") from None
    return parse_set(cells, n)


def semilinear_to_json(S: SemilinearSet) -> dict:
    return {"dimension": S.dimension,
            "cells": [[str(a) for a in c.atoms] for c in S.cells]}


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from None


# ---------------------------------------------------------------------------
# DOT export (Hasse diagrams)
# ---------------------------------------------------------------------------

def dot_poset(P: FinitePoset, name: str = "poset",
              labels: Optional[dict] = None) -> str:
    def lab(x):
        if labels and x in labels:
            return labels[x]
        return _downset_id_to_str(x)

    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for x in P.elements:
        lines.append(f'  "{lab(x)}";')
    for a, b in P.covers():
        lines.append(f'  "{lab(a)}" -> "{lab(b)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_lattice(D: FiniteDistributiveLattice, name: str = "lattice") -> str:
    return dot_poset(D.poset, name)
