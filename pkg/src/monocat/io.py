"""JSON encoding of bases, modules, morphisms, quivers, representations and
enumeration reports.  Serialization is deterministic: keys are sorted and
coefficients are little-endian digit arrays."""

from __future__ import annotations

import json
from typing import Optional

from .base import SerialBase, base_from_descriptor
from .enumerate import EnumerationReport
from .quiver import Quiver, quiver_from_descriptor
from .rep import Representation
from .serialmod import SerialModule, SerialMorphism, morphism, serial_module


def module_to_json(m: SerialModule) -> dict:
    return {"parts": list(m.parts)}


def module_from_json(base: SerialBase, data: dict) -> SerialModule:
    return serial_module(base, data["parts"])


def morphism_to_json(f: SerialMorphism) -> dict:
    entries = []
    for row in f.entries:
        entries.append([None if e.is_zero() else {"coeff": list(e.digits)} for e in row])
    return {"entries": entries}


def morphism_from_json(source: SerialModule, target: SerialModule, data: Optional[dict]) -> SerialMorphism:
    base = source.base
    zero = base.ring.zero
    rows = []
    raw = (data or {}).get("entries", [])
    for i in range(target.rank):
        row_data = raw[i] if i < len(raw) else []
        row = []
        for j in range(source.rank):
            cell = row_data[j] if j < len(row_data) else None
            row.append(zero if cell is None else base.ring.elem(cell["coeff"]))
        rows.append(row)
    return morphism(source, target, rows)


def representation_to_json(r: Representation) -> dict:
    return {
        "base": r.base.descriptor(),
        "quiver": r.quiver.descriptor(),
        "modules": {v: module_to_json(r.modules[v]) for v in r.quiver.vertices},
        "maps": {a.name: morphism_to_json(r.maps[a.name]) for a in r.quiver.arrows},
    }


def representation_from_json(data: dict, base: Optional[SerialBase] = None,
                             quiver: Optional[Quiver] = None) -> Representation:
    base = base or base_from_descriptor(data["base"])
    quiver = quiver or quiver_from_descriptor(data["quiver"])
    modules = {
        v: module_from_json(base, data.get("modules", {}).get(v, {"parts": []}))
        for v in quiver.vertices
    }
    maps = {}
    for a in quiver.arrows:
        maps[a.name] = morphism_from_json(
            modules[a.source], modules[a.target], data.get("maps", {}).get(a.name)
        )
    return Representation(quiver, base, modules, maps)


def report_to_json(report: EnumerationReport) -> dict:
    return {
        "base": report.base.descriptor(),
        "quiver": report.quiver.descriptor(),
        "caps": report.caps,
        "counts": report.counts,
        "classes": [
            {"representation": representation_to_json(r), "certificate": c}
            for r, c in report.classes
        ],
    }


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def load_representation(path: str) -> Representation:
    with open(path) as fh:
        return representation_from_json(json.load(fh))


def save_representation(path: str, r: Representation):
    with open(path, "w") as fh:
        fh.write(dumps(representation_to_json(r)))
