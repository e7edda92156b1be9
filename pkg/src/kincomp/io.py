"""JSON documents read and written by the library and the command line.

Graph input::

    {"compartments": [{"name": "q1", "capacity": 1.0}, ...],
     "edges": [{"from": 1, "to": 2, "rate": {"kind": "mass_action", "k": 1.0}}, ...]}

Compartment numbers in ``edges`` are 1-based. Unknown fields are rejected.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .crn import Crn
from .errors import SchemaError
from .graph import CompartmentalGraph, build_graph
from .persistence import PersistenceVerdict
from .petri import PetriNet, siphon_names
from .rates import rate_from_spec


def _require_fields(obj: Any, where: str, required: set[str]) -> None:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object, got {type(obj).__name__}")
    extra = set(obj) - required
    missing = required - set(obj)
    if extra:
        raise SchemaError(f"{where}: unknown field(s) {sorted(extra)}")
    if missing:
        raise SchemaError(f"{where}: missing field(s) {sorted(missing)}")


def _number(val: Any, where: str) -> float:
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise SchemaError(f"{where}: expected a number, got {val!r}")
    return float(val)


def _integer(val: Any, where: str) -> int:
    if isinstance(val, bool) or not isinstance(val, int):
        raise SchemaError(f"{where}: expected an integer, got {val!r}")
    return val


def graph_from_json(doc: Any) -> CompartmentalGraph:
    _require_fields(doc, "graph", {"compartments", "edges"})
    comps = doc["compartments"]
    edges = doc["edges"]
    if not isinstance(comps, list) or not isinstance(edges, list):
        raise SchemaError("graph: 'compartments' and 'edges' must be arrays")
    names, caps = [], []
    for k, c in enumerate(comps):
        where = f"compartments[{k}]"
        _require_fields(c, where, {"name", "capacity"})
        if not isinstance(c["name"], str):
            raise SchemaError(f"{where}.name: expected a string")
        names.append(c["name"])
        caps.append(_number(c["capacity"], f"{where}.capacity"))
    pairs, kernels = [], []
    for k, e in enumerate(edges):
        where = f"edges[{k}]"
        _require_fields(e, where, {"from", "to", "rate"})
        pairs.append((_integer(e["from"], f"{where}.from"), _integer(e["to"], f"{where}.to")))
        try:
            kernels.append(rate_from_spec(e["rate"]))
        except SchemaError as exc:
            raise SchemaError(f"{where}.rate: {exc}") from None
    return build_graph(caps, pairs, kernels, names)


def graph_to_json(g: CompartmentalGraph) -> dict:
    return {
        "compartments": [{"name": n, "capacity": c} for n, c in zip(g.labels, g.capacities)],
        "edges": [{"from": i + 1, "to": j + 1, "rate": r.to_spec()}
                  for (i, j), r in zip(g.edges, g.rates)],
    }


def load_graph(path: str | Path) -> CompartmentalGraph:
    """Read a graph document; JSON syntax errors become SchemaError with line info."""
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return graph_from_json(doc)


def siphon_report(net: PetriNet, siphons, method: str) -> dict:
    return {"minimal_siphons": siphon_names(net, siphons), "method": method}


def verdict_report(verdict: PersistenceVerdict, crn: Crn) -> dict:
    return verdict.to_json(crn.species)


def dumps(doc: Any) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
