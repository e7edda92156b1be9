import json

import pytest

from kincomp import Saturating, build_graph, graph_from_json, graph_to_json, load_graph
from kincomp import generators as gen
from kincomp.errors import DuplicateEdgeError, InvalidRateError, SchemaError
from kincomp.io import dumps


def doc(edges=None, comps=None):
    return {
        "compartments": comps or [{"name": "a", "capacity": 1.0}, {"name": "b", "capacity": 2}],
        "edges": edges if edges is not None else [
            {"from": 1, "to": 2, "rate": {"kind": "mass_action", "k": 1.5}},
            {"from": 2, "to": 1, "rate": {"kind": "saturating", "k": 1, "a": 0.2, "b": 0.3}},
        ],
    }


def test_parse():
    g = graph_from_json(doc())
    assert g.labels == ("a", "b") and g.capacities == (1.0, 2.0)
    assert g.edges == ((0, 1), (1, 0))
    assert g.rates[1] == Saturating(1.0, 0.2, 0.3)


def test_round_trip():
    g = gen.triangle(Saturating(2.0, 0.5, 0.5), capacities=(1.0, 3.0, 0.25))
    again = graph_from_json(json.loads(dumps(graph_to_json(g))))
    assert again == g


@pytest.mark.parametrize(
    "bad, needle",
    [
        ({"compartments": []}, "missing"),
        ({**doc(), "extra": 1}, "unknown"),
        (doc(comps=[{"name": "a", "capacity": "1"}]), "capacity"),
        (doc(comps=[{"name": 3, "capacity": 1}]), "name"),
        (doc(edges=[{"from": 1.0, "to": 2, "rate": {"kind": "mass_action", "k": 1}}]), "from"),
        (doc(edges=[{"from": 1, "to": 2, "rate": {"kind": "nope", "k": 1}}]), r"edges\[0\]\.rate"),
        (doc(edges=[{"from": 1, "to": 2}]), "missing"),
        ([], "object"),
    ],
)
def test_schema_errors(bad, needle):
    with pytest.raises(SchemaError, match=needle):
        graph_from_json(bad)


def test_semantic_errors_pass_through():
    e = {"from": 1, "to": 2, "rate": {"kind": "mass_action", "k": 1}}
    with pytest.raises(DuplicateEdgeError):
        graph_from_json(doc(edges=[e, e]))
    with pytest.raises(InvalidRateError):
        graph_from_json(doc(edges=[{**e, "rate": {"kind": "mass_action", "k": -1}}]))


def test_load_graph_reports_line(tmp_path):
    p = tmp_path / "g.json"
    p.write_text('{\n  "compartments": [\n  oops\n]}')
    with pytest.raises(SchemaError, match="line 3"):
        load_graph(p)


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'


def test_default_rate_is_unit_mass_action():
    g = build_graph([1, 1], [(1, 2)])
    assert graph_to_json(g)["edges"][0]["rate"] == {"kind": "mass_action", "k": 1.0}
