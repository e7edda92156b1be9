import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kincomp import build_graph, donors_recipients, strong_components
from kincomp.errors import (
    DanglingEndpointError,
    DuplicateEdgeError,
    LoopEdgeError,
    NonpositiveCapacityError,
)
from kincomp import generators as gen

from oracles import components_by_reachability


def test_triangle_builds(tri):
    assert tri.m == 3
    assert set(tri.edges) == {(0, 1), (1, 2), (2, 0)}
    assert tri.capacities == (1.0, 1.0, 1.0)


def test_single_compartment_without_edges():
    g = build_graph([2.5], [])
    assert g.m == 1 and g.edges == ()


@pytest.mark.parametrize(
    "caps, edges, error, needle",
    [
        ([1, 1], [(2, 2)], LoopEdgeError, "(2,2)"),
        ([1, 1], [(1, 2), (1, 2)], DuplicateEdgeError, "(1,2)"),
        ([1, 0], [(1, 2)], NonpositiveCapacityError, "compartment 2"),
        ([1, -3], [], NonpositiveCapacityError, "compartment 2"),
        ([1, float("inf")], [], NonpositiveCapacityError, "compartment 2"),
        ([1, 1], [(1, 3)], DanglingEndpointError, "compartment 3"),
        ([1, 1], [(0, 1)], DanglingEndpointError, "compartment 0"),
    ],
)
def test_validation_errors_name_the_offender(caps, edges, error, needle):
    with pytest.raises(error, match=needle.replace("(", r"\(").replace(")", r"\)")):
        build_graph(caps, edges)


def test_triangle_is_one_component(tri):
    comps, flag = strong_components(tri)
    assert comps == [[0, 1, 2]] and flag


def test_single_edge_two_components():
    comps, flag = strong_components(build_graph([1, 1], [(1, 2)]))
    assert comps == [[0], [1]] and not flag


def test_random_six_vertex_graph_matches_reachability(rng):
    g = gen.random_graph(6, rng, p=0.3)
    comps, _ = strong_components(g)
    assert comps == components_by_reachability(6, g.edges)


def test_donors_recipients_triangle(tri):
    idx = donors_recipients(tri)
    assert idx.donors[0] == {2} and idx.recipients[0] == {1}


def test_donors_recipients_isolated_vertex():
    idx = donors_recipients(build_graph([1, 1, 1], [(1, 2)]))
    assert idx.donors[2] == set() and idx.recipients[2] == set()


def test_complete_graph_donors_are_all_others():
    idx = donors_recipients(gen.complete(3))
    for i in range(3):
        others = {0, 1, 2} - {i}
        assert idx.donors[i] == others and idx.recipients[i] == others


digraphs = st.integers(1, 6).flatmap(
    lambda m: st.tuples(
        st.just(m),
        st.sets(st.tuples(st.integers(1, m), st.integers(1, m)).filter(lambda e: e[0] != e[1])),
    )
)


@settings(max_examples=1000, deadline=None)
@given(digraphs)
def test_components_agree_with_brute_force_reachability(spec):
    m, edges = spec
    g = build_graph([1.0] * m, sorted(edges))
    comps, flag = strong_components(g)
    assert comps == components_by_reachability(m, g.edges)
    assert flag == (len(comps) == 1)
    # a partition of the vertex set
    assert sorted(v for c in comps for v in c) == list(range(m))


@settings(max_examples=300, deadline=None)
@given(digraphs)
def test_degree_sums_and_connectivity_necessity(spec):
    m, edges = spec
    g = build_graph([1.0] * m, sorted(edges))
    idx = donors_recipients(g)
    assert sum(len(d) for d in idx.donors) == sum(len(r) for r in idx.recipients) == len(edges)
    for i, j in g.edges:
        assert i in idx.donors[j] and j in idx.recipients[i]
    if m > 1 and any(not d for d in idx.donors + idx.recipients):
        assert not strong_components(g)[1]


def test_graph_is_immutable(tri):
    with pytest.raises(Exception):
        tri.capacities = (2.0, 2.0, 2.0)
    assert isinstance(np.asarray(tri.capacities), np.ndarray)
