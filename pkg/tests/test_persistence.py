from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kincomp import (
    Crn,
    MassActionRate,
    Reaction,
    build_graph,
    check_persistence_structural,
    check_persistence_theorem1,
    compartmental_crn,
    strong_components,
    verify_certificates,
)
from kincomp import generators as gen
from kincomp.crn import ConservedQuantity
from kincomp.persistence import INCONCLUSIVE, PERSISTENT, PersistenceVerdict


def test_triangle_certified_both_ways(tri, tri_crn):
    s = check_persistence_structural(tri)
    t = check_persistence_theorem1(tri_crn)
    assert s.verdict == t.verdict == PERSISTENT
    assert verify_certificates(s, tri_crn) and verify_certificates(t, tri_crn)
    assert set(s.per_siphon_certificates) == set(t.per_siphon_certificates)
    assert s.global_certificate.coefficients == (Fraction(1),) * 6


def test_example1_certificates_exact(ex1):
    v = check_persistence_theorem1(ex1)
    assert v.certified
    for siphon, cert in v.per_siphon_certificates.items():
        assert cert.support <= siphon
        assert all(x == 0 for x in cert.residual(ex1.gamma))


def test_irreversible_conversion_is_inconclusive():
    crn = Crn(["X1", "X2"], [Reaction((1, 0), (0, 1), MassActionRate(1.0, (1, 0)))])
    v = check_persistence_theorem1(crn)
    assert v.verdict == INCONCLUSIVE
    assert v.global_certificate is not None  # x1 + x2 is conserved
    assert v.per_siphon_certificates[frozenset({0})] is None
    assert "X1" in v.reason


def test_no_positive_conserved_quantity_is_inconclusive():
    crn = Crn(["A"], [Reaction((1,), (2,), MassActionRate(1.0, (1,)))])
    v = check_persistence_theorem1(crn)
    assert v.verdict == INCONCLUSIVE and v.global_certificate is None


def test_structural_refuses_unconnected():
    g = build_graph([1, 1], [(1, 2)])
    v = check_persistence_structural(g)
    assert v.verdict == INCONCLUSIVE
    # the general test also fails to certify: {N1} has no conserved quantity inside
    assert check_persistence_theorem1(compartmental_crn(g)).verdict == INCONCLUSIVE


def test_tampered_certificate_is_caught(tri, tri_crn):
    v = check_persistence_structural(tri)
    bad = dict(v.per_siphon_certificates)
    key = next(iter(bad))
    coeffs = list(bad[key].coefficients)
    coeffs[key and min(key)] += 1
    bad[key] = ConservedQuantity(tuple(coeffs))
    forged = PersistenceVerdict(v.verdict, v.method, v.global_certificate, bad)
    assert not verify_certificates(forged, tri_crn)
    nonstrict = PersistenceVerdict(PERSISTENT, "x", ConservedQuantity((Fraction(1),) * 3 + (Fraction(0),) * 3), {})
    assert not verify_certificates(nonstrict, tri_crn)


def test_verdict_json(tri, tri_crn):
    doc = check_persistence_structural(tri).to_json(tri_crn.species)
    assert doc["verdict"] == "persistent_certified"
    assert doc["method"] == "structural_corollary"
    assert [e["siphon_names"] for e in doc["siphon_certificates"]][1] == ["N1", "S1"]
    assert doc["global_certificate"]["coefficients"][0] == [1, 1]


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000), st.integers(2, 5))
def test_structural_and_general_agree(seed, m):
    g = gen.random_strongly_connected(m, np.random.default_rng(seed))
    crn = compartmental_crn(g)
    s = check_persistence_structural(g)
    t = check_persistence_theorem1(crn)
    assert s.certified and t.certified
    assert verify_certificates(s, crn) and verify_certificates(t, crn)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 100_000), st.integers(2, 4))
def test_certified_iff_no_edge_between_components(seed, m):
    # an edge leaving a component drains a siphon; isolated parts are harmless
    g = gen.random_graph(m, np.random.default_rng(seed), p=0.4)
    crn = compartmental_crn(g)
    t = check_persistence_theorem1(crn)
    assert verify_certificates(t, crn)
    comps, _ = strong_components(g)
    where = {v: k for k, c in enumerate(comps) for v in c}
    assert t.certified == all(where[i] == where[j] for i, j in g.edges)
