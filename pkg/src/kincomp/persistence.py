"""Persistence certificates from siphons and conserved quantities.

A network is certified persistent when (1) some strictly positive linear
quantity is conserved and (2) every minimal siphon contains the support of a
nonnegative conserved quantity. The test is sufficient only: failing it
yields ``inconclusive``, never a claim of non-persistence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .crn import ConservedQuantity, Crn, compartmental_crn, positive_conserved_on_support
from .graph import CompartmentalGraph, strong_components
from .petri import DEFAULT_MAX_PLACES, build_petri, closed_form_siphons, minimal_siphons

PERSISTENT = "persistent_certified"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PersistenceVerdict:
    verdict: str
    method: str  # "structural_corollary" | "theorem1_general"
    global_certificate: ConservedQuantity | None
    per_siphon_certificates: dict[frozenset[int], ConservedQuantity | None] = field(
        default_factory=dict
    )
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.verdict == PERSISTENT

    def to_json(self, species=None) -> dict:
        def cert(c):
            return None if c is None else c.to_json(species)

        siphons = []
        for s in sorted(self.per_siphon_certificates, key=lambda x: tuple(sorted(x))):
            entry = {"siphon": sorted(s), "certificate": cert(self.per_siphon_certificates[s])}
            if species is not None:
                entry["siphon_names"] = [species[i] for i in sorted(s)]
            siphons.append(entry)
        return {
            "verdict": self.verdict,
            "method": self.method,
            "reason": self.reason,
            "global_certificate": cert(self.global_certificate),
            "siphon_certificates": siphons,
        }


def verify_certificates(verdict: PersistenceVerdict, crn: Crn) -> bool:
    """Re-check a verdict's certificates from scratch.

    Exact residual ``c^T Gamma = 0``, sign pattern, strict positivity of the
    global certificate and support containment for each siphon. A verdict
    that is not certified passes trivially.
    """
    if not verdict.certified:
        return True
    gamma = crn.gamma
    g = verdict.global_certificate
    if g is None or not g.is_valid(gamma):
        return False
    if any(v <= 0 for v in g.coefficients):
        return False
    for siphon, c in verdict.per_siphon_certificates.items():
        if c is None or not c.is_valid(gamma) or not c.support <= siphon:
            return False
    return True


def check_persistence_theorem1(crn: Crn, max_places: int = DEFAULT_MAX_PLACES) -> PersistenceVerdict:
    """General test: enumerate minimal siphons and search certificates exactly.

    Checking minimal siphons is enough, since every siphon contains one and
    inherits its certificate.
    """
    method = "theorem1_general"
    glob = positive_conserved_on_support(crn, range(crn.n_species), strict=True)
    siphons = minimal_siphons(build_petri(crn), max_places=max_places)
    certs = {s: positive_conserved_on_support(crn, s) for s in siphons}
    if glob is None:
        return PersistenceVerdict(INCONCLUSIVE, method, None, certs,
                                  reason="no strictly positive conserved quantity")
    missing = [s for s, c in certs.items() if c is None]
    if missing:
        names = [[crn.species[i] for i in sorted(s)] for s in missing]
        return PersistenceVerdict(INCONCLUSIVE, method, glob, certs,
                                  reason=f"siphons without a conserved quantity: {names}")
    return PersistenceVerdict(PERSISTENT, method, glob, certs,
                              reason="all minimal siphons carry a conserved quantity")


def check_persistence_structural(g: CompartmentalGraph) -> PersistenceVerdict:
    """Shortcut for compartmental graphs: strong connectivity certifies persistence.

    Certificates are written down directly (total space plus particles, the
    ``N`` and ``S`` totals, and ``n_i + s_i`` per compartment) and then
    re-verified against the stoichiometric matrix.
    """
    method = "structural_corollary"
    m = g.m
    _, connected = strong_components(g)
    if not connected:
        return PersistenceVerdict(INCONCLUSIVE, method, None,
                                  reason="compartmental graph is not strongly connected")
    crn = compartmental_crn(g)
    one, zero = Fraction(1), Fraction(0)
    glob = ConservedQuantity((one,) * (2 * m))
    certs: dict[frozenset[int], ConservedQuantity] = {}
    for s in closed_form_siphons(g):
        certs[s] = ConservedQuantity(tuple(one if i in s else zero for i in range(2 * m)))
    verdict = PersistenceVerdict(PERSISTENT, method, glob, certs,
                                 reason="compartmental graph is strongly connected")
    if not verify_certificates(verdict, crn):  # pragma: no cover - would be a library bug
        raise AssertionError("structural certificates failed re-verification")
    return verdict
