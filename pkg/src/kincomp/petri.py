"""Petri nets of reaction networks and their siphons.

Places are species and transitions are reactions; edge weights are the
stoichiometric coefficients. A nonempty place set is a siphon when every
transition feeding it also draws from it.

Two routes to the minimal siphons:

* :func:`minimal_siphons` enumerates them for any net (exponential, capped);
* :func:`closed_form_siphons` lists them directly for the net of a strongly
  connected compartmental graph: all ``N``, all ``S``, and each ``{N_i, S_i}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .crn import Crn
from .errors import EmptySetError, NotStronglyConnectedError, PlaceCapExceededError
from .graph import CompartmentalGraph, strong_components, tarjan_scc

DEFAULT_MAX_PLACES = 24


@dataclass(frozen=True)
class PetriNet:
    """Weighted bipartite net.

    ``pre[t]`` maps input places of transition ``t`` to edge weights and
    ``post[t]`` does the same for output places.
    """

    places: tuple[str, ...]
    transitions: tuple[str, ...]
    pre: tuple[dict[int, int], ...]
    post: tuple[dict[int, int], ...]

    @property
    def n_places(self) -> int:
        return len(self.places)

    @property
    def n_transitions(self) -> int:
        return len(self.transitions)

    def input_transitions(self, p: int) -> set[int]:
        """Transitions with an edge into place ``p``."""
        return {t for t, out in enumerate(self.post) if p in out}

    def output_transitions(self, p: int) -> set[int]:
        """Transitions with an edge out of place ``p``."""
        return {t for t, inp in enumerate(self.pre) if p in inp}

    def as_digraph(self) -> list[list[int]]:
        """Adjacency over places ``0..P-1`` followed by transitions ``P..P+T-1``."""
        P = self.n_places
        adj: list[list[int]] = [[] for _ in range(P + self.n_transitions)]
        for t, (inp, out) in enumerate(zip(self.pre, self.post)):
            for p in sorted(inp):
                adj[p].append(P + t)
            adj[P + t].extend(sorted(out))
        return adj


def build_petri(crn: Crn) -> PetriNet:
    pre = []
    post = []
    for r in crn.reactions:
        pre.append({j: int(w) for j, w in enumerate(r.reactants) if w})
        post.append({j: int(w) for j, w in enumerate(r.products) if w})
    names = tuple(r.name or f"t{k + 1}" for k, r in enumerate(crn.reactions))
    return PetriNet(crn.species, names, tuple(pre), tuple(post))


def is_siphon(net: PetriNet, sigma: Iterable[int]) -> bool:
    """True iff every transition producing into ``sigma`` consumes from it."""
    s = set(sigma)
    if not s:
        raise EmptySetError("a siphon must be a nonempty place set")
    for inp, out in zip(net.pre, net.post):
        if not s.isdisjoint(out) and s.isdisjoint(inp):
            return False
    return True


def _sort_key(s: frozenset[int]) -> tuple[int, ...]:
    return tuple(sorted(s))


def minimal_siphons(net: PetriNet, max_places: int = DEFAULT_MAX_PLACES) -> list[frozenset[int]]:
    """All inclusion-minimal siphons, ordered lexicographically by sorted indices.

    Depth-first growth from each single place: while some transition outputs
    into the current set without an input from it, branch on adding one of
    its input places. Any minimal siphon containing the seed is reached this
    way, because it must contain an input of every such transition.
    """
    P = net.n_places
    if P > max_places:
        raise PlaceCapExceededError(P, max_places)

    found: set[frozenset[int]] = set()
    visited: set[frozenset[int]] = set()
    # transitions producing into each place, for quick violation scans
    producers = [sorted(net.input_transitions(p)) for p in range(P)]

    def violating(s: frozenset[int]) -> int | None:
        for p in sorted(s):
            for t in producers[p]:
                if s.isdisjoint(net.pre[t]):
                    return t
        return None

    for seed in range(P):
        stack = [frozenset((seed,))]
        while stack:
            s = stack.pop()
            if s in visited:
                continue
            visited.add(s)
            if any(f <= s for f in found):
                continue
            t = violating(s)
            if t is None:
                found.add(s)
                continue
            for p in sorted(net.pre[t], reverse=True):
                stack.append(s | {p})

    minimal = [s for s in found if not any(o < s for o in found)]
    return sorted(minimal, key=_sort_key)


def closed_form_siphons(g: CompartmentalGraph) -> list[frozenset[int]]:
    """Minimal siphons of the compartmental net, without enumeration.

    Place ``i`` is ``N_{i+1}`` and place ``m + i`` is ``S_{i+1}``, matching
    :func:`~kincomp.crn.compartmental_crn`. With one compartment there are no
    transitions and the minimal siphons are the singletons ``{N1}`` and
    ``{S1}``. Raises NotStronglyConnectedError otherwise.
    """
    m = g.m
    if m == 1:
        return [frozenset({0}), frozenset({1})]
    _, connected = strong_components(g)
    if not connected:
        raise NotStronglyConnectedError(
            "closed-form siphon catalogue needs a strongly connected graph; "
            "use minimal_siphons on the built net instead"
        )
    sets = [frozenset(range(m)), frozenset(range(m, 2 * m))]
    sets += [frozenset({i, m + i}) for i in range(m)]
    return sorted(sets, key=_sort_key)


def petri_strongly_connected(net: PetriNet) -> bool:
    n = net.n_places + net.n_transitions
    if n == 0:
        return False
    return len(tarjan_scc(n, net.as_digraph())) == 1


def siphon_names(net: PetriNet, siphons: Iterable[frozenset[int]]) -> list[list[str]]:
    return [[net.places[p] for p in sorted(s)] for s in siphons]
