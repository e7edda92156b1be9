"""Ready-made and random compartmental graphs."""

from __future__ import annotations

import numpy as np

from .graph import CompartmentalGraph, build_graph, strong_components
from .rates import MassAction, RateKernel, Saturating


def triangle(rates: RateKernel | list | None = None, capacities=(1.0, 1.0, 1.0)) -> CompartmentalGraph:
    """Three compartments on the cycle 1 -> 2 -> 3 -> 1."""
    return build_graph(capacities, [(1, 2), (2, 3), (3, 1)], rates)


def cycle(m: int, rates=None, capacities=None) -> CompartmentalGraph:
    caps = [1.0] * m if capacities is None else capacities
    return build_graph(caps, [(i, i % m + 1) for i in range(1, m + 1)], rates)


def path(m: int, rates=None, capacities=None) -> CompartmentalGraph:
    caps = [1.0] * m if capacities is None else capacities
    return build_graph(caps, [(i, i + 1) for i in range(1, m)], rates)


def complete(m: int, rates=None, capacities=None) -> CompartmentalGraph:
    caps = [1.0] * m if capacities is None else capacities
    edges = [(i, j) for i in range(1, m + 1) for j in range(1, m + 1) if i != j]
    return build_graph(caps, edges, rates)


def random_edges(m: int, rng: np.random.Generator, p: float = 0.4) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, m + 1) for j in range(1, m + 1)
            if i != j and rng.random() < p]


def random_rates(n_edges: int, rng: np.random.Generator, kind: str = "mass_action") -> list[RateKernel]:
    """Kernels with coefficients drawn from ``[0.2, 2]``; ``kind="mixed"`` alternates families."""
    out: list[RateKernel] = []
    for e in range(n_edges):
        k = float(rng.uniform(0.2, 2.0))
        use_sat = kind == "saturating" or (kind == "mixed" and rng.random() < 0.5)
        if use_sat:
            out.append(Saturating(k, float(rng.uniform(0.1, 1.0)), float(rng.uniform(0.1, 1.0))))
        else:
            out.append(MassAction(k))
    return out


def random_graph(m: int, rng: np.random.Generator, p: float = 0.4, rate_kind: str = "mass_action",
                 capacities=None) -> CompartmentalGraph:
    edges = random_edges(m, rng, p)
    caps = rng.uniform(0.5, 2.0, size=m) if capacities is None else capacities
    return build_graph(caps, edges, random_rates(len(edges), rng, rate_kind))


def random_strongly_connected(
    m: int,
    rng: np.random.Generator,
    p: float = 0.4,
    rate_kind: str = "mass_action",
    capacities=None,
    max_tries: int = 1000,
) -> CompartmentalGraph:
    """Rejection-sample a strongly connected graph on ``m`` compartments.

    Falls back to a random Hamiltonian cycle plus random chords when
    rejection keeps failing (small ``p``).
    """
    if m < 2:
        raise ValueError("strongly connected graphs with edges need m >= 2")
    caps = rng.uniform(0.5, 2.0, size=m) if capacities is None else capacities
    for _ in range(max_tries):
        edges = random_edges(m, rng, p)
        g = build_graph(caps, edges, random_rates(len(edges), rng, rate_kind))
        if strong_components(g)[1]:
            return g
    order = [int(v) + 1 for v in rng.permutation(m)]
    edges = {(order[i], order[(i + 1) % m]) for i in range(m)}
    edges |= set(random_edges(m, rng, p))
    edges = sorted(edges)
    return build_graph(caps, edges, random_rates(len(edges), rng, rate_kind))
