"""Compartmental graphs: compartments with capacities joined by directed edges.

Compartments are numbered ``1..m`` at the user boundary (``q_1 .. q_m``) and
``0..m-1`` internally. Every edge ``(i, j)`` carries the rate kernel that
drives particles from compartment ``i`` into compartment ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    DanglingEndpointError,
    DuplicateEdgeError,
    InputError,
    LoopEdgeError,
    NonpositiveCapacityError,
)
from .rates import MassAction, RateKernel


@dataclass(frozen=True)
class CompartmentalGraph:
    """Validated, immutable compartmental graph.

    Use :func:`build_graph` rather than the constructor; it performs the
    validation. ``edges`` is a tuple of 0-based ``(donor, recipient)`` pairs
    aligned with ``rates``.
    """

    labels: tuple[str, ...]
    capacities: tuple[float, ...]
    edges: tuple[tuple[int, int], ...]
    rates: tuple[RateKernel, ...]
    _edge_index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_edge_index", {e: k for k, e in enumerate(self.edges)})

    @property
    def m(self) -> int:
        return len(self.capacities)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        """0-based edge membership test."""
        return (i, j) in self._edge_index

    def rate(self, i: int, j: int) -> RateKernel:
        return self.rates[self._edge_index[(i, j)]]

    def successors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.m)]
        for i, j in self.edges:
            adj[i].append(j)
        return adj

    def total_capacity(self) -> float:
        return float(sum(self.capacities))


@dataclass(frozen=True)
class DonorRecipientIndex:
    donors: tuple[frozenset[int], ...]
    recipients: tuple[frozenset[int], ...]


def build_graph(
    capacities: Sequence[float],
    edges: Iterable[tuple[int, int]],
    rates: Mapping[tuple[int, int], RateKernel] | Sequence[RateKernel] | RateKernel | None = None,
    labels: Sequence[str] | None = None,
) -> CompartmentalGraph:
    """Validate and build a compartmental graph.

    Parameters
    ----------
    capacities : sequence of float
        Positive capacity of each compartment; its length fixes ``m``.
    edges : iterable of (int, int)
        Directed edges as **1-based** ``(from, to)`` pairs.
    rates : optional
        A single kernel shared by every edge, a sequence aligned with
        ``edges``, or a mapping keyed by 1-based edge. Defaults to mass action
        with ``k = 1``.
    labels : optional
        Compartment names; default ``q1 .. qm``.

    Raises
    ------
    LoopEdgeError, DuplicateEdgeError, NonpositiveCapacityError,
    DanglingEndpointError
    """
    caps = tuple(float(c) for c in capacities)
    m = len(caps)
    if m < 1:
        raise InputError("a compartmental graph needs at least one compartment")
    for idx, c in enumerate(caps, start=1):
        if not c > 0 or c == float("inf"):
            raise NonpositiveCapacityError(
                f"compartment {idx} has capacity {c!r}; capacities must be finite and > 0"
            )
    if labels is None:
        labels = [f"q{i}" for i in range(1, m + 1)]
    labels = tuple(str(s) for s in labels)
    if len(labels) != m:
        raise InputError(f"got {len(labels)} labels for {m} compartments")

    edge_list = [(int(a), int(b)) for a, b in edges]
    seen: set[tuple[int, int]] = set()
    for a, b in edge_list:
        for v in (a, b):
            if not 1 <= v <= m:
                raise DanglingEndpointError(
                    f"edge ({a},{b}) refers to compartment {v}, outside 1..{m}"
                )
        if a == b:
            raise LoopEdgeError(f"loop edge ({a},{b}) is not allowed")
        if (a, b) in seen:
            raise DuplicateEdgeError(f"edge ({a},{b}) appears more than once")
        seen.add((a, b))

    if rates is None:
        rates = MassAction(1.0)
    if isinstance(rates, RateKernel):
        kernels = [rates] * len(edge_list)
    elif isinstance(rates, Mapping):
        missing = [e for e in edge_list if e not in rates]
        if missing:
            raise InputError(f"no rate given for edges {missing}")
        kernels = [rates[e] for e in edge_list]
    else:
        kernels = list(rates)
        if len(kernels) != len(edge_list):
            raise InputError(f"got {len(kernels)} rates for {len(edge_list)} edges")
    for e, kern in zip(edge_list, kernels):
        if not isinstance(kern, RateKernel):
            raise InputError(f"rate for edge {e} is not a RateKernel: {kern!r}")

    return CompartmentalGraph(
        labels=labels,
        capacities=caps,
        edges=tuple((a - 1, b - 1) for a, b in edge_list),
        rates=tuple(kernels),
    )


def donors_recipients(g: CompartmentalGraph) -> DonorRecipientIndex:
    donors: list[set[int]] = [set() for _ in range(g.m)]
    recipients: list[set[int]] = [set() for _ in range(g.m)]
    for i, j in g.edges:
        recipients[i].add(j)
        donors[j].add(i)
    return DonorRecipientIndex(
        donors=tuple(frozenset(d) for d in donors),
        recipients=tuple(frozenset(r) for r in recipients),
    )


def tarjan_scc(n: int, adj: Sequence[Sequence[int]]) -> list[list[int]]:
    """Strongly connected components of a digraph on vertices ``0..n-1``.

    Iterative Tarjan; linear in vertices plus edges. Components are returned
    with sorted members, ordered by their smallest member.
    """
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            succ = adj[v]
            if pos < len(succ):
                work[-1] = (v, pos + 1)
                w = succ[pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    comps.sort(key=lambda c: c[0])
    return comps


def strong_components(g: CompartmentalGraph) -> tuple[list[list[int]], bool]:
    """Partition the compartments into strong components.

    Returns ``(components, is_strongly_connected)`` with 0-based members.
    """
    comps = tarjan_scc(g.m, g.successors())
    return comps, len(comps) == 1


def is_strongly_connected(g: CompartmentalGraph) -> bool:
    return strong_components(g)[1]
