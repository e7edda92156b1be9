"""Brute-force reference implementations used only by the tests.

Each oracle is deliberately naive and shares no code with the path it checks.
"""

from itertools import combinations

import numpy as np
import sympy


def reachability(m, edges):
    """Boolean transitive-reflexive closure by repeated squaring."""
    r = np.eye(m, dtype=bool)
    for i, j in edges:
        r[i, j] = True
    for _ in range(max(1, int(np.ceil(np.log2(max(m, 2)))) + 1)):
        r = r | ((r.astype(int) @ r.astype(int)) > 0)
    return r


def components_by_reachability(m, edges):
    r = reachability(m, edges)
    mutual = r & r.T
    comps = {tuple(np.nonzero(mutual[i])[0]) for i in range(m)}
    return sorted((list(c) for c in comps), key=lambda c: c[0])


def _in_out(gamma_reactants, gamma_products):
    """Per-transition sets of input and output places from stoichiometry."""
    R = len(gamma_reactants)
    ins = [{j for j, v in enumerate(gamma_reactants[t]) if v} for t in range(R)]
    outs = [{j for j, v in enumerate(gamma_products[t]) if v} for t in range(R)]
    return ins, outs


def brute_force_minimal_siphons(crn):
    """Check every nonempty place subset, then keep the inclusion-minimal ones."""
    ins, outs = _in_out([r.reactants for r in crn.reactions], [r.products for r in crn.reactions])
    M = crn.n_species
    siphons = []
    for size in range(1, M + 1):
        for subset in combinations(range(M), size):
            s = set(subset)
            ok = all(not (outs[t] & s) or (ins[t] & s) for t in range(len(ins)))
            if ok:
                siphons.append(frozenset(s))
    return {s for s in siphons if not any(o < s for o in siphons)}


def extreme_conserved_rays(gamma, allowed):
    """Minimal-support nonnegative vectors with ``c^T gamma = 0`` (cone extreme rays).

    A support ``T`` carries an extreme ray iff the kernel restricted to ``T``
    is one-dimensional and spanned by a vector of one strict sign on ``T``.
    """
    gamma = sympy.Matrix(np.asarray(gamma, dtype=int).tolist())
    rays = []
    allowed = sorted(allowed)
    for size in range(1, len(allowed) + 1):
        for T in combinations(allowed, size):
            if any(set(r[0]) < set(T) for r in rays):
                continue
            sub = gamma.extract(list(T), list(range(gamma.shape[1]))) if gamma.shape[1] else \
                sympy.zeros(len(T), 0)
            ker = sub.T.nullspace() if gamma.shape[1] else [sympy.eye(len(T))[:, k] for k in range(len(T))]
            if len(ker) != 1:
                continue
            v = list(ker[0])
            if all(x > 0 for x in v) or all(x < 0 for x in v):
                rays.append((T, [abs(x) for x in v]))
    return rays


def has_nonneg_conserved(gamma, allowed):
    return bool(extreme_conserved_rays(gamma, allowed))


def has_strictly_positive_conserved(gamma, allowed):
    covered = set()
    for T, _ in extreme_conserved_rays(gamma, allowed):
        covered |= set(T)
    return covered == set(allowed)


def left_nullity(gamma):
    g = sympy.Matrix(np.asarray(gamma, dtype=int).tolist())
    return g.shape[0] - g.rank()


def central_difference_jacobian(f, x, h=1e-6):
    x = np.asarray(x, dtype=float)
    J = np.zeros((x.size, x.size))
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = h
        J[:, k] = (f(x + e) - f(x - e)) / (2 * h)
    return J


def all_digraphs(m):
    """Every simple digraph on ``m`` vertices (0-based edge lists)."""
    pairs = [(i, j) for i in range(m) for j in range(m) if i != j]
    for mask in range(1 << len(pairs)):
        yield [p for k, p in enumerate(pairs) if mask >> k & 1]
