"""Chemical reaction networks with monotone rate functions.

A :class:`Crn` holds species and reactions ``y -> y'`` with one rate function
each. It provides the kinetic right-hand side ``sum_i K_i(x) (y'_i - y_i)``
and exact-rational conservation analysis. :func:`compartmental_crn` builds
the network induced by a compartmental graph: one reaction
``N_i + S_j -> N_j + S_i`` per edge ``(i, j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import exact
from .errors import InvalidReactionError, NegativeStateError
from .graph import CompartmentalGraph
from .rates import MassAction, RateKernel

#: Negative coordinates larger than this in magnitude are rejected.
TOL_STATE = 1e-9


class ReactionRate:
    """Rate of one reaction as a function of the full state vector."""

    kind = "abstract"
    support: tuple[int, ...] = ()

    def __call__(self, x: np.ndarray) -> float:
        raise NotImplementedError

    def gradient(self, x: np.ndarray) -> dict[int, float]:
        """Partial derivatives on the support; zero elsewhere by construction."""
        raise NotImplementedError

    def to_spec(self) -> dict:
        raise NotImplementedError


class EdgeRate(ReactionRate):
    """A two-argument kernel reading the donor particles and recipient space."""

    def __init__(self, kernel: RateKernel, donor: int, space: int):
        self.kernel = kernel
        self.donor = donor
        self.space = space
        self.support = (donor, space)
        self.kind = kernel.kind

    def __call__(self, x):
        return float(self.kernel(x[self.donor], x[self.space]))

    def gradient(self, x):
        du, dv = self.kernel.partials(x[self.donor], x[self.space])
        return {self.donor: float(du), self.space: float(dv)}

    def to_spec(self) -> dict:
        return self.kernel.to_spec()


class MassActionRate(ReactionRate):
    """``k * prod_j x_j ** y_j`` over the reactant complex ``y``."""

    kind = "mass_action"

    def __init__(self, k: float, reactants: Sequence[int]):
        self.k = MassAction(k).k  # reuse parameter validation
        self.exponents = {j: int(e) for j, e in enumerate(reactants) if e}
        self.support = tuple(sorted(self.exponents))

    def __call__(self, x):
        val = self.k
        for j, e in self.exponents.items():
            val *= x[j] ** e
        return float(val)

    def gradient(self, x):
        grad = {}
        for j, e in self.exponents.items():
            val = self.k * e * x[j] ** (e - 1)
            for l, f in self.exponents.items():
                if l != j:
                    val *= x[l] ** f
            grad[j] = float(val)
        return grad

    def to_spec(self) -> dict:
        return {"kind": self.kind, "k": self.k}


@dataclass(frozen=True)
class Reaction:
    reactants: tuple[int, ...]
    products: tuple[int, ...]
    rate: ReactionRate
    name: str = ""


class Crn:
    """Immutable reaction network over ``M`` species."""

    def __init__(self, species: Sequence[str], reactions: Iterable[Reaction]):
        self.species = tuple(species)
        self.reactions = tuple(reactions)
        M = len(self.species)
        for idx, r in enumerate(self.reactions):
            label = r.name or f"reaction {idx + 1}"
            if len(r.reactants) != M or len(r.products) != M:
                raise InvalidReactionError(f"{label}: stoichiometric vectors must have length {M}")
            for coef in (*r.reactants, *r.products):
                if not isinstance(coef, (int, np.integer)) or coef < 0:
                    raise InvalidReactionError(
                        f"{label}: stoichiometric coefficients must be nonnegative integers"
                    )
            if tuple(r.reactants) == tuple(r.products):
                raise InvalidReactionError(f"{label}: reactant and product complexes coincide")
            expected = tuple(j for j, e in enumerate(r.reactants) if e)
            if tuple(sorted(r.rate.support)) != expected:
                raise InvalidReactionError(
                    f"{label}: rate support {r.rate.support} differs from the reactant "
                    f"support {expected}"
                )

    @property
    def n_species(self) -> int:
        return len(self.species)

    @property
    def n_reactions(self) -> int:
        return len(self.reactions)

    @cached_property
    def gamma(self) -> np.ndarray:
        """Integer stoichiometric matrix, species by reactions."""
        g = np.zeros((self.n_species, self.n_reactions), dtype=np.int64)
        for i, r in enumerate(self.reactions):
            g[:, i] = np.subtract(r.products, r.reactants)
        return g

    def species_index(self, name: str) -> int:
        return self.species.index(name)

    def to_json(self) -> dict:
        return {
            "species": list(self.species),
            "reactions": [
                {
                    "name": r.name,
                    "reactants": [int(v) for v in r.reactants],
                    "products": [int(v) for v in r.products],
                    "rate": r.rate.to_spec(),
                }
                for r in self.reactions
            ],
        }


def stoichiometric_matrix(crn: Crn) -> np.ndarray:
    return crn.gamma.copy()


def reaction_rates(crn: Crn, x) -> np.ndarray:
    x = _checked_state(crn, x)
    return np.array([r.rate(x) for r in crn.reactions], dtype=float)


def ode_rhs(crn: Crn, x) -> np.ndarray:
    """Kinetic vector field ``sum_i K_i(x) (y'_i - y_i)``.

    Coordinates in ``[-TOL_STATE, 0)`` are treated as zero; anything more
    negative raises NegativeStateError.
    """
    x = _checked_state(crn, x)
    dx = np.zeros(crn.n_species)
    for r, col in zip(crn.reactions, crn.gamma.T):
        rate = r.rate(x)
        if rate:
            nz = np.nonzero(col)[0]
            dx[nz] += rate * col[nz]
    return dx


def _checked_state(crn: Crn, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (crn.n_species,):
        raise ValueError(f"state has shape {x.shape}, expected ({crn.n_species},)")
    bad = np.nonzero(x < -TOL_STATE)[0]
    if bad.size:
        j = int(bad[0])
        raise NegativeStateError(f"species {crn.species[j]} has negative amount {x[j]!r}")
    return np.clip(x, 0.0, None)


def compartmental_crn(g: CompartmentalGraph) -> Crn:
    """Species ``N1..Nm, S1..Sm`` (indices ``i`` and ``m + i``), one reaction per edge."""
    m = g.m
    species = [f"N{i + 1}" for i in range(m)] + [f"S{i + 1}" for i in range(m)]
    reactions = []
    for (i, j), kernel in zip(g.edges, g.rates):
        y = [0] * (2 * m)
        yp = [0] * (2 * m)
        y[i] = y[m + j] = 1
        yp[j] = yp[m + i] = 1
        reactions.append(
            Reaction(tuple(y), tuple(yp), EdgeRate(kernel, i, m + j), name=f"R{i + 1}{j + 1}"
                     if m < 10 else f"R{i + 1}_{j + 1}")
        )
    return Crn(species, reactions)


def example1_crn(k: Sequence[float] = (1.0, 1.0, 1.0)) -> Crn:
    """The six-species, three-reaction mass-action network on a cycle.

    ``X1+X5 -> X2+X4``, ``X2+X6 -> X3+X5``, ``X3+X4 -> X1+X6``.
    """
    pairs = [((0, 4), (1, 3)), ((1, 5), (2, 4)), ((2, 3), (0, 5))]
    reactions = []
    for idx, ((a, b), (c, d)) in enumerate(pairs):
        y = [0] * 6
        yp = [0] * 6
        y[a] = y[b] = 1
        yp[c] = yp[d] = 1
        reactions.append(Reaction(tuple(y), tuple(yp), MassActionRate(k[idx], y), name=f"R{idx + 1}"))
    return Crn([f"X{i}" for i in range(1, 7)], reactions)


# -- conservation -----------------------------------------------------------

@dataclass(frozen=True)
class ConservedQuantity:
    """Nonnegative, nonzero exact vector ``c`` with ``c^T Gamma = 0``."""

    coefficients: tuple[Fraction, ...]

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.coefficients) if v > 0)

    def residual(self, gamma) -> list[Fraction]:
        return exact.mat_vec_left(self.coefficients, [[int(v) for v in row] for row in gamma])

    def is_valid(self, gamma) -> bool:
        return (
            all(v >= 0 for v in self.coefficients)
            and any(v > 0 for v in self.coefficients)
            and all(r == 0 for r in self.residual(gamma))
        )

    def to_json(self, species: Sequence[str] | None = None) -> dict:
        out = {
            "coefficients": [[v.numerator, v.denominator] for v in self.coefficients],
            "support": sorted(self.support),
        }
        if species is not None:
            out["support_names"] = [species[i] for i in sorted(self.support)]
        return out


def conservation_basis(crn: Crn) -> list[list[Fraction]]:
    """Exact basis of the left null space of the stoichiometric matrix."""
    gamma = crn.gamma.tolist()
    if crn.n_reactions == 0:
        return exact.null_space([], n_cols=crn.n_species)
    return exact.left_null_space(gamma)


def positive_conserved_on_support(
    crn: Crn,
    allowed: Iterable[int],
    strict: bool = False,
) -> ConservedQuantity | None:
    """Find ``c >= 0, c != 0`` supported in ``allowed`` with ``c^T Gamma = 0``.

    Decided by an exact rational LP: maximize ``sum c`` over
    ``0 <= c <= 1`` with ``c`` zero outside ``allowed``. With ``strict=True``
    every allowed coordinate must be positive instead (maximize
    ``min_j c_j``). Returns the optimal vertex scaled to coprime integers, or
    ``None`` when no such vector exists.
    """
    idx = sorted(set(int(i) for i in allowed))
    if not idx:
        raise ValueError("allowed species set must be nonempty")
    for i in idx:
        if not 0 <= i < crn.n_species:
            raise IndexError(f"species index {i} out of range")
    gamma = crn.gamma
    sub = gamma[idx, :]  # allowed species x reactions
    n = len(idx)
    nv = n + 1 if strict else n
    rows: list[list[int]] = []
    rhs: list[int] = []
    for r in range(crn.n_reactions):
        col = [int(v) for v in sub[:, r]]
        if not any(col):
            continue
        pad = [0] if strict else []
        rows.append(col + pad)
        rhs.append(0)
        rows.append([-v for v in col] + pad)
        rhs.append(0)
    for j in range(n):
        row = [0] * nv
        row[j] = 1
        rows.append(row)
        rhs.append(1)
    if strict:
        for j in range(n):
            row = [0] * nv
            row[j] = -1
            row[n] = 1
            rows.append(row)
            rhs.append(0)
        objective = [0] * n + [1]
    else:
        objective = [1] * n
    res = exact.simplex_max(objective, rows, rhs)
    if res.status != "optimal" or res.value <= 0:
        return None
    vec = [Fraction(0)] * crn.n_species
    for j, i in enumerate(idx):
        vec[i] = res.x[j]
    ints = exact.primitive_integer(vec)
    return ConservedQuantity(tuple(Fraction(v) for v in ints))
