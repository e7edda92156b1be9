"""Reduced particle dynamics on the capacity box and numerical verifiers.

With ``s_i = c_i - n_i`` eliminated, the state is the particle vector ``n``
in the box ``C = [0, c_1] x ... x [0, c_m]`` and

    dn_i/dt = sum_{j in donors(i)} K_ji(n_j, c_i - n_i)
            - sum_{j in recipients(i)} K_ij(n_i, c_j - n_j).

The total particle count ``I(n) = sum_i n_i`` is a first integral. The
``verify_*`` functions check the qualitative claims for strongly connected
graphs (unique attracting equilibrium per level set, order preservation,
l1 non-expansion, repelling boundary) on concrete trajectories and return
report objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy.integrate import RK45

from .errors import (
    BoxViolationError,
    ExpansionDetectedError,
    NoConvergenceError,
    NotStronglyConnectedError,
    OrderViolationError,
    StateOutOfBoxError,
    StepSizeUnderflowError,
)
from .graph import CompartmentalGraph, build_graph, strong_components
from .rates import MassAction, RateKernel, Saturating

TOL_STATE = 1e-9
RTOL = 1e-8
ATOL = 1e-10
T_STRICT = 0.1
STRICT_MARGIN = 1e-12


# -- the reduced system ------------------------------------------------------

class _SwappedKernel(RateKernel):
    """``K'(u, v) = K(v, u)``; drives the complementary (free space) system."""

    def __init__(self, inner: RateKernel):
        self.inner = inner
        self.kind = f"swapped_{inner.kind}"

    def __call__(self, u, v):
        return self.inner(v, u)

    def partials(self, u, v):
        dv, du = self.inner.partials(v, u)
        return du, dv

    def to_spec(self):
        return {"kind": self.kind, "inner": self.inner.to_spec()}


class ReducedSystem:
    """Particle dynamics of a compartmental graph on its capacity box.

    Fluxes are evaluated edge-wise in batches: mass action and saturating
    edges are vectorized, any other kernel is called per edge.
    """

    def __init__(self, graph: CompartmentalGraph):
        self.graph = graph
        self.m = graph.m
        self.capacities = np.asarray(graph.capacities, dtype=float)
        self.src = np.array([i for i, _ in graph.edges], dtype=int)
        self.dst = np.array([j for _, j in graph.edges], dtype=int)
        E = graph.n_edges
        # incidence: rhs = flux @ B.T
        self.B = np.zeros((self.m, E))
        self.B[self.src, np.arange(E)] -= 1.0
        self.B[self.dst, np.arange(E)] += 1.0
        self._groups = self._group_edges()

    def _group_edges(self):
        ma, sat, other = [], [], []
        for e, kern in enumerate(self.graph.rates):
            if type(kern) is MassAction:
                ma.append(e)
            elif type(kern) is Saturating:
                sat.append(e)
            else:
                other.append(e)
        rates = self.graph.rates
        groups = []
        if ma:
            groups.append(("ma", np.array(ma), np.array([rates[e].k for e in ma])))
        if sat:
            params = np.array([[rates[e].k, rates[e].a, rates[e].b] for e in sat])
            groups.append(("sat", np.array(sat), params.T))
        for e in other:
            groups.append(("kernel", np.array([e]), rates[e]))
        return groups

    @cached_property
    def is_strongly_connected(self) -> bool:
        return strong_components(self.graph)[1]

    @property
    def total_capacity(self) -> float:
        return float(self.capacities.sum())

    # fluxes on a batch of states, shape (..., m) -> (..., E)
    def _flux_and_partials(self, n: np.ndarray, want_partials: bool):
        u = n[..., self.src]
        v = self.capacities[self.dst] - n[..., self.dst]
        flux = np.zeros_like(u)
        du = np.zeros_like(u) if want_partials else None
        dv = np.zeros_like(u) if want_partials else None
        for tag, idx, params in self._groups:
            uu, vv = u[..., idx], v[..., idx]
            if tag == "ma":
                flux[..., idx] = params * uu * vv
                if want_partials:
                    du[..., idx] = params * vv
                    dv[..., idx] = params * uu
            elif tag == "sat":
                k, a, b = params
                fu, fv = uu / (a + uu), vv / (b + vv)
                flux[..., idx] = k * fu * fv
                if want_partials:
                    du[..., idx] = k * a / (a + uu) ** 2 * fv
                    dv[..., idx] = k * fu * b / (b + vv) ** 2
            else:
                flux[..., idx] = params(uu, vv)
                if want_partials:
                    pu, pv = params.partials(uu, vv)
                    du[..., idx] = pu
                    dv[..., idx] = pv
        return flux, du, dv

    def clip(self, n: np.ndarray) -> np.ndarray:
        return np.clip(n, 0.0, self.capacities)

    def check_in_box(self, n, tol: float = TOL_STATE) -> np.ndarray:
        n = np.asarray(n, dtype=float)
        if n.shape[-1] != self.m:
            raise ValueError(f"state has {n.shape[-1]} coordinates, expected {self.m}")
        if np.any(~np.isfinite(n)):
            raise StateOutOfBoxError("state contains non-finite values")
        low = n < -tol
        high = n > self.capacities + tol
        if np.any(low | high):
            bad = np.argwhere(low | high)[0]
            i = int(bad[-1])
            raise StateOutOfBoxError(
                f"coordinate n{i + 1} = {n[tuple(bad)]!r} outside [0, {self.capacities[i]!r}]"
            )
        return self.clip(n)

    def rhs_unchecked(self, n: np.ndarray) -> np.ndarray:
        """Vector field on (a batch of) states already inside the box."""
        flux, _, _ = self._flux_and_partials(n, False)
        return flux @ self.B.T

    def flux(self, n) -> np.ndarray:
        return self._flux_and_partials(self.check_in_box(n), False)[0]

    def complementary(self) -> "ReducedSystem":
        """The free-space system ``s = c - n``: reversed edges, swapped kernel arguments."""
        g = self.graph
        edges = [(j + 1, i + 1) for i, j in g.edges]
        kernels = [_SwappedKernel(k) for k in g.rates]
        return ReducedSystem(build_graph(g.capacities, edges, kernels, g.labels))


def reduced_rhs(sys: ReducedSystem, n) -> np.ndarray:
    return sys.rhs_unchecked(sys.check_in_box(n))


def jacobian(sys: ReducedSystem, n) -> np.ndarray:
    """Analytic Jacobian of :func:`reduced_rhs` at ``n``.

    Edge ``i -> j`` with flux ``K(n_i, c_j - n_j)`` contributes
    ``-dK/du`` at (i, i), ``+dK/du`` at (j, i), ``+dK/dv`` at (i, j) and
    ``-dK/dv`` at (j, j); columns therefore sum to zero.
    """
    n = sys.check_in_box(n)
    if n.ndim != 1:
        raise ValueError("jacobian expects a single state vector")
    _, du, dv = sys._flux_and_partials(n, True)
    J = np.zeros((sys.m, sys.m))
    src, dst = sys.src, sys.dst
    np.add.at(J, (src, src), -du)
    np.add.at(J, (dst, src), du)
    np.add.at(J, (src, dst), dv)
    np.add.at(J, (dst, dst), -dv)
    return J


def matrix_measure_l1(a: np.ndarray) -> float:
    """Matrix measure induced by the l1 norm: ``max_i a_ii + sum_{j!=i} |a_ji|``."""
    a = np.asarray(a, dtype=float)
    off = np.abs(a).sum(axis=0) - np.abs(np.diag(a))
    return float(np.max(np.diag(a) + off))


# -- integration ----------------------------------------------------------

@dataclass
class Trajectory:
    t: np.ndarray
    states: np.ndarray
    capacities: np.ndarray
    accepted_steps: int
    rejected_steps: int
    nfev: int
    max_drift: float

    @property
    def totals(self) -> np.ndarray:
        return self.states.sum(axis=1)

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def margins(self) -> np.ndarray:
        """Distance of each sample to the box boundary, ``min_i min(n_i, c_i - n_i)``."""
        return np.minimum(self.states, self.capacities - self.states).min(axis=1)

    def to_csv(self) -> str:
        m = self.states.shape[1]
        lines = ["t," + ",".join(f"n{i}" for i in range(1, m + 1)) + ",I"]
        for t, row, tot in zip(self.t, self.states, self.totals):
            lines.append(",".join(repr(float(v)) for v in (t, *row, tot)))
        return "\n".join(lines) + "\n"


def _sample_grid(t_end: float, n_samples: int | None, t_eval) -> np.ndarray:
    if t_eval is not None:
        grid = np.asarray(t_eval, dtype=float)
        if grid.ndim != 1 or np.any(np.diff(grid) <= 0) or grid[0] < 0 or grid[-1] > t_end:
            raise ValueError("t_eval must be strictly increasing within [0, t_end]")
        return grid
    return np.linspace(0.0, t_end, n_samples or 201)


def simulate_ensemble(
    sys: ReducedSystem,
    initial_states,
    t_end: float,
    n_samples: int | None = 201,
    t_eval=None,
    rtol: float = RTOL,
    atol: float = ATOL,
    max_step: float = np.inf,
) -> list[Trajectory]:
    """Integrate several initial states jointly with one adaptive step sequence.

    Sharing the steps keeps comparisons between trajectories free of
    step-selection noise. Raises BoxViolationError when an accepted step
    leaves the box by more than ``TOL_STATE`` (an accuracy failure, not a
    model property) and StepSizeUnderflowError when the solver gives up.
    """
    y0 = sys.check_in_box(np.atleast_2d(np.asarray(initial_states, dtype=float)))
    k, m = y0.shape
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    grid = _sample_grid(t_end, n_samples, t_eval)
    caps = sys.capacities

    def fun(_t, y):
        return sys.rhs_unchecked(np.clip(y.reshape(k, m), 0.0, caps)).ravel()

    solver = RK45(fun, 0.0, y0.ravel(), t_end, rtol=rtol, atol=atol, max_step=max_step)
    nfev0 = solver.nfev
    out = np.empty((grid.size, k, m))
    pos = 0
    while pos < grid.size and grid[pos] <= 0.0:
        out[pos] = y0
        pos += 1
    accepted = 0
    while solver.status == "running":
        msg = solver.step()
        if solver.status == "failed":
            raise StepSizeUnderflowError(f"integration stopped at t={solver.t!r}: {msg}")
        accepted += 1
        y = solver.y.reshape(k, m)
        _check_box(y, caps, solver.t)
        if pos < grid.size and grid[pos] <= solver.t:
            dense = solver.dense_output()
            stop = pos
            while stop < grid.size and grid[stop] <= solver.t:
                stop += 1
            vals = dense(grid[pos:stop]).T.reshape(stop - pos, k, m)
            _check_box(vals, caps, solver.t)
            out[pos:stop] = vals
            pos = stop
    attempts = (solver.nfev - nfev0) // 6  # six evaluations per Dormand-Prince attempt
    rejected = max(0, attempts - accepted)

    trajs = []
    for idx in range(k):
        states = out[:, idx, :]
        drift = float(np.max(np.abs(states.sum(axis=1) - y0[idx].sum())))
        trajs.append(Trajectory(grid.copy(), states, caps.copy(), accepted, rejected,
                                solver.nfev, drift))
    return trajs


def _check_box(y, caps, t):
    if np.any(y < -TOL_STATE) or np.any(y > caps + TOL_STATE):
        worst = float(max(-y.min(), (y - caps).max()))
        raise BoxViolationError(
            f"state left the capacity box by {worst:.3e} at t={t!r}; tighten the tolerances"
        )


def simulate(sys: ReducedSystem, n0, t_end: float, **opts) -> Trajectory:
    """Integrate one initial state; see :func:`simulate_ensemble` for options."""
    n0 = np.asarray(n0, dtype=float)
    if n0.ndim != 1:
        raise ValueError("simulate expects a single initial state")
    return simulate_ensemble(sys, n0[None, :], t_end, **opts)[0]


# -- sampling helpers -------------------------------------------------------

def level_of(n) -> float:
    return float(np.sum(n))


def project_to_level(caps: np.ndarray, u: np.ndarray, s: float) -> np.ndarray:
    """Shift ``u`` by a constant and clip into the box so the total equals ``s``."""
    caps = np.asarray(caps, dtype=float)
    if not 0 <= s <= caps.sum():
        raise ValueError(f"level {s!r} outside [0, {caps.sum()!r}]")
    lo, hi = -u.max() - 1.0, (caps - u).max() + 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if np.clip(u + mid, 0, caps).sum() < s:
            lo = mid
        else:
            hi = mid
    n = np.clip(u + 0.5 * (lo + hi), 0, caps)
    # spread the bisection residual over coordinates with room to move
    resid = s - n.sum()
    room = (caps - n) if resid > 0 else n
    if room.sum() > 0:
        n = n + resid * room / room.sum()
    return np.clip(n, 0, caps)


def sample_level_set(caps, s: float, rng: np.random.Generator, boundary: bool = False) -> np.ndarray:
    """Random point of ``{n in C : sum(n) = s}``, optionally on a face of the box."""
    caps = np.asarray(caps, dtype=float)
    u = rng.uniform(0, caps)
    if not boundary:
        return project_to_level(caps, u, s)
    m = caps.size
    for _ in range(100):
        i = int(rng.integers(m))
        full = bool(rng.integers(2))
        rest = np.delete(caps, i)
        rem = s - (caps[i] if full else 0.0)
        if 0 <= rem <= rest.sum():
            sub = project_to_level(rest, np.delete(u, i), rem)
            return np.insert(sub, i, caps[i] if full else 0.0)
    raise ValueError(f"level {s!r} has no boundary point with a coordinate pinned at 0 or c")


# -- equilibria --------------------------------------------------------------

@dataclass
class EquilibriumResult:
    level: float
    point: np.ndarray
    residual: float
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "point": [float(v) for v in self.point],
            "residual_inf": self.residual,
            "metadata": self.metadata,
        }


def default_tol_eq(sys: ReducedSystem) -> float:
    return 1e-10 * (1.0 + float(sys.capacities.max()))


def _require_connected(sys: ReducedSystem, what: str) -> None:
    if not sys.is_strongly_connected:
        raise NotStronglyConnectedError(
            f"{what} assumes a strongly connected compartmental graph; this graph is not"
        )


def _newton_on_level(sys: ReducedSystem, n: np.ndarray, tol_eq: float, max_iter: int = 50):
    caps = sys.capacities
    f = sys.rhs_unchecked(n)
    res = float(np.abs(f).max())
    for it in range(max_iter):
        if res <= tol_eq:
            return n, res, it
        J = jacobian(sys, n)
        A = np.vstack([J, np.ones(sys.m)])
        b = np.concatenate([-f, [0.0]])
        step = np.linalg.lstsq(A, b, rcond=None)[0]
        lam = 1.0
        while lam > 1e-6:
            trial = n + lam * step
            if np.all(trial > 0) and np.all(trial < caps):
                f_trial = sys.rhs_unchecked(trial)
                r_trial = float(np.abs(f_trial).max())
                if r_trial < res:
                    n, f, res = trial, f_trial, r_trial
                    break
            lam *= 0.5
        else:
            return n, res, it
    return n, res, max_iter


def find_equilibrium(
    sys: ReducedSystem,
    s: float,
    start=None,
    tol_eq: float | None = None,
    t_max: float = 1e5,
    newton_switch: float = 1e-6,
    rtol: float = RTOL,
    atol: float = ATOL,
) -> EquilibriumResult:
    """Equilibrium of the level set ``sum(n) = s``.

    The levels 0 and ``sum(c)`` return the empty and full network exactly.
    Otherwise the system is integrated from ``start`` (default: every
    compartment filled to the same fraction) until the residual drops below
    ``newton_switch``, then Newton steps restricted to ``sum(delta) = 0``
    polish it to ``tol_eq``.
    """
    _require_connected(sys, "find_equilibrium")
    caps = sys.capacities
    total = sys.total_capacity
    tol_eq = default_tol_eq(sys) if tol_eq is None else tol_eq
    if not (-TOL_STATE <= s <= total + TOL_STATE):
        raise StateOutOfBoxError(f"level {s!r} outside [0, {total!r}]")
    if s <= 0.0:
        return EquilibriumResult(0.0, np.zeros(sys.m), 0.0, {"method": "trivial"})
    if s >= total:
        return EquilibriumResult(total, caps.copy(), 0.0, {"method": "trivial"})

    if start is None:
        n = s * caps / total
    else:
        n = sys.check_in_box(start)
        if abs(n.sum() - s) > 1e-9 * (1.0 + total):
            raise ValueError(f"start has level {n.sum()!r}, expected {s!r}")

    t_done, chunk, newton_iters = 0.0, 5.0, 0
    while True:
        res = float(np.abs(sys.rhs_unchecked(n)).max())
        interior = np.all(n > 0) and np.all(n < caps)
        if interior and res <= max(newton_switch, tol_eq):
            n_new, res_new, its = _newton_on_level(sys, n, tol_eq)
            newton_iters += its
            if res_new <= tol_eq:
                n, res = n_new, res_new
                break
            newton_switch *= 0.01  # Newton stalled: integrate closer first
        if t_done >= t_max:
            raise NoConvergenceError(
                f"no equilibrium within t={t_max!r} for level {s!r}",
                {"t_integrated": t_done, "residual": res, "state": n.tolist()},
            )
        n = simulate(sys, n, chunk, n_samples=2, rtol=rtol, atol=atol).final
        t_done += chunk
        chunk = min(2 * chunk, t_max - t_done) or chunk

    if not (np.all(n > 0) and np.all(n < caps)):
        raise NoConvergenceError("equilibrium candidate is not interior", {"state": n.tolist()})
    return EquilibriumResult(
        float(s), n, res,
        {"method": "integrate+newton", "t_integrated": t_done, "newton_iterations": newton_iters,
         "level_error": float(abs(n.sum() - s))},
    )


# -- verifiers ----------------------------------------------------------------

@dataclass
class MonotonicityReport:
    passed: bool
    max_violation: float
    first_violation: tuple[float, int] | None
    strict_checked: bool
    min_strict_gap: float | None
    tol: float

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "max_violation": self.max_violation,
            "first_violation": self.first_violation,
            "strict_checked": self.strict_checked,
            "min_strict_gap": self.min_strict_gap,
            "tol": self.tol,
        }


def verify_monotonicity(
    sys: ReducedSystem,
    a,
    b,
    t_end: float = 50.0,
    n_samples: int = 501,
    tol: float = 1e-9,
    t_strict: float = T_STRICT,
    strict_margin: float = STRICT_MARGIN,
    raise_on_failure: bool = False,
    **opts,
) -> MonotonicityReport:
    """Check that ``a <= b`` stays ordered along both trajectories.

    When ``a < b`` and the graph is strongly connected the order must also
    become strict: every coordinate gap exceeds ``strict_margin`` from
    ``t_strict`` on. The two states need not share a level.
    """
    a = sys.check_in_box(a)
    b = sys.check_in_box(b)
    if np.any(a > b + tol):
        raise ValueError("verify_monotonicity needs a <= b componentwise")
    ta, tb = simulate_ensemble(sys, np.vstack([a, b]), t_end, n_samples=n_samples, **opts)
    gap = tb.states - ta.states
    violation = -gap
    max_violation = float(max(violation.max(), 0.0))
    first = None
    bad = np.argwhere(violation > tol)
    if bad.size:
        k, i = bad[0]
        first = (float(ta.t[k]), int(i))
    strict = bool(np.any(b > a)) and sys.is_strongly_connected
    min_gap = None
    strict_ok = True
    if strict:
        late = ta.t >= t_strict
        min_gap = float(gap[late].min()) if np.any(late) else None
        if min_gap is not None and min_gap <= strict_margin:
            strict_ok = False
            if first is None:
                k, i = np.argwhere(gap[late] <= strict_margin)[0]
                first = (float(ta.t[late][k]), int(i))
    passed = first is None and strict_ok
    report = MonotonicityReport(passed, max_violation, first, strict, min_gap, tol)
    if raise_on_failure and not passed:
        t, i = first
        raise OrderViolationError(f"order lost at t={t!r} in coordinate n{i + 1}")
    return report


@dataclass
class ContractionReport:
    passed: bool
    initial_distance: float
    max_excess: float
    max_increase: float
    max_abs_measure: float
    tol: float
    mu_tol: float

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in
                ("passed", "initial_distance", "max_excess", "max_increase",
                 "max_abs_measure", "tol", "mu_tol")}


def verify_contraction(
    sys: ReducedSystem,
    a,
    b,
    t_end: float = 50.0,
    n_samples: int = 501,
    tol: float = 1e-9,
    mu_tol: float = 1e-9,
    measure_every: int = 10,
    raise_on_failure: bool = False,
    **opts,
) -> ContractionReport:
    """l1 distance of two trajectories never exceeds, nor rises above, its start.

    Also evaluates the l1 matrix measure of the Jacobian at every
    ``measure_every``-th sample of both trajectories; it must vanish.
    """
    a = sys.check_in_box(a)
    b = sys.check_in_box(b)
    ta, tb = simulate_ensemble(sys, np.vstack([a, b]), t_end, n_samples=n_samples, **opts)
    dist = np.abs(ta.states - tb.states).sum(axis=1)
    d0 = float(np.abs(a - b).sum())
    excess = float(dist.max() - d0)
    increase = float(np.max(np.diff(dist))) if dist.size > 1 else 0.0
    mus = [matrix_measure_l1(jacobian(sys, x))
           for traj in (ta, tb) for x in traj.states[::measure_every]]
    max_mu = float(np.max(np.abs(mus)))
    passed = excess <= tol and increase <= tol and max_mu <= mu_tol
    report = ContractionReport(passed, d0, excess, increase, max_mu, tol, mu_tol)
    if raise_on_failure and not passed:
        raise ExpansionDetectedError(
            f"l1 distance grew by {max(excess, increase):.3e} (measure {max_mu:.3e})"
        )
    return report


@dataclass
class BoundaryScanReport:
    passed: bool
    n_points: int
    grid: int
    min_nontrivial_norm: float
    zero_points: list
    trivial_are_equilibria: bool

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "n_points": self.n_points,
            "grid": self.grid,
            "min_nontrivial_norm": self.min_nontrivial_norm,
            "zero_points": self.zero_points,
            "trivial_are_equilibria": self.trivial_are_equilibria,
        }


def boundary_equilibria_scan(
    sys: ReducedSystem,
    grid: int | None = None,
    zero_tol: float = 1e-14,
) -> BoundaryScanReport:
    """Evaluate the vector field on a grid over every face of the box.

    Only the empty and the full network may be equilibria on the boundary.
    The default grid has 11 points per axis up to four compartments and
    fewer beyond, to keep the face count manageable.
    """
    _require_connected(sys, "boundary_equilibria_scan")
    m, caps = sys.m, sys.capacities
    if grid is None:
        grid = 11 if m <= 4 else (7 if m <= 5 else 5)
    axes = [np.linspace(0.0, c, grid) for c in caps]
    n_points = 0
    min_norm = np.inf
    zeros: list = []
    for i in range(m):
        others = [axes[j] for j in range(m) if j != i]
        mesh = np.stack(np.meshgrid(*others, indexing="ij"), axis=-1).reshape(-1, m - 1) \
            if m > 1 else np.zeros((1, 0))
        for val in (0.0, caps[i]):
            pts = np.insert(mesh, i, val, axis=1)
            # avoid double counting points lying on several faces
            if i > 0:
                earlier = np.zeros(len(pts), dtype=bool)
                for j in range(i):
                    earlier |= (pts[:, j] == 0.0) | (pts[:, j] == caps[j])
                pts = pts[~earlier]
            if not len(pts):
                continue
            norms = np.abs(sys.rhs_unchecked(pts)).max(axis=1)
            trivial = np.all(pts == 0.0, axis=1) | np.all(pts == caps, axis=1)
            n_points += len(pts)
            nt = norms[~trivial]
            if nt.size:
                min_norm = min(min_norm, float(nt.min()))
                for p in pts[~trivial][nt <= zero_tol]:
                    zeros.append([float(v) for v in p])
    trivial_ok = (float(np.abs(sys.rhs_unchecked(np.zeros(m))).max()) == 0.0
                  and float(np.abs(sys.rhs_unchecked(caps)).max()) == 0.0)
    return BoundaryScanReport(not zeros and trivial_ok, n_points, grid, float(min_norm), zeros,
                              trivial_ok)


@dataclass
class PersistenceEvidence:
    passed: bool
    floors: list[float]
    empirical_floor: float
    t_end: float
    tail_fraction: float

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "floors": self.floors,
            "empirical_floor": self.empirical_floor,
            "t_end": self.t_end,
            "tail_fraction": self.tail_fraction,
        }


def verify_persistence_numerically(
    sys: ReducedSystem,
    trials: int = 20,
    t_end: float = 100.0,
    tail_fraction: float = 0.2,
    seed: int = 0,
    initial_states=None,
    **opts,
) -> PersistenceEvidence:
    """Smallest boundary distance over the tail of long trajectories.

    Random interior starts (or the given ``initial_states``) are integrated
    to ``t_end``; the reported floor of each run is the minimum over the last
    ``tail_fraction`` of samples of ``min_i min(n_i, c_i - n_i)``. The floor
    is evidence only; there is no theoretical bound to compare it with.
    """
    _require_connected(sys, "verify_persistence_numerically")
    rng = np.random.default_rng(seed)
    if initial_states is None:
        initial_states = rng.uniform(0.0, 1.0, size=(trials, sys.m)) * sys.capacities
    floors = []
    for n0 in np.atleast_2d(initial_states):
        traj = simulate(sys, n0, t_end, n_samples=501, **opts)
        tail = traj.margins()[traj.t >= (1.0 - tail_fraction) * t_end]
        floors.append(float(tail.min()))
    emp = float(min(floors))
    return PersistenceEvidence(emp > 0.0, floors, emp, t_end, tail_fraction)


@dataclass
class BoundaryRepulsionReport:
    passed: bool
    near_coordinates: list[int]
    initial_distance: float
    distances: np.ndarray
    t: np.ndarray

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "near_coordinates": self.near_coordinates,
            "initial_distance": self.initial_distance,
            "final_distance": float(self.distances[-1]),
        }


def verify_boundary_repulsion(
    sys: ReducedSystem,
    n0,
    window: float = 1.0,
    near: float = 1e-5,
    n_samples: int = 101,
    band: float | None = None,
    **opts,
) -> BoundaryRepulsionReport:
    """Coordinates starting next to the boundary must move strictly inward.

    For each coordinate within ``near`` of 0 or its capacity, its distance
    to that boundary must increase strictly between consecutive samples on
    ``[0, window]`` while it is below ``band`` (default: ``1e-3`` times the
    smallest capacity), and stay above its initial value afterwards. Outside
    the band a coordinate may settle or overshoot; the repelling estimate
    only holds close to the boundary.
    """
    _require_connected(sys, "verify_boundary_repulsion")
    n0 = sys.check_in_box(n0)
    caps = sys.capacities
    band = 1e-3 * float(caps.min()) if band is None else band
    lower = np.nonzero(n0 <= near)[0]
    upper = np.nonzero(caps - n0 <= near)[0]
    traj = simulate(sys, n0, window, n_samples=n_samples, **opts)
    cols = [traj.states[:, i] for i in lower] + [caps[i] - traj.states[:, i] for i in upper]
    if not cols:
        raise ValueError("no coordinate of n0 lies within `near` of the boundary")
    dist = np.min(np.vstack(cols), axis=0)
    ok = True
    for d in cols:
        in_band = d[:-1] < band
        if np.any(np.diff(d)[in_band] <= 0) or np.any(d[1:] <= d[0]):
            ok = False
    near_idx = [int(i) for i in lower] + [int(i) for i in upper]
    return BoundaryRepulsionReport(ok, sorted(near_idx), float(dist[0]), dist, traj.t)
