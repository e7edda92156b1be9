"""Command line front end: ``kincomp {analyze,simulate,equilibrium,verify}``.

Exit codes: 0 success or certified, 1 input error, 2 inconclusive or refused,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import dynamics as dyn
from .crn import compartmental_crn
from .errors import (
    InputError,
    NoConvergenceError,
    NotStronglyConnectedError,
    NumericalError,
    PlaceCapExceededError,
    StateOutOfBoxError,
)
from .graph import strong_components
from .io import dumps, load_graph, siphon_report, verdict_report
from .persistence import check_persistence_structural, check_persistence_theorem1
from .petri import DEFAULT_MAX_PLACES, build_petri, closed_form_siphons, minimal_siphons

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE, EXIT_NUMERICAL = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Path
    out: Path
    seed: int = 0
    t_end: float = 50.0
    trials: int = 10
    tol_eq: float | None = None
    abs_tol: float = dyn.ATOL
    rel_tol: float = dyn.RTOL
    max_places: int = DEFAULT_MAX_PLACES
    n0: tuple[float, ...] | None = None
    level: float | None = None
    samples: int = 201

    def __post_init__(self):
        for name in ("t_end", "abs_tol", "rel_tol"):
            if not getattr(self, name) > 0:
                raise InputError(f"--{name.replace('_', '-')} must be > 0")
        if self.tol_eq is not None and not self.tol_eq > 0:
            raise InputError("--tol-eq must be > 0")
        if self.trials < 1 or self.max_places < 1 or self.samples < 2:
            raise InputError("--trials and --max-places must be >= 1, --samples >= 2")

    @property
    def integrator(self) -> dict:
        return {"rtol": self.rel_tol, "atol": self.abs_tol}


def _write(cfg: RunConfig, name: str, text: str) -> Path:
    cfg.out.mkdir(parents=True, exist_ok=True)
    path = cfg.out / name
    path.write_text(text)
    return path


def cmd_analyze(cfg: RunConfig) -> int:
    g = load_graph(cfg.input)
    crn = compartmental_crn(g)
    net = build_petri(crn)
    _, connected = strong_components(g)
    if connected:
        siphons = closed_form_siphons(g)
        method = "closed_form"
        verdict = check_persistence_structural(g)
    else:
        siphons = minimal_siphons(net, max_places=cfg.max_places)
        method = "enumeration"
        verdict = check_persistence_theorem1(crn, max_places=cfg.max_places)
    _write(cfg, "siphons.json", dumps(siphon_report(net, siphons, method)))
    _write(cfg, "persistence.json", dumps(verdict_report(verdict, crn)))
    print(f"{len(siphons)} minimal siphons ({method}); verdict: {verdict.verdict}")
    return EXIT_OK if verdict.certified else EXIT_INCONCLUSIVE


def _system(cfg: RunConfig) -> dyn.ReducedSystem:
    return dyn.ReducedSystem(load_graph(cfg.input))


def _initial_state(cfg: RunConfig, model: dyn.ReducedSystem) -> np.ndarray:
    if cfg.n0 is None:
        raise InputError("--n0 is required")
    n0 = np.asarray(cfg.n0, dtype=float)
    if n0.shape != (model.m,):
        raise InputError(f"--n0 has {n0.size} values for {model.m} compartments")
    try:
        return model.check_in_box(n0)
    except StateOutOfBoxError as exc:
        raise InputError(f"--n0: {exc}") from None


def cmd_simulate(cfg: RunConfig) -> int:
    model = _system(cfg)
    n0 = _initial_state(cfg, model)
    traj = dyn.simulate(model, n0, cfg.t_end, n_samples=cfg.samples, **cfg.integrator)
    _write(cfg, "trajectory.csv", traj.to_csv())
    print(f"{len(traj.t)} samples to t={cfg.t_end!r}; conservation drift {traj.max_drift:.3e}; "
          f"steps {traj.accepted_steps} accepted, {traj.rejected_steps} rejected")
    return EXIT_OK


def cmd_equilibrium(cfg: RunConfig) -> int:
    model = _system(cfg)
    start = None
    if cfg.n0 is not None:
        start = _initial_state(cfg, model)
        level = float(start.sum()) if cfg.level is None else cfg.level
    else:
        level = 0.5 * model.total_capacity if cfg.level is None else cfg.level
    if not 0 <= level <= model.total_capacity:
        raise InputError(f"--level {level!r} outside [0, {model.total_capacity!r}]")
    res = dyn.find_equilibrium(model, level, start=start, tol_eq=cfg.tol_eq, **cfg.integrator)
    _write(cfg, "equilibrium.json", dumps(res.to_json()))
    print("equilibrium " + ", ".join(f"{v:.10g}" for v in res.point) + f"; residual {res.residual:.3e}")
    return EXIT_OK


def run_verification_suite(model: dyn.ReducedSystem, cfg: RunConfig) -> dict:
    """All numerical checks for a strongly connected system, as one JSON-ready dict."""
    rng = np.random.default_rng(cfg.seed)
    caps = model.capacities
    total = model.total_capacity
    opts = cfg.integrator
    checks: dict[str, dict] = {}

    # equilibrium: random levels, several starts each (some on the boundary)
    n_levels = max(1, min(3, cfg.trials))
    spread = 0.0
    worst_res = 0.0
    for _ in range(n_levels):
        s = float(rng.uniform(0.05, 0.95) * total)
        ref = dyn.find_equilibrium(model, s, tol_eq=cfg.tol_eq, **opts)
        worst_res = max(worst_res, ref.residual)
        for k in range(cfg.trials):
            start = dyn.sample_level_set(caps, s, rng, boundary=(k % 3 == 0))
            other = dyn.find_equilibrium(model, s, start=start, tol_eq=cfg.tol_eq, **opts)
            spread = max(spread, float(np.abs(other.point - ref.point).max()))
    checks["equilibrium_uniqueness"] = {
        "passed": spread <= 1e-7, "max_spread_inf": spread, "max_residual": worst_res,
        "tol": 1e-7, "levels": n_levels, "starts_per_level": cfg.trials,
    }

    # monotonicity: ordered pairs a <= b anywhere in the box
    worst, min_gap, mono_ok = 0.0, np.inf, True
    for _ in range(cfg.trials):
        a = rng.uniform(0, 1, model.m) * caps
        b = a + rng.uniform(0, 1, model.m) * (caps - a)
        rep = dyn.verify_monotonicity(model, a, b, t_end=cfg.t_end, **opts)
        mono_ok &= rep.passed
        worst = max(worst, rep.max_violation)
        if rep.min_strict_gap is not None:
            min_gap = min(min_gap, rep.min_strict_gap)
    checks["monotonicity"] = {"passed": bool(mono_ok), "max_violation": worst,
                              "min_strict_gap": float(min_gap), "tol": 1e-9,
                              "t_strict": dyn.T_STRICT, "pairs": cfg.trials}

    # contraction and matrix measure along the same runs
    excess, mu, con_ok = -np.inf, 0.0, True
    for _ in range(cfg.trials):
        a = rng.uniform(0, 1, model.m) * caps
        b = rng.uniform(0, 1, model.m) * caps
        rep = dyn.verify_contraction(model, a, b, t_end=cfg.t_end, **opts)
        con_ok &= rep.passed
        excess = max(excess, rep.max_excess, rep.max_increase)
        mu = max(mu, rep.max_abs_measure)
    checks["contraction"] = {"passed": bool(con_ok), "max_l1_growth": float(excess),
                             "tol": 1e-9, "pairs": cfg.trials}

    col_sum, sign_ok = 0.0, True
    for _ in range(5 * cfg.trials):
        n = rng.uniform(0.01, 0.99, model.m) * caps
        J = dyn.jacobian(model, n)
        mu = max(mu, abs(dyn.matrix_measure_l1(J)))
        col_sum = max(col_sum, float(np.abs(J.sum(axis=0)).max()))
        off = J - np.diag(np.diag(J))
        sign_ok &= bool(np.all(off >= 0) and np.all(np.diag(J) <= 0))
    checks["matrix_measure"] = {"passed": mu <= 1e-9 and col_sum <= 1e-10 and sign_ok,
                                "max_abs_measure": mu, "max_abs_column_sum": col_sum,
                                "cooperative_sign_pattern": sign_ok, "tol": 1e-9}

    checks["boundary_scan"] = dyn.boundary_equilibria_scan(model).to_json()

    evidence = dyn.verify_persistence_numerically(
        model, trials=cfg.trials, t_end=max(cfg.t_end, 100.0), seed=cfg.seed, **opts)
    checks["persistence_evidence"] = evidence.to_json()

    rep_ok, reps = True, []
    for _ in range(min(cfg.trials, 5)):
        n0 = rng.uniform(0.2, 0.8, model.m) * caps
        i = int(rng.integers(model.m))
        n0[i] = 1e-6 if rng.random() < 0.5 else caps[i] - 1e-6
        rep = dyn.verify_boundary_repulsion(model, n0, **opts)
        rep_ok &= rep.passed
        reps.append(rep.to_json())
    checks["boundary_repulsion"] = {"passed": bool(rep_ok), "runs": reps}

    return {
        "passed": all(c["passed"] for c in checks.values()),
        "seed": cfg.seed,
        "checks": checks,
        "tolerances": {"rtol": cfg.rel_tol, "atol": cfg.abs_tol,
                       "tol_eq": cfg.tol_eq if cfg.tol_eq is not None else dyn.default_tol_eq(model)},
    }


def cmd_verify(cfg: RunConfig) -> int:
    model = _system(cfg)
    if not model.is_strongly_connected:
        raise NotStronglyConnectedError(
            "verify needs a strongly connected compartmental graph; the stability "
            "results do not apply to this input"
        )
    report = run_verification_suite(model, cfg)
    _write(cfg, "verification.json", dumps(report))
    for name, c in report["checks"].items():
        print(f"{'PASS' if c['passed'] else 'FAIL'}  {name}")
    return EXIT_OK if report["passed"] else EXIT_NUMERICAL


COMMANDS = {
    "analyze": cmd_analyze,
    "simulate": cmd_simulate,
    "equilibrium": cmd_equilibrium,
    "verify": cmd_verify,
}


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors, not "refused"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kincomp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, type=Path, help="graph JSON document")
        p.add_argument("--out", type=Path, default=Path("."), help="output directory")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--t-end", type=float, default=50.0)
        p.add_argument("--trials", type=int, default=10)
        p.add_argument("--tol-eq", type=float, default=None)
        p.add_argument("--abs-tol", type=float, default=dyn.ATOL)
        p.add_argument("--rel-tol", type=float, default=dyn.RTOL)
        p.add_argument("--max-places", type=int, default=DEFAULT_MAX_PLACES)
        p.add_argument("--samples", type=int, default=201, help="trajectory samples (simulate)")
        p.add_argument("--n0", type=_floats, default=None, help="initial state, e.g. 0.5,0.3,0.2")
        p.add_argument("--level", type=float, default=None, help="total particle level (equilibrium)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command, input=args.input, out=args.out, seed=args.seed,
            t_end=args.t_end, trials=args.trials, tol_eq=args.tol_eq, abs_tol=args.abs_tol,
            rel_tol=args.rel_tol, max_places=args.max_places, n0=args.n0, level=args.level,
            samples=args.samples,
        )
        return COMMANDS[cfg.command](cfg)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotStronglyConnectedError, PlaceCapExceededError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (NumericalError, NoConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
