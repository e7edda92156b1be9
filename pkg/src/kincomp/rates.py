"""Two-argument transfer rate kernels ``K(n_donor, s_recipient)``.

A kernel gives the flux along one edge as a function of the particle amount
in the donor and the free space in the recipient. Every kernel must be
differentiable, nondecreasing in both arguments and vanish when either
argument is zero; :func:`validate_kernel` checks this numerically.
Kernels accept scalars or equally shaped numpy arrays.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import InvalidRateError, SchemaError

#: Step used for central differences of user kernels without a gradient.
FD_STEP = 1e-6


class RateKernel:
    kind: str = "abstract"

    def __call__(self, u, v):
        raise NotImplementedError

    def partials(self, u, v):
        """Return ``(dK/du, dK/dv)``."""
        raise NotImplementedError

    def to_spec(self) -> dict:
        raise NotImplementedError


class MassAction(RateKernel):
    """``K(u, v) = k * u * v``."""

    kind = "mass_action"

    def __init__(self, k: float):
        k = float(k)
        if not (k > 0 and np.isfinite(k)):
            raise InvalidRateError(f"mass_action needs finite k > 0, got {k!r}")
        self.k = k

    def __call__(self, u, v):
        return self.k * u * v

    def partials(self, u, v):
        return self.k * v * np.ones_like(u), self.k * u * np.ones_like(v)

    def to_spec(self) -> dict:
        return {"kind": self.kind, "k": self.k}

    def __repr__(self):
        return f"MassAction(k={self.k!r})"

    def __eq__(self, other):
        return isinstance(other, MassAction) and other.k == self.k

    def __hash__(self):
        return hash((self.kind, self.k))


class Saturating(RateKernel):
    """``K(u, v) = k * u/(a+u) * v/(b+v)`` with ``a, b > 0``."""

    kind = "saturating"

    def __init__(self, k: float, a: float, b: float):
        k, a, b = float(k), float(a), float(b)
        for name, val in (("k", k), ("a", a), ("b", b)):
            if not (val > 0 and np.isfinite(val)):
                raise InvalidRateError(f"saturating needs finite {name} > 0, got {val!r}")
        self.k, self.a, self.b = k, a, b

    def __call__(self, u, v):
        return self.k * (u / (self.a + u)) * (v / (self.b + v))

    def partials(self, u, v):
        fu = u / (self.a + u)
        fv = v / (self.b + v)
        dfu = self.a / (self.a + u) ** 2
        dfv = self.b / (self.b + v) ** 2
        return self.k * dfu * fv, self.k * fu * dfv

    def to_spec(self) -> dict:
        return {"kind": self.kind, "k": self.k, "a": self.a, "b": self.b}

    def __repr__(self):
        return f"Saturating(k={self.k!r}, a={self.a!r}, b={self.b!r})"

    def __eq__(self, other):
        return isinstance(other, Saturating) and (other.k, other.a, other.b) == (self.k, self.a, self.b)

    def __hash__(self):
        return hash((self.kind, self.k, self.a, self.b))


class CustomRate(RateKernel):
    """User-supplied kernel, validated on construction.

    ``func(u, v)`` must work elementwise on arrays. ``grad(u, v)`` returning
    ``(dK/du, dK/dv)`` is optional; central differences are used otherwise.
    Custom kernels live in the Python API only and cannot be serialized.
    """

    kind = "custom"

    def __init__(
        self,
        func: Callable,
        grad: Callable | None = None,
        name: str = "custom",
        validate: bool = True,
        scale: float = 1.0,
    ):
        self.func = func
        self.grad = grad
        self.name = name
        if validate:
            validate_kernel(self, scale=scale)

    def __call__(self, u, v):
        return self.func(u, v)

    def partials(self, u, v):
        if self.grad is not None:
            return self.grad(u, v)
        h = FD_STEP
        du = (self.func(u + h, v) - self.func(u - h, v)) / (2 * h)
        dv = (self.func(u, v + h) - self.func(u, v - h)) / (2 * h)
        return du, dv

    def to_spec(self) -> dict:
        raise SchemaError(f"custom rate {self.name!r} has no JSON representation")

    def __repr__(self):
        return f"CustomRate(name={self.name!r})"


def validate_kernel(
    kernel: RateKernel,
    scale: float = 1.0,
    n_samples: int = 200,
    seed: int = 0,
    tol: float = 1e-8,
) -> None:
    """Check a kernel numerically on ``[0, scale]^2``.

    Checks vanishing on both axes, finiteness, nonnegativity and that
    finite-difference slopes are ``>= -tol``. Raises InvalidRateError.
    """
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0.0, scale, size=(n_samples, 2))
    u, v = pts[:, 0], pts[:, 1]
    zeros = np.zeros(n_samples)
    try:
        on_u_axis = np.asarray(kernel(zeros, v), dtype=float)
        on_v_axis = np.asarray(kernel(u, zeros), dtype=float)
        vals = np.asarray(kernel(u, v), dtype=float)
    except Exception as exc:  # user code: report anything as a rate error
        raise InvalidRateError(f"{kernel!r} failed to evaluate: {exc}") from exc
    if not np.all(np.isfinite(vals)):
        raise InvalidRateError(f"{kernel!r} is not finite on the sample box")
    if np.any(on_u_axis != 0) or np.any(on_v_axis != 0):
        raise InvalidRateError(f"{kernel!r} does not vanish when an argument is zero")
    if np.any(vals < 0):
        raise InvalidRateError(f"{kernel!r} takes negative values")
    # interior points, kept away from zero so the stencil stays in the orthant
    h = FD_STEP * max(scale, 1.0)
    ui = np.clip(u, 2 * h, None)
    vi = np.clip(v, 2 * h, None)
    du = (kernel(ui + h, vi) - kernel(ui - h, vi)) / (2 * h)
    dv = (kernel(ui, vi + h) - kernel(ui, vi - h)) / (2 * h)
    if np.any(du < -tol) or np.any(dv < -tol):
        raise InvalidRateError(f"{kernel!r} is decreasing somewhere in an argument")


_SPEC_FIELDS = {
    "mass_action": {"kind", "k"},
    "saturating": {"kind", "k", "a", "b"},
}


def rate_from_spec(spec: dict) -> RateKernel:
    """Build a kernel from its JSON form, e.g. ``{"kind": "mass_action", "k": 2}``."""
    if not isinstance(spec, dict):
        raise SchemaError(f"rate spec must be an object, got {type(spec).__name__}")
    kind = spec.get("kind")
    if kind not in _SPEC_FIELDS:
        raise SchemaError(f"unknown rate kind {kind!r}; expected one of {sorted(_SPEC_FIELDS)}")
    expected = _SPEC_FIELDS[kind]
    extra = set(spec) - expected
    missing = expected - set(spec)
    if extra:
        raise SchemaError(f"unknown field(s) {sorted(extra)} in {kind} rate spec")
    if missing:
        raise SchemaError(f"missing field(s) {sorted(missing)} in {kind} rate spec")
    for name in expected - {"kind"}:
        val = spec[name]
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise SchemaError(f"rate field {name!r} must be a number, got {val!r}")
    if kind == "mass_action":
        return MassAction(spec["k"])
    return Saturating(spec["k"], spec["a"], spec["b"])
