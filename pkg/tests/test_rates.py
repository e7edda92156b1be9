import numpy as np
import pytest

from kincomp import CustomRate, MassAction, Saturating, rate_from_spec, validate_kernel
from kincomp.errors import InvalidRateError, SchemaError


@pytest.mark.parametrize("kernel", [MassAction(1.3), Saturating(2.0, 0.3, 0.8)])
def test_builtin_kernels_vanish_and_are_monotone(kernel, rng):
    pts = rng.uniform(1e-3, 3.0, size=(100, 2))
    u, v = pts[:, 0], pts[:, 1]
    assert np.all(kernel(np.zeros(100), v) == 0)
    assert np.all(kernel(u, np.zeros(100)) == 0)
    h = 1e-6
    du = (kernel(u + h, v) - kernel(u - h, v)) / (2 * h)
    dv = (kernel(u, v + h) - kernel(u, v - h)) / (2 * h)
    assert np.all(du >= -1e-8) and np.all(dv >= -1e-8)
    pu, pv = kernel.partials(u, v)
    np.testing.assert_allclose(pu, du, rtol=1e-6, atol=1e-9)
    np.testing.assert_allclose(pv, dv, rtol=1e-6, atol=1e-9)


@pytest.mark.parametrize("spec", [{"kind": "mass_action", "k": 2}, {"kind": "saturating", "k": 1, "a": 0.5, "b": 2}])
def test_spec_round_trip(spec):
    kern = rate_from_spec(spec)
    assert rate_from_spec(kern.to_spec()) == kern
    assert kern.to_spec() == {k: (float(v) if k != "kind" else v) for k, v in spec.items()}


@pytest.mark.parametrize(
    "spec",
    [
        {"kind": "hill", "k": 1},
        {"kind": "mass_action"},
        {"kind": "mass_action", "k": 1, "extra": 2},
        {"kind": "mass_action", "k": "1"},
        {"kind": "mass_action", "k": True},
        [1, 2],
    ],
)
def test_bad_specs_rejected(spec):
    with pytest.raises(SchemaError):
        rate_from_spec(spec)


@pytest.mark.parametrize("spec", [{"kind": "mass_action", "k": 0}, {"kind": "saturating", "k": 1, "a": -1, "b": 1}])
def test_nonpositive_parameters_rejected(spec):
    with pytest.raises(InvalidRateError):
        rate_from_spec(spec)


def test_custom_rate_accepted_and_differentiated_numerically():
    kern = CustomRate(lambda u, v: 0.5 * u**2 * np.sqrt(v + 1e-30) * (v > 0))
    du, dv = kern.partials(np.array([0.5]), np.array([0.25]))
    assert du[0] == pytest.approx(0.5 * 2 * 0.5 * 0.5, rel=1e-6)


@pytest.mark.parametrize(
    "func",
    [
        lambda u, v: u * v + 0.1,            # does not vanish
        lambda u, v: u * (1.0 - v),         # vanishes only on one axis and decreases in v
        lambda u, v: u * v * np.exp(-5 * u),  # not monotone in u
    ],
)
def test_custom_rate_violating_assumptions_refused(func):
    with pytest.raises(InvalidRateError):
        CustomRate(func)


def test_validate_kernel_passes_builtins():
    validate_kernel(MassAction(3.0), scale=5.0)
    validate_kernel(Saturating(1.0, 0.01, 100.0), scale=5.0)
