import math

import numpy as np
import pytest

from catenoid_vortex.errors import CoincidentVortices, DomainError, MaxStepsExceeded, StepFailure
from catenoid_vortex.integrator import IntegratorConfig, Termination, integrate
from catenoid_vortex._tableaus import TABLEAUS


def decay(t, y):
    return -y


def oscillator(t, y):
    return np.array([y[1], -y[0]])


@pytest.mark.parametrize("method", sorted(TABLEAUS))
def test_tableau_consistency(method):
    tab = TABLEAUS[method]
    assert np.allclose(tab.a.sum(axis=1), tab.c, atol=1e-15)
    assert sum(tab.b) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("method", sorted(TABLEAUS))
def test_exponential_decay(method):
    rec = integrate(decay, [1.0], 0.0, 1.0, IntegratorConfig(method=method, sample_interval=0.25))
    assert rec.termination is Termination.COMPLETED
    assert rec.final_state[0] == pytest.approx(math.exp(-1.0), abs=1e-10)
    assert np.allclose(rec.times, [0.0, 0.25, 0.5, 0.75, 1.0], atol=0, rtol=0)
    assert np.allclose(rec.states[:, 0], np.exp(-rec.times), atol=1e-12)


def test_oscillator_energy_over_thousand_periods():
    cfg = IntegratorConfig(sample_interval=2 * math.pi)

    def energy(t, y):
        return {"E": 0.5 * (y[0] ** 2 + y[1] ** 2)}

    rec = integrate(oscillator, [1.0, 0.0], 0.0, 2000 * math.pi, cfg, energy)
    assert rec.max_relative_drift("E") <= 1e-8


TOL_LADDER = [1e-6 / 2**k for k in range(21)]


@pytest.mark.parametrize(
    "method, system",
    [
        ("dopri5", "decay"),
        ("dopri5", "oscillator"),
        ("dop853", "oscillator"),
        pytest.param(
            "dop853",
            "decay",
            marks=pytest.mark.xfail(
                strict=True,
                reason="5 vs 6 steps on [0, 3]: error 1.3180e-9 at tol 5e-7 rises to 1.3230e-9 at 2.5e-7",
            ),
        ),
    ],
)
def test_tolerance_scaling(method, system):
    if system == "decay":
        f, y0, t_end, exact = decay, [1.0], 3.0, np.array([math.exp(-3.0)])
    else:
        f, y0, t_end = oscillator, [1.0, 0.0], 20.0
        exact = np.array([math.cos(t_end), -math.sin(t_end)])
    errors = []
    for tol in TOL_LADDER:
        cfg = IntegratorConfig(rel_tol=tol, abs_tol=tol, sample_interval=t_end, method=method)
        errors.append(np.max(np.abs(integrate(f, y0, 0.0, t_end, cfg).final_state - exact)))
    assert all(later <= earlier for earlier, later in zip(errors, errors[1:]))


def test_samples_strictly_increasing_and_end_exactly():
    rec = integrate(decay, [1.0], 0.0, 1.05, IntegratorConfig(sample_interval=0.1))
    assert np.all(np.diff(rec.times) > 0)
    assert rec.times[-1] == 1.05
    assert len(rec.states) == len(rec.times)


def test_deterministic():
    cfg = IntegratorConfig(sample_interval=0.5)
    a = integrate(oscillator, [1.0, 0.2], 0.0, 20.0, cfg)
    b = integrate(oscillator, [1.0, 0.2], 0.0, 20.0, cfg)
    assert np.array_equal(a.states, b.states) and np.array_equal(a.times, b.times)


@pytest.mark.parametrize(
    "kwargs",
    [{"rel_tol": 1e-16}, {"abs_tol": 0.1}, {"max_step": 0.0}, {"sample_interval": -1.0}, {"max_steps": 0}, {"method": "rk4"}],
)
def test_config_validation(kwargs):
    with pytest.raises(DomainError):
        IntegratorConfig(**kwargs)


def test_bad_span_and_state():
    with pytest.raises(DomainError):
        integrate(decay, [1.0], 1.0, 1.0)
    with pytest.raises(DomainError):
        integrate(decay, [math.nan], 0.0, 1.0)


def test_max_steps_keeps_partial_record():
    with pytest.raises(MaxStepsExceeded) as info:
        integrate(oscillator, [1.0, 0.0], 0.0, 100.0, IntegratorConfig(max_steps=5, sample_interval=0.1))
    rec = info.value.record
    assert rec.termination is Termination.MAX_STEPS
    assert len(rec) >= 1


def test_step_failure_on_blowup():
    with pytest.raises(StepFailure) as info:
        integrate(lambda t, y: y**2, [1.0], 0.0, 2.0, IntegratorConfig(sample_interval=0.5))
    assert info.value.record.termination is Termination.STEP_FAILURE
    assert info.value.record.times[-1] < 1.0


def test_collision_propagates_with_time():
    def system(t, y):
        if t > 0.3:
            raise CoincidentVortices((0, 1), 0.0)
        return -y

    with pytest.raises(CoincidentVortices) as info:
        integrate(system, [1.0], 0.0, 1.0, IntegratorConfig(sample_interval=0.1))
    assert info.value.time is not None and info.value.time <= 0.3 + 1e-12
    assert info.value.record.termination is Termination.COLLISION


def test_relative_drift_falls_back_to_absolute_at_zero():
    rec = integrate(decay, [1.0], 0.0, 1.0, IntegratorConfig(sample_interval=0.5), lambda t, y: {"q": y[0] - 1.0})
    assert rec.max_relative_drift("q") == rec.max_drift("q")
